import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from reconlab import (
    DegenerateOrder,
    DimensionMismatch,
    NotSymmetric,
    Permutation,
    SymmetricMatrix,
    deck,
    eigen_sorted,
    majors_multiset,
    perm_similarity,
    shifted_det,
)
from reconlab.hypomorphism import cycle_adjacency, matrix_pair, path_adjacency

from conftest import symmetric_matrices


def det_cofactor(a: np.ndarray) -> float:
    """Independent determinant oracle by first-row cofactor expansion."""
    n = a.shape[0]
    if n == 1:
        return float(a[0, 0])
    total = 0.0
    for j in range(n):
        minor = np.delete(a[1:], j, axis=1)
        total += ((-1.0) ** j) * a[0, j] * det_cofactor(minor)
    return total


class TestSymmetricMatrix:
    def test_rejects_asymmetric(self):
        with pytest.raises(NotSymmetric):
            SymmetricMatrix(np.array([[0.0, 1.0], [0.5, 0.0]]))

    def test_accepts_subtolerance_noise(self):
        a = np.array([[1.0, 0.5], [0.5 + 1e-14, 1.0]])
        assert SymmetricMatrix(a).n == 2

    def test_rejects_nonsquare(self):
        with pytest.raises(DimensionMismatch):
            SymmetricMatrix(np.zeros((2, 3)))

    def test_entries_write_protected(self):
        m = SymmetricMatrix.identity(3)
        with pytest.raises(ValueError):
            m.entries[0, 0] = 5.0


class TestDeck:
    def test_identity(self):
        for card in deck(SymmetricMatrix.identity(3)):
            np.testing.assert_array_equal(card.entries, np.eye(2))

    def test_all_ones(self):
        for card in deck(SymmetricMatrix.all_ones(3)):
            np.testing.assert_array_equal(card.entries, np.ones((2, 2)))

    def test_path(self):
        cards = deck(path_adjacency(3))
        np.testing.assert_array_equal(cards[1].entries, np.zeros((2, 2)))
        np.testing.assert_array_equal(cards[0].entries, [[0, 1], [1, 0]])
        np.testing.assert_array_equal(cards[2].entries, [[0, 1], [1, 0]])

    def test_too_small(self):
        with pytest.raises(DegenerateOrder):
            deck(SymmetricMatrix(np.array([[3.0]])))


class TestShiftedDet:
    def test_identity(self):
        assert shifted_det(SymmetricMatrix.identity(3), 0.0, 0.0) == pytest.approx(1.0)

    def test_rank_one_spectrum(self):
        # t*J on the zero matrix has eigenvalues {3t, 0, 0}
        assert shifted_det(SymmetricMatrix.zeros(3), 1.0, 1.0) == pytest.approx(2.0)

    def test_against_cofactor_oracle(self, rng):
        for _ in range(10):
            w = rng.standard_normal((4, 4))
            a = SymmetricMatrix(0.5 * (w + w.T))
            lam, t = rng.uniform(-2, 2, size=2)
            expected = det_cofactor(a.entries - lam * np.eye(4) + t * np.ones((4, 4)))
            got = shifted_det(a, lam, t)
            assert got == pytest.approx(expected, rel=1e-10, abs=1e-12)

    @settings(max_examples=30, deadline=None)
    @given(symmetric_matrices(max_n=8), st.floats(-3, 3, allow_nan=False))
    def test_char_poly_product(self, A, lam):
        values = eigen_sorted(A).values
        expected = float(np.prod(values - lam))
        scale = max(1.0, abs(expected))
        assert abs(shifted_det(A, lam, 0.0) - expected) <= 1e-8 * scale


class TestEigenSorted:
    def test_identity(self):
        np.testing.assert_allclose(eigen_sorted(SymmetricMatrix.identity(3)).values, 1.0)

    def test_all_ones(self):
        data = eigen_sorted(SymmetricMatrix.all_ones(3))
        np.testing.assert_allclose(data.values, [3.0, 0.0, 0.0], atol=1e-12)
        top = data.vectors[:, 0]
        np.testing.assert_allclose(top, np.ones(3) / np.sqrt(3), atol=1e-12)

    def test_cycle_against_root_oracle(self):
        # eigenvalues of the n-cycle adjacency are 2*cos(2*pi*k/n)
        data = eigen_sorted(cycle_adjacency(5))
        oracle = sorted((2.0 * np.cos(2.0 * np.pi * k / 5.0) for k in range(5)), reverse=True)
        np.testing.assert_allclose(data.values, oracle, atol=1e-12)

    def test_descending_and_orthonormal(self, rng):
        w = rng.standard_normal((6, 6))
        data = eigen_sorted(SymmetricMatrix(w @ w.T))
        assert all(a >= b for a, b in zip(data.values, data.values[1:]))
        np.testing.assert_allclose(data.vectors.T @ data.vectors, np.eye(6), atol=1e-9)

    def test_residual(self, rng):
        w = rng.standard_normal((5, 5))
        a = SymmetricMatrix(0.5 * (w + w.T))
        data = eigen_sorted(a)
        for i in range(5):
            resid = a.entries @ data.vectors[:, i] - data.values[i] * data.vectors[:, i]
            assert np.max(np.abs(resid)) < 1e-12 * max(1.0, np.max(np.abs(data.values)))

    def test_sign_convention(self):
        data = eigen_sorted(SymmetricMatrix(np.diag([2.0, 1.0])))
        for j in range(2):
            lead = np.argmax(np.abs(data.vectors[:, j]))
            assert data.vectors[lead, j] > 0

    def test_idempotent_bits(self, rng):
        w = rng.standard_normal((5, 5))
        a = SymmetricMatrix(0.5 * (w + w.T))
        d1, d2 = eigen_sorted(a), eigen_sorted(a)
        assert d1.values.tobytes() == d2.values.tobytes()
        assert d1.vectors.tobytes() == d2.vectors.tobytes()


class TestPermSimilarity:
    def test_identity(self, rng):
        w = rng.standard_normal((4, 4))
        a = SymmetricMatrix(0.5 * (w + w.T))
        b = perm_similarity(a, Permutation.identity(4))
        np.testing.assert_array_equal(a.entries, b.entries)

    def test_path_swap_by_hand(self):
        b = perm_similarity(path_adjacency(3), Permutation.swap(3, 0, 1))
        np.testing.assert_array_equal(b.entries, [[0, 1, 1], [1, 0, 0], [1, 0, 0]])

    def test_degree_mismatch(self):
        with pytest.raises(DimensionMismatch):
            perm_similarity(SymmetricMatrix.identity(3), Permutation.identity(4))

    def test_involution_exact(self, rng):
        w = rng.standard_normal((5, 5))
        a = SymmetricMatrix(0.5 * (w + w.T))
        tau = Permutation(tuple(rng.permutation(5)))
        back = perm_similarity(perm_similarity(a, tau), tau.inverse())
        assert np.array_equal(back.entries, a.entries)

    @settings(max_examples=25, deadline=None)
    @given(symmetric_matrices(), st.randoms(use_true_random=False))
    def test_spectrum_invariant(self, A, rnd):
        img = list(range(A.n))
        rnd.shuffle(img)
        tau = Permutation(tuple(img))
        np.testing.assert_allclose(eigen_sorted(perm_similarity(A, tau)).values,
                                   eigen_sorted(A).values, atol=1e-9)

    @settings(max_examples=25, deadline=None)
    @given(symmetric_matrices(min_n=3), st.randoms(use_true_random=False))
    def test_deck_commutes_with_relabeling(self, A, rnd):
        img = list(range(A.n))
        rnd.shuffle(img)
        tau = Permutation(tuple(img))
        deck_a = deck(A)
        deck_b = deck(perm_similarity(A, tau))
        for i in range(A.n):
            np.testing.assert_allclose(
                eigen_sorted(deck_b[tau(i)]).values,
                eigen_sorted(deck_a[i]).values, atol=1e-9)


class TestMajors:
    def test_identity(self):
        assert majors_multiset(SymmetricMatrix.identity(3)) == pytest.approx([1.0, 1.0, 1.0])

    def test_all_ones(self):
        assert majors_multiset(SymmetricMatrix.all_ones(3)) == pytest.approx([0.0, 0.0, 0.0])

    def test_hypomorphic_pair_agrees(self):
        A, B, sigma = matrix_pair(cycle_adjacency(5), Permutation.rotation(5))
        assert sigma is not None
        np.testing.assert_allclose(majors_multiset(A), majors_multiset(B), atol=1e-10)

    @settings(max_examples=25, deadline=None)
    @given(symmetric_matrices(), st.randoms(use_true_random=False))
    def test_invariant_under_relabeling(self, A, rnd):
        img = list(range(A.n))
        rnd.shuffle(img)
        tau = Permutation(tuple(img))
        np.testing.assert_allclose(majors_multiset(perm_similarity(A, tau)),
                                   majors_multiset(A), atol=1e-10)

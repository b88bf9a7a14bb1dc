"""Deck-matching certificates between symmetric matrices.

Two n x n symmetric matrices are deck-equivalent when for every index i the
i-th vertex-deleted submatrices agree up to a permutation sigma_i. This module
verifies a given family of permutations, searches for one index by index
(the indices impose no joint constraint, so the search factors), and generates
test pairs from relabeled graphs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DimensionMismatch, SearchTooLarge
from .graph6 import Graph6Record
from .matrixcore import Permutation, SymmetricMatrix, as_matrix, deck, perm_similarity

EXACT_TOL = 1e-12
SEARCH_CAP = 9
_SPECTRUM_PRUNE_TOL = 1e-9


@dataclass(frozen=True)
class Hypomorphism:
    """One degree-(n-1) permutation per deleted index."""

    sigmas: tuple

    def __post_init__(self):
        sigmas = tuple(self.sigmas)
        n = len(sigmas)
        if n < 3:
            raise DimensionMismatch("need at least 3 permutations")
        for s in sigmas:
            if s.degree != n - 1:
                raise DimensionMismatch(f"sigma degree {s.degree} != {n - 1}")
        object.__setattr__(self, "sigmas", sigmas)

    @property
    def n(self) -> int:
        return len(self.sigmas)

    @classmethod
    def identity(cls, n: int) -> "Hypomorphism":
        return cls(tuple(Permutation.identity(n - 1) for _ in range(n)))


@dataclass(frozen=True)
class HypomorphyCertificate:
    valid: bool
    worst_residual: float
    failing_index: Optional[int]
    tol: float


def verify_hypomorphism(A: SymmetricMatrix, B: SymmetricMatrix, sigma: Hypomorphism,
                        tol: float = EXACT_TOL) -> HypomorphyCertificate:
    """Check B_i == sigma_i A_i sigma_i^T entrywise for every deleted index i."""
    A, B = as_matrix(A), as_matrix(B)
    if A.n != B.n or A.n != sigma.n:
        raise DimensionMismatch(f"orders differ: A={A.n}, B={B.n}, sigma={sigma.n}")
    if A.n < 3:
        raise DimensionMismatch("deck matching requires order >= 3")
    deck_a, deck_b = deck(A), deck(B)
    worst = 0.0
    failing = None
    for i in range(A.n):
        mapped = perm_similarity(deck_a[i], sigma.sigmas[i])
        resid = float(np.max(np.abs(deck_b[i].entries - mapped.entries)))
        worst = max(worst, resid)
        if resid > tol and failing is None:
            failing = i
    return HypomorphyCertificate(valid=failing is None, worst_residual=worst,
                                 failing_index=failing, tol=tol)


def _match_submatrix(a: np.ndarray, b: np.ndarray, atol: float) -> Optional[Permutation]:
    """First permutation (in backtracking order) with b[s(k), s(l)] = a[k, l], else None."""
    m = a.shape[0]
    if m == 0:
        return Permutation(())
    # cheap global prunes: sorted row sums, then sorted spectra
    if np.max(np.abs(np.sort(a.sum(axis=1)) - np.sort(b.sum(axis=1)))) > max(atol, 1e-9):
        return None
    scale = max(1.0, float(np.max(np.abs(a))), float(np.max(np.abs(b))))
    ev_a, ev_b = np.linalg.eigvalsh(a), np.linalg.eigvalsh(b)
    if np.max(np.abs(ev_a - ev_b)) > _SPECTRUM_PRUNE_TOL * scale:
        return None

    rows_a = np.sort(a, axis=1)
    rows_b = np.sort(b, axis=1)
    image = [-1] * m
    used = [False] * m

    def extend(k: int) -> bool:
        if k == m:
            return True
        for cand in range(m):
            if used[cand]:
                continue
            if abs(b[cand, cand] - a[k, k]) > atol:
                continue
            if np.max(np.abs(rows_b[cand] - rows_a[k])) > atol:
                continue
            ok = True
            for l in range(k):
                if abs(b[cand, image[l]] - a[k, l]) > atol:
                    ok = False
                    break
            if not ok:
                continue
            image[k] = cand
            used[cand] = True
            if extend(k + 1):
                return True
            image[k] = -1
            used[cand] = False
        return False

    return Permutation(tuple(image)) if extend(0) else None


def find_hypomorphism(A: SymmetricMatrix, B: SymmetricMatrix,
                      search_cap: int = SEARCH_CAP) -> Optional[Hypomorphism]:
    """Search each sigma_i independently by pruned backtracking.

    Deterministic: returns the lexicographically first sigma_i at every index.
    Returns None as soon as some index admits no match.
    """
    A, B = as_matrix(A), as_matrix(B)
    if A.n != B.n:
        raise DimensionMismatch(f"orders differ: {A.n} vs {B.n}")
    if A.n < 3:
        raise DimensionMismatch("deck matching requires order >= 3")
    if A.n > search_cap:
        raise SearchTooLarge(f"order {A.n} exceeds search cap {search_cap}")
    deck_a, deck_b = deck(A), deck(B)
    sigmas = []
    for i in range(A.n):
        match = _match_submatrix(deck_a[i].entries, deck_b[i].entries, EXACT_TOL)
        if match is None:
            return None
        sigmas.append(match)
    return Hypomorphism(tuple(sigmas))


def gen_pair(graph: Graph6Record, tau: Permutation):
    """Relabel a graph's adjacency matrix and search for the deck certificate.

    Returns (A, B, sigma_or_None) with B = perm_similarity(A, tau). The pair
    counts as a certified one only when the search succeeds.
    """
    if tau.degree != graph.n:
        raise DimensionMismatch(f"tau degree {tau.degree} != vertex count {graph.n}")
    A = SymmetricMatrix(graph.adjacency.astype(float))
    B = perm_similarity(A, tau)
    return A, B, find_hypomorphism(A, B)


def matrix_pair(A: SymmetricMatrix, tau: Permutation):
    """gen_pair for an already-assembled symmetric matrix."""
    A = as_matrix(A)
    B = perm_similarity(A, tau)
    return A, B, find_hypomorphism(A, B)


# ---------------------------------------------------------------------------
# small-graph constructors used to build test corpora

def cycle_adjacency(n: int) -> SymmetricMatrix:
    a = np.zeros((n, n))
    for i in range(n):
        a[i, (i + 1) % n] = a[(i + 1) % n, i] = 1.0
    return SymmetricMatrix(a)


def path_adjacency(n: int) -> SymmetricMatrix:
    a = np.zeros((n, n))
    for i in range(n - 1):
        a[i, i + 1] = a[i + 1, i] = 1.0
    return SymmetricMatrix(a)


def complete_adjacency(n: int) -> SymmetricMatrix:
    return SymmetricMatrix(np.ones((n, n)) - np.eye(n))


def complete_bipartite_adjacency(p: int, q: int) -> SymmetricMatrix:
    n = p + q
    a = np.zeros((n, n))
    a[:p, p:] = 1.0
    a[p:, :p] = 1.0
    return SymmetricMatrix(a)


def _cycle_relabeling(n: int, kind: str) -> Permutation:
    if kind == "rotation":
        return Permutation.rotation(n)
    if kind == "reflection":
        return Permutation.reflection(n)
    if kind == "shuffle":
        # a transposition outside the dihedral group: rotations and reflections
        # are cycle automorphisms, so only relabelings like this one give B != A
        return Permutation.swap(n, 1, 3)
    raise ValueError(f"unknown relabeling kind {kind!r}")


def cycle_pair_corpus(ns=(5, 6, 7, 8), kinds=("rotation", "reflection", "shuffle")) -> list:
    """Certified relabeled-cycle pairs; the workhorse corpus for the verifiers.

    Cycles are vertex transitive, so every deck element is the same path and
    the per-index search always succeeds. Dihedral relabelings reproduce the
    same matrix (automorphisms); the shuffle kind supplies pairs with B != A.
    """
    corpus = []
    for n in ns:
        for kind in kinds:
            tau = _cycle_relabeling(n, kind)
            A, B, sigma = matrix_pair(cycle_adjacency(n), tau)
            if sigma is None:
                raise RuntimeError(f"relabeled C{n} ({kind}) unexpectedly has no certificate")
            if kind == "shuffle" and np.array_equal(A.entries, B.entries):
                raise RuntimeError(f"shuffle relabeling of C{n} degenerated to B == A")
            corpus.append({"name": f"C{n}-{kind}", "A": A, "B": B, "sigma": sigma})
    return corpus

import json

import numpy as np
import pytest

from reconlab import Cone, ParseError, Permutation, SymmetricMatrix
from reconlab.hypomorphism import cycle_adjacency, matrix_pair
from reconlab.presentation import Presentation
from reconlab.serialize import (
    cone_from_dict,
    cone_to_dict,
    content_hash,
    dumps,
    matrix_from_dict,
    matrix_to_dict,
    pair_from_dict,
    pair_to_dict,
    presentation_from_dict,
    presentation_to_dict,
    report_to_csv,
)


def test_floats_round_trip_exactly():
    values = [1.0 / 3.0, 1e-300, 123456.789012345678, -0.1, 2.0 ** 53 + 1.0]
    text = dumps(values)
    assert json.loads(text) == values


def test_seventeen_significant_digits():
    assert dumps(1.0 / 3.0) == "0.33333333333333331"


def test_matrix_round_trip():
    a = SymmetricMatrix(np.array([[1.0, 1.0 / 3.0], [1.0 / 3.0, 2.0]]))
    d = json.loads(dumps(matrix_to_dict(a)))
    b = matrix_from_dict(d)
    assert np.array_equal(a.entries, b.entries)


def test_matrix_shape_mismatch_rejected():
    with pytest.raises(ParseError):
        matrix_from_dict({"n": 3, "entries": [[1.0, 0.0], [0.0, 1.0]]})


def test_pair_round_trip():
    A, B, sigma = matrix_pair(cycle_adjacency(5), Permutation.swap(5, 1, 3))
    d = json.loads(dumps(pair_to_dict(A, B, sigma)))
    A2, B2, sigma2 = pair_from_dict(d)
    assert np.array_equal(A.entries, A2.entries)
    assert np.array_equal(B.entries, B2.entries)
    assert all(s1.image == s2.image for s1, s2 in zip(sigma.sigmas, sigma2.sigmas))


def test_pair_null_sigma():
    A = cycle_adjacency(5)
    d = json.loads(dumps(pair_to_dict(A, A, None)))
    _, _, sigma = pair_from_dict(d)
    assert sigma is None


def test_presentation_round_trip():
    U = Presentation(np.arange(9, dtype=float).reshape(3, 3))
    d = json.loads(dumps(presentation_to_dict(U)))
    assert np.array_equal(presentation_from_dict(d).columns, U.columns)


def test_cone_round_trip():
    c = Cone(apex=np.zeros(3), generators=np.eye(3)[:2], ambient_dim=3)
    d = json.loads(dumps(cone_to_dict(c)))
    c2 = cone_from_dict(d)
    assert c2.ambient_dim == 3 and np.array_equal(c2.generators, c.generators)


def test_content_hash_stable():
    payload = {"a": [1.0, 2.0], "b": "x"}
    assert content_hash(payload) == content_hash({"a": [1.0, 2.0], "b": "x"})
    assert content_hash(payload) != content_hash({"a": [1.0, 2.1], "b": "x"})


def test_grid_csv():
    data = {"lambda_grid": [0.0, 1.0], "t_grid": [2.0], "residuals": [[0.0], [1e-12]]}
    text = report_to_csv("grid", data)
    lines = text.strip().splitlines()
    assert lines[0] == "lambda,t,abs_residual"
    assert len(lines) == 3


def test_unknown_csv_kind():
    with pytest.raises(ValueError):
        report_to_csv("nope", {})

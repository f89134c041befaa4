import json
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from gradres.exactla import Field
from gradres.fixtures import (a2, a3_zero_relation, d2, d3, quantum_plane, random_graded_module,
                              truncated_polynomial, twisting_algebra)
from gradres.jsonio import (
    InputError,
    algebra_from_json,
    algebra_to_json,
    dumps,
    field_from_json,
    gamma_from_json,
    gamma_to_json,
    module_from_json,
    module_to_json,
    resolution_to_json,
    scalar_to_json,
    vectors_from_json,
)
from gradres.algebra import same_algebra
from gradres.modules import same_module
from gradres.resolution import minimal_resolution, verify

ALGEBRAS = {"D2": d2, "D3": d3, "A2": a2, "A3": a3_zero_relation}


def reload(obj):
    return json.loads(dumps(obj))


def test_fields():
    assert field_from_json("Q").p is None
    assert field_from_json("F7").p == 7
    assert field_from_json({"p": 3}).p == 3
    with pytest.raises(InputError):
        field_from_json("banana")


def test_rational_scalars_are_strings():
    assert scalar_to_json(Field(None), Fraction(3, 7)) == "3/7"
    assert scalar_to_json(Field(5), 3) == 3


@pytest.mark.parametrize("name", sorted(ALGEBRAS))
def test_algebra_round_trip(name):
    a = ALGEBRAS[name]()
    b = algebra_from_json(reload(algebra_to_json(a)))
    assert same_algebra(a, b) and b.degrees == a.degrees and b.labels == a.labels


def test_smash_round_trip():
    p = quantum_plane(2, 5).product
    q = algebra_from_json(reload(algebra_to_json(p)))
    assert same_algebra(p, q)


def test_gamma_round_trip():
    g = twisting_algebra(5, 3)
    h = gamma_from_json(reload(gamma_to_json(g)))
    assert all(np.array_equal(x, y) for x, y in zip(g.generators, h.generators))


@given(st.sampled_from(sorted(ALGEBRAS)), st.integers(0, 10**6))
def test_module_round_trip_gives_identical_reports(name, seed):
    a = ALGEBRAS[name]()
    m = random_graded_module(a, np.random.default_rng(seed), 4)
    m2 = module_from_json(reload(module_to_json(m)), a)
    assert same_module(m, m2)
    r1, r2 = minimal_resolution(m, 3, graded=True), minimal_resolution(m2, 3, graded=True)
    assert dumps(resolution_to_json(r1, verify(r1))) == dumps(resolution_to_json(r2, verify(r2)))


def test_rational_algebra_round_trip():
    a = truncated_polynomial(2, None)
    data = reload(algebra_to_json(a))
    assert data["field"] == "Q" and all(isinstance(e[3], str) for e in data["mul"])
    assert same_algebra(a, algebra_from_json(data))


def test_module_errors():
    a = d2()
    with pytest.raises(InputError):
        module_from_json({"dim": 1, "action": [[[1]]]}, a)  # one matrix for a 2-dim algebra
    with pytest.raises(InputError):
        module_from_json([], a)


def test_vectors():
    a = a2()
    f = a.field
    v = vectors_from_json(["a", {"e1": 1, "e2": 1}, [0, 1, 0]], a.labels, f, a.dim)
    assert [list(x) for x in v] == [[0, 0, 1], [1, 1, 0], [0, 1, 0]]
    with pytest.raises(InputError):
        vectors_from_json(["b"], a.labels, f, a.dim)


def test_algebra_errors():
    with pytest.raises(InputError):
        algebra_from_json({"field": 2, "basis": ["1"]})

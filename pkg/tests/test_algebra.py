import numpy as np
import pytest
from hypothesis import given, strategies as st

from gradres.algebra import (
    AlgebraError,
    CapabilityError,
    QuiverPresentation,
    _corner_radical,
    _trace_form_radical,
    build_algebra,
    check_algebra,
    is_two_sided_ideal,
    make_gamma_algebra,
    nilpotency_index,
    opposite,
    path_algebra,
    permute_algebra,
    quotient_by_ideal,
    radical,
    same_algebra,
)
from gradres.exactla import Field
from gradres.fixtures import a2, a3_zero_relation, d2, d3, ground, truncated_polynomial
from gradres.monoid import GradedMonoid


def span_equal(f, u, v):
    return u.shape[1] == v.shape[1] == f.rank(np.concatenate([u, v], axis=1))


def test_path_algebra_dimensions():
    assert a2().dim == 3
    assert d2().dim == 2 and d3().dim == 3
    assert a3_zero_relation().dim == 5
    assert a2().labels == ("e1", "e2", "a")


def test_path_convention():
    # a: 1 -> 2, so a = e2 a = a e1 while e1 a = 0
    a = a2()
    e1, e2, x = (a.basis_vector(i) for i in range(3))
    f = a.field
    assert f.equal(a.mul(x, e1), x)
    assert f.equal(a.mul(e2, x), x)
    assert f.is_zero(a.mul(e1, x))


def test_radical_of_fixtures():
    a = a2()
    rad = radical(a)
    assert rad.shape[1] == 1 and span_equal(a.field, rad, a.basis_vector(2).reshape(-1, 1))
    assert radical(d3()).shape[1] == 2
    assert radical(ground()).shape[1] == 0


@pytest.mark.parametrize("make", [lambda: truncated_polynomial(3, 5), lambda: a2(5), lambda: a3_zero_relation(7)])
def test_radical_strategies_agree(make):
    """Arrow ideal, trace form and idempotent corners are independent routes."""
    a = make()
    f = a.field
    hint = f.span(a.radical_hint)
    trace = _trace_form_radical(a)
    corner = _corner_radical(a)
    assert span_equal(f, hint, trace)
    assert span_equal(f, hint, corner)


def test_radical_is_nilpotent_ideal():
    for a in (a2(), d3(), a3_zero_relation()):
        rad = radical(a)
        assert is_two_sided_ideal(a, rad)
        assert nilpotency_index(a, rad) is not None


def test_radical_without_hint_small_char():
    a = d3()
    bare = build_algebra(a.field, a.labels, a.unit, a.mult, None, None)
    with pytest.raises(CapabilityError):
        radical(bare)


def test_build_algebra_rejects_non_associative():
    f = Field(2)
    mult = f.zeros(2, 2, 2)
    mult[0, 0, 0] = mult[0, 1, 1] = mult[1, 0, 1] = 1
    mult[1, 1, 0] = 1  # y*y = 1 is fine (k[C2]); break it below
    build_algebra(f, ["1", "y"], [1, 0], mult)
    bad = mult.copy()
    bad[1, 0, 1] = 0
    with pytest.raises(AlgebraError):
        build_algebra(f, ["1", "y"], [1, 0], bad)


def test_grading_violation_detected():
    a = d2()
    with pytest.raises(AlgebraError):
        build_algebra(a.field, a.labels, a.unit, a.mult, (GradedMonoid.natural(), [1, 1]))  # unit of degree 1


def test_quotients():
    a = a2()
    q, proj, ideal = quotient_by_ideal(a, [a.basis_vector(1)])
    assert q.dim == 1 and ideal.dim == 2
    q0, _, i0 = quotient_by_ideal(a, [])
    assert q0.dim == 3 and i0.dim == 0
    qd, _, _ = quotient_by_ideal(d2(), [d2().basis_vector(1)])
    assert qd.dim == 1


def test_opposite_twice():
    for a in (a2(), d3(), a3_zero_relation()):
        assert same_algebra(opposite(opposite(a)), a)


@given(st.randoms(use_true_random=False))
def test_permuted_algebra_is_valid(rnd):
    a = a3_zero_relation()
    perm = list(range(a.dim))
    rnd.shuffle(perm)
    b = permute_algebra(a, perm)
    check_algebra(b)
    assert radical(b).shape[1] == radical(a).shape[1]


def test_non_homogeneous_relation_rejected():
    q = QuiverPresentation.make(["1"], [("1", "1", "x")], [(((("x", "x")), 1), ((("x",)), 1))])
    with pytest.raises(AlgebraError):
        path_algebra(q, Field(2))


def test_gamma_algebra_validation():
    b = truncated_polynomial(2, 5, "y")
    f = b.field
    ok = f.array([[1, 0], [0, 2]])
    make_gamma_algebra(b, GradedMonoid.natural(), ok)
    with pytest.raises(AlgebraError):
        make_gamma_algebra(b, GradedMonoid.natural(), f.array([[2, 0], [0, 1]]))  # not unital

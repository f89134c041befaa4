import numpy as np
import pytest
from hypothesis import given, strategies as st
from fractions import Fraction
from sympy import GF, QQ
from sympy.polys.matrices import DomainMatrix

from gradres.exactla import Field, QuotientSpace, _rank_f2_packed, block_diag

PRIMES = [2, 3, 5, 7]


def sympy_rank(f: Field, m: np.ndarray) -> int:
    """Independent oracle: sympy's domain matrices over GF(p) or QQ."""
    if m.size == 0:
        return 0
    dom = QQ if f.p is None else GF(f.p)
    rows = [[dom(int(x)) if f.p is not None else dom(Fraction(x).numerator, Fraction(x).denominator)
             for x in row] for row in m]
    return DomainMatrix(rows, m.shape, dom).rank()


@st.composite
def matrices(draw, max_side=7):
    p = draw(st.sampled_from(PRIMES + [None]))
    f = Field(p)
    r = draw(st.integers(0, max_side))
    c = draw(st.integers(0, max_side))
    hi = (p - 1) if p else 3
    lo = 0 if p else -3
    vals = draw(st.lists(st.integers(lo, hi), min_size=r * c, max_size=r * c))
    return f, f.array(np.array(vals, dtype=np.int64).reshape(r, c))


def test_field_construction():
    assert Field(5).p == 5
    assert Field(None).p is None
    with pytest.raises(ValueError):
        Field(6)


def test_inverse_and_scalars():
    f = Field(7)
    for x in range(1, 7):
        assert (x * f.inv(x)) % 7 == 1
    q = Field(None)
    assert q.inv(Fraction(3, 7)) == Fraction(7, 3)


@given(matrices())
def test_rank_matches_sympy(fm):
    f, m = fm
    assert f.rank(m) == sympy_rank(f, m)


@given(matrices())
def test_rref_is_reduced_and_idempotent(fm):
    f, m = fm
    red, piv, r = f.rref(m)
    assert r == len(piv)
    for i, c in enumerate(piv):
        col = red[:, c]
        assert col[i] == 1 and sum(1 for x in col if x != 0) == 1
    assert f.equal(f.rref(red)[0], red)


@given(matrices())
def test_nullspace(fm):
    f, m = fm
    ns = f.nullspace(m)
    assert ns.shape[1] == m.shape[1] - f.rank(m)
    assert f.is_zero(f.matmul(m, ns))
    if ns.shape[1]:
        assert f.rank(ns) == ns.shape[1]


@given(matrices(), st.integers(0, 2**31))
def test_solve_consistent_systems(fm, seed):
    f, m = fm
    rng = np.random.default_rng(seed)
    x = f.random(rng, (m.shape[1],))
    b = f.matmul(m, x)
    sol = f.solve(m, b)
    assert sol is not None and f.equal(f.matmul(m, sol), b)


def test_solve_inconsistent():
    f = Field(3)
    m = f.array([[1, 0], [0, 0]])
    assert f.solve(m, f.array([0, 1])) is None


@given(st.integers(0, 2**31), st.integers(1, 120), st.integers(1, 120))
def test_packed_f2_rank(seed, r, c):
    f = Field(2)
    rng = np.random.default_rng(seed)
    m = f.random(rng, (r, c))
    # a low-rank product to exercise dependent rows
    if r > 2 and c > 2:
        k = int(rng.integers(1, min(r, c)))
        m = f.matmul(f.random(rng, (r, k)), f.random(rng, (k, c)))
    assert _rank_f2_packed(m) == f.rref(m)[2]


def test_float_matmul_path_is_exact():
    f = Field(7)
    rng = np.random.default_rng(3)
    a = f.random(rng, (80, 90))
    b = f.random(rng, (90, 70))
    ref = (a.astype(object) @ b.astype(object)) % 7
    assert np.array_equal(f.matmul(a, b), ref.astype(np.int64))


def test_quotient_space_section_projection():
    f = Field(5)
    sub = f.array([[1, 2, 0, 0], [0, 0, 1, 1]]).T
    q = QuotientSpace(f, 4, sub)
    assert q.dim == 2
    assert f.equal(f.matmul(q.projection, q.section), f.eye(2))
    assert f.is_zero(f.matmul(q.projection, sub))


def test_block_diag():
    f = Field(3)
    out = block_diag(f, [f.eye(2), f.array([[2]])])
    assert out.shape == (3, 3) and out[2, 2] == 2 and out[0, 2] == 0

import numpy as np
import pytest
from hypothesis import given, strategies as st

from gradres.algebra import build_algebra
from gradres.fixtures import a2, a3_zero_relation, d2, d3, random_graded_module, truncated_polynomial
from gradres.modules import forget, regular_module, simples
from gradres.monoid import GradedMonoid
from gradres.resolution import (
    compare,
    cover,
    forgetful_resolution_check,
    minimal_resolution,
    splice_nonminimal,
    support_bound_witness,
    verify,
)

ALGEBRAS = {"D2": d2, "D3": d3, "A2": a2, "A3": a3_zero_relation}


def rand_module(name, seed, max_dim=4):
    return random_graded_module(ALGEBRAS[name](), np.random.default_rng(seed), max_dim)


def test_trivial_module_over_dual_numbers():
    res = minimal_resolution(simples(d2())[0], 4, graded=False)
    assert res.dims == (2, 2, 2, 2, 2)
    assert not res.complete
    assert verify(res).ok


def test_periodic_graded_shifts():
    # the k-th syzygy of k over k[x]/(x^n) sits in degree ceil: 0, 1, n, n+1, 2n, ...
    res = minimal_resolution(simples(d3())[0], 4, graded=True)
    shifts = [[b for _, b in s] for s in res.summands]
    assert shifts == [[0], [1], [3], [4], [6]]


def test_simple_over_a2():
    res = minimal_resolution(simples(a2())[0], 4)
    assert res.dims == (2, 1, 0, 0, 0)
    assert res.complete and verify(res).ok


def test_projective_resolves_in_one_step():
    m = regular_module(a3_zero_relation())
    res = minimal_resolution(m, 4)
    assert res.dims == (5, 0, 0, 0, 0) and res.complete


def test_truncated_polynomial_gldim_infinite_dims():
    # dims of the minimal resolution of k over k[x]/(x^3) are constant 3
    res = minimal_resolution(simples(d3())[0], 3, graded=False)
    assert res.dims == (3, 3, 3, 3)


def test_cover_of_top():
    c = cover(regular_module(a2()))
    assert c.module.dim == 3 and len(c.summands) == 2


def test_nonminimal_detected():
    res = minimal_resolution(simples(d2())[0], 3, graded=False)
    bad = splice_nonminimal(res)
    rep = verify(bad)
    assert rep.exact and rep.projective_terms and not rep.minimal
    assert "superfluous" in rep.witness


def test_broken_complex_detected():
    res = minimal_resolution(simples(d2())[0], 2, graded=False)
    res.differentials[1] = res.differentials[1].copy()
    res.differentials[1][:] = 0
    assert not verify(res).exact


def test_compare():
    r1 = minimal_resolution(simples(a2())[0], 3)
    r2 = minimal_resolution(simples(a2())[0], 3)
    assert compare(r1, r2)
    assert not compare(r1, minimal_resolution(simples(a2())[1], 3))


@given(st.sampled_from(sorted(ALGEBRAS)), st.integers(0, 10**6))
def test_random_resolutions_verify(name, seed):
    m = rand_module(name, seed)
    res = minimal_resolution(m, 3, graded=True)
    assert verify(res).ok
    assert verify(res.forget()).ok


@given(st.sampled_from(sorted(ALGEBRAS)), st.integers(0, 10**6))
def test_euler_characteristic_of_complete_resolutions(name, seed):
    m = forget(rand_module(name, seed))
    res = minimal_resolution(m, 5)
    if res.complete:
        assert sum((-1) ** k * d for k, d in enumerate(res.dims)) == m.dim


@given(st.sampled_from(sorted(ALGEBRAS)), st.integers(0, 10**6))
def test_forgetful_functor_property(name, seed):
    m = rand_module(name, seed)
    rep = forgetful_resolution_check(m, 3)
    assert rep.holds
    assert rep.graded_dims == rep.ungraded_dims


@given(st.sampled_from(sorted(ALGEBRAS)), st.integers(0, 10**6))
def test_minimal_dims_bounded_by_any_resolution(name, seed):
    """Minimal terms never exceed the spliced (non-minimal) ones."""
    m = forget(rand_module(name, seed))
    res = minimal_resolution(m, 3)
    bad = splice_nonminimal(res)
    assert all(x <= y for x, y in zip(res.dims, bad.dims))


def test_forgetful_report_text():
    rep = forgetful_resolution_check(simples(a2())[0], 4)
    assert rep.summary() == "graded dims = ungraded dims = (2,1,0,0,0)"


def test_forgetful_declines_without_order():
    a = truncated_polynomial(2, 2)
    g = GradedMonoid.natural_power(1, "none")
    b = build_algebra(a.field, a.labels, a.unit, a.mult, (g, [(0,), (1,)]), a.idempotents,
                      radical_hint=a.radical_hint)
    m = simples(b)[0]
    rep = forgetful_resolution_check(m, 2)
    assert rep.holds is None and rep.hypotheses["identity_least"] is False


def test_ungraded_input_declines():
    rep = forgetful_resolution_check(forget(simples(a2())[0]), 2)
    assert rep.holds is None


@pytest.mark.parametrize("kmax", [0, 1, 4])
def test_dims_length(kmax):
    res = minimal_resolution(simples(a2())[0], kmax)
    assert len(res.dims) == kmax + 1


@given(st.sampled_from(sorted(ALGEBRAS)), st.integers(0, 10**6))
def test_support_bounds(name, seed):
    """Finite supports: the per-step bound is certified by the report; the global
    bound |supp M| * |supp A| also holds on these fixtures."""
    m = rand_module(name, seed)
    a = m.algebra
    res = minimal_resolution(m, 4, graded=True)
    assert support_bound_witness(res, a.support()) is None
    bound = len(m.support()) * len(a.support())
    assert all(len(p.support()) <= bound for p in res.terms)

import numpy as np
import pytest
from hypothesis import given, strategies as st

from gradres.exactla import Field
from gradres.fixtures import a2, a3_zero_relation, d2, d3, random_graded_module, truncated_polynomial
from gradres.modules import (
    ModuleError,
    ModuleMap,
    all_submodules,
    build_module,
    count_subspaces,
    direct_sum,
    direct_sum_submodule,
    forget,
    hom_space,
    image,
    indecomposable_projective,
    is_projective,
    is_superfluous,
    is_superfluous_bruteforce,
    kernel,
    quotient,
    radical_submodule,
    regular_module,
    shift,
    simples,
    submodule,
    submodule_sum,
    whole,
    zero_submodule,
)

ALGEBRAS = {"D2": d2, "D3": d3, "A2": a2, "A3": a3_zero_relation}


def rand_module(name, seed, max_dim=4):
    return random_graded_module(ALGEBRAS[name](), np.random.default_rng(seed), max_dim)


def test_radical_of_projective_a2():
    a = a2()
    f = a.field
    p1, emb = indecomposable_projective(a, 0)
    assert p1.dim == 2
    rad = radical_submodule(p1)
    # rad P(1) is spanned by the arrow: its image in A is span{a}
    img = f.matmul(emb, rad.basis)
    assert rad.dim == 1 and f.equal(img[:, 0], a.basis_vector(2))


def test_simples_and_projectivity():
    a = a2()
    s1, s2 = simples(a)
    assert s1.dim == s2.dim == 1
    assert is_projective(s2) and not is_projective(s1)
    assert not is_projective(simples(d2())[0])
    assert is_projective(regular_module(d3()))


def test_submodule_counts():
    # k[x]/(x^2) over F2 is uniserial: 0 < (x) < A
    assert len(all_submodules(regular_module(d2()))) == 3
    assert len(all_submodules(regular_module(d3()))) == 4
    assert count_subspaces(2, 2) == 5
    assert count_subspaces(3, 3) == 1 + 13 + 13 + 1


def test_superfluous_examples():
    m = regular_module(d2())
    assert is_superfluous(radical_submodule(m), m)
    assert not is_superfluous(whole(m), m)
    assert is_superfluous(zero_submodule(m), m)


@given(st.sampled_from(sorted(ALGEBRAS)), st.integers(0, 10**6))
def test_superfluous_predicates_agree(name, seed):
    m = forget(rand_module(name, seed))
    for n in all_submodules(m):
        assert is_superfluous(n, m) == is_superfluous_bruteforce(n, m)


@given(st.sampled_from(["A2", "D3"]), st.integers(0, 10**6))
def test_graded_superfluous_predicates_agree(name, seed):
    m = rand_module(name, seed)
    for n in all_submodules(m, graded=True):
        assert is_superfluous(n, m) == is_superfluous_bruteforce(n, m, graded=True)


def test_superfluous_over_larger_field():
    a = truncated_polynomial(2, 3)
    m = regular_module(a)
    for n in all_submodules(m):
        assert is_superfluous(n, m) == is_superfluous_bruteforce(n, m)


def test_superfluous_over_rationals():
    a = truncated_polynomial(2, None)
    assert a.field == Field(None)
    m = regular_module(a)
    assert is_superfluous(radical_submodule(m), m)


@given(st.sampled_from(sorted(ALGEBRAS)), st.integers(0, 10**6))
def test_hom_from_projective_is_corner(name, seed):
    """Hom(A e_i, M) has dimension dim e_i M."""
    m = forget(rand_module(name, seed))
    a = m.algebra
    f = a.field
    for i, e in enumerate(a.idempotent_list()):
        p, _ = indecomposable_projective(a, i)
        assert len(hom_space(forget(p), m)) == f.rank(m.act(e))


@given(st.sampled_from(sorted(ALGEBRAS)), st.integers(0, 10**6))
def test_hom_space_elements_are_maps(name, seed):
    m = forget(rand_module(name, seed))
    for h in hom_space(m, m):
        assert ModuleMap(m, m, h).is_homomorphism()


@given(st.sampled_from(sorted(ALGEBRAS)), st.integers(0, 10**6))
def test_rank_nullity_and_quotient(name, seed):
    m = rand_module(name, seed)
    rad = radical_submodule(m)
    q, pi = quotient(m, rad)
    assert q.dim == m.dim - rad.dim
    assert kernel(pi).equals(rad)
    assert pi.is_homomorphism() and pi.is_graded()


@given(st.sampled_from(sorted(ALGEBRAS)), st.integers(0, 10**6))
def test_submodule_closure(name, seed):
    m = forget(rand_module(name, seed))
    rng = np.random.default_rng(seed)
    f = m.field
    v = f.random(rng, (m.dim,))
    n = submodule(m, [v])
    for i in range(m.algebra.dim):
        assert n.contains(submodule(m, [f.matmul(m.action[i], v)]))


def test_direct_sum_and_sum():
    m = regular_module(d2())
    total = direct_sum([m, m])
    rad = radical_submodule(m)
    pair = direct_sum_submodule([rad, rad], total)
    assert pair.dim == 2 and is_superfluous(pair, total)
    s = submodule_sum(rad, zero_submodule(m))
    assert s.equals(rad)
    ident = ModuleMap(m, m, m.field.eye(m.dim))
    assert image(ident, rad).equals(rad)


def test_shift_degrees():
    m = simples(a2())[0]
    s = shift(m, 2)
    assert s.degrees == (2,)
    assert s.graded_dims() == {2: 1}


def test_build_module_rejects_bad_action():
    a = d2()
    f = a.field
    act = f.zeros(2, 2, 2)
    act[0] = f.eye(2)
    act[1] = f.eye(2)  # x acting invertibly violates x^2 = 0
    with pytest.raises(ModuleError):
        build_module(a, act)


def test_support_of_shift():
    reg = regular_module(a2())
    assert reg.support() == {0, 1}
    assert shift(reg, 1).support() == {1, 2}

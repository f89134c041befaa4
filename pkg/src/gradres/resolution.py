"""Projective covers and minimal projective resolutions, graded and ungraded."""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Dict, List, Optional, Tuple

import numpy as np

from .algebra import CapabilityError, GradedAlgebra
from .exactla import block_diag
from .modules import (
    Module,
    ModuleError,
    ModuleMap,
    Submodule,
    forget,
    indecomposable_projective,
    is_module_map,
    kernel,
    radical_submodule,
    shift,
    simples,
    top,
    zero_module,
)
from .monoid import validate


# -- projective covers ---------------------------------------------------------

def _projectives(a: GradedAlgebra):
    cached = a.__dict__.get("_indec_projectives")
    if cached is None:
        cached = [indecomposable_projective(a, i) for i in range(len(a.idempotent_list()))]
        a.__dict__["_indec_projectives"] = cached
    return cached


def _simple_multiplicity_dims(a: GradedAlgebra) -> List[int]:
    """``dim e_i S_i`` (1 for basic split algebras)."""
    cached = a.__dict__.get("_simple_dims")
    if cached is None:
        f = a.field
        cached = []
        for i, s in enumerate(simples(a)):
            cached.append(f.rank(s.act(a.idempotent_list()[i])))
        a.__dict__["_simple_dims"] = cached
    return cached


def free_module(a: GradedAlgebra, summands, graded: bool) -> Tuple[Module, List[int]]:
    """``P = sum_k (A e_{i_k})[beta_k]``; returns the module and block offsets."""
    f = a.field
    projs = _projectives(a)
    if not summands:
        return zero_module(a, graded), [0]
    blocks = []
    offsets = [0]
    for i, beta in summands:
        p = projs[i][0]
        blocks.append(shift(p, beta) if graded else forget(p))
        offsets.append(offsets[-1] + p.dim)
    action = np.array([block_diag(f, [b.action[t] for b in blocks]) for t in range(a.dim)],
                      dtype=f.dtype).reshape(a.dim, offsets[-1], offsets[-1])
    action.setflags(write=False)
    degrees = tuple(d for b in blocks for d in b.degrees) if graded else None
    return Module(a, action, degrees, "P"), offsets


@dataclass(frozen=True, eq=False)
class Cover:
    module: Module  # the projective P
    map: ModuleMap  # P -> M
    summands: Tuple[Tuple[int, object], ...]  # (idempotent index, shift degree)
    generators: np.ndarray  # columns: images of the summand generators e_{i_k}


def top_generators(m: Module, graded: bool) -> Tuple[List[Tuple[int, object]], np.ndarray]:
    """Greedy homogeneous lift of a basis of ``top(m)`` of the form ``e_i m_j``.

    Candidates are ordered by degree (smallest first) and then by basis index,
    so the outcome only depends on the basis order.
    """
    a = m.algebra
    f = m.field
    idems = a.idempotent_list()
    rad = radical_submodule(m)
    span = rad.basis
    rank = span.shape[1]
    summands, gens = [], []
    order = list(range(m.dim))
    if graded:
        order.sort(key=lambda j: (a.monoid.sort_key(m.degrees[j]), j))
    for j in order:
        if rank == m.dim:
            break
        for i, e in enumerate(idems):
            v = f.matmul(m.act(e), f.eye(m.dim)[:, j:j + 1])
            if f.is_zero(v):
                continue
            trial = np.concatenate([span, v], axis=1)
            r = f.rank(trial)
            if r > rank:
                span, rank = trial, r
                summands.append((i, m.degrees[j] if graded else None))
                gens.append(v)
    if rank != m.dim:
        raise CapabilityError("idempotents do not generate the top of the module")
    g = np.concatenate(gens, axis=1) if gens else f.zeros(m.dim, 0)
    return summands, g


def projective_cover(m: Module, graded: bool = False) -> Tuple[Module, ModuleMap]:
    c = cover(m, graded)
    return c.module, c.map


def cover(m: Module, graded: bool = False) -> Cover:
    if graded and not m.is_graded:
        raise ModuleError("graded cover of an ungraded module")
    a = m.algebra
    f = m.field
    summands, gens = top_generators(m, graded)
    p, offsets = free_module(a, summands, graded)
    projs = _projectives(a)
    cols = []
    for k, (i, _) in enumerate(summands):
        emb = projs[i][1]
        g = gens[:, k:k + 1]
        for c in range(emb.shape[1]):
            cols.append(f.matmul(m.act(emb[:, c]), g))
    mat = np.concatenate(cols, axis=1) if cols else f.zeros(m.dim, 0)
    return Cover(p, ModuleMap(p, m, mat), tuple(summands), gens)


# -- resolutions ---------------------------------------------------------------

@dataclass(eq=False)
class Resolution:
    """``... -> P_1 -> P_0 -> M``; ``differentials[0]`` is the augmentation ``P_0 -> M``
    and ``differentials[k]`` maps ``P_k -> P_{k-1}``."""

    base: Module
    terms: List[Module]
    differentials: List[np.ndarray]
    graded: bool
    complete: bool
    summands: List[Tuple[Tuple[int, object], ...]] = dc_field(default_factory=list)
    kernel_supports: List[set] = dc_field(default_factory=list)
    kind: str = "minimal"

    @property
    def kmax(self) -> int:
        return len(self.terms) - 1

    @property
    def dims(self) -> Tuple[int, ...]:
        return tuple(p.dim for p in self.terms)

    def graded_dims(self) -> List[Dict]:
        if not self.graded:
            raise ModuleError("resolution is not graded")
        return [p.graded_dims() for p in self.terms]

    def forget(self) -> "Resolution":
        return Resolution(forget(self.base), [forget(p) for p in self.terms], list(self.differentials),
                          False, self.complete, [tuple((i, None) for i, _ in s) for s in self.summands],
                          kind=self.kind)

    def differential_map(self, k: int) -> ModuleMap:
        tgt = self.base if k == 0 else self.terms[k - 1]
        return ModuleMap(self.terms[k], tgt, self.differentials[k])


def minimal_resolution(m: Module, kmax: int = 4, graded: Optional[bool] = None) -> Resolution:
    graded = m.is_graded if graded is None else graded
    if graded and not m.is_graded:
        raise ModuleError("graded resolution of an ungraded module")
    a = m.algebra
    f = m.field
    terms, diffs, summs, ksupp = [], [], [], []
    target = m  # the module being covered
    into = f.eye(m.dim)  # embedding of ``target`` into the previous term
    complete = False
    for k in range(kmax + 1):
        if target.dim == 0:
            complete = True
            break
        c = cover(target, graded)
        terms.append(c.module)
        diffs.append(f.matmul(into, c.map.matrix))
        summs.append(c.summands)
        ker = kernel(c.map)
        ksupp.append(target.support() if graded else set())
        target = ker.to_module()
        if graded and target.degrees is None:
            raise ModuleError("kernel lost its grading")
        into = ker.basis
    else:
        complete = target.dim == 0
    while len(terms) < kmax + 1:
        terms.append(zero_module(a, graded))
        prev = terms[-2].dim if len(terms) > 1 else m.dim
        diffs.append(f.zeros(prev, 0))
        summs.append(())
    return Resolution(m, terms, diffs, graded, complete, summs, ksupp)


# -- verification --------------------------------------------------------------

@dataclass
class VerifyReport:
    exact: bool
    projective_terms: bool
    minimal: bool
    is_complex: bool = True
    homomorphisms: bool = True
    witness: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.exact and self.projective_terms and self.minimal and self.is_complex and self.homomorphisms

    def as_dict(self) -> dict:
        return {"exact": self.exact, "projective_terms": self.projective_terms, "minimal": self.minimal,
                "complex": self.is_complex, "homomorphisms": self.homomorphisms, "witness": self.witness}


def term_is_projective(p: Module) -> bool:
    """Dimension count: ``P`` is projective iff it has the size of the projective cover of its top."""
    if p.dim == 0:
        return True
    a = p.algebra
    f = p.field
    t, _ = top(p)
    projs = _projectives(a)
    sdims = _simple_multiplicity_dims(a)
    total = 0
    for i, e in enumerate(a.idempotent_list()):
        mult = f.rank(t.act(e))
        if mult % sdims[i]:
            return False
        total += (mult // sdims[i]) * projs[i][0].dim
    return total == p.dim


def verify(res: Resolution) -> VerifyReport:
    f = res.base.field
    rep = VerifyReport(True, True, True)
    chain = [res.base] + list(res.terms)
    d = res.differentials
    # module maps and degree preservation
    for k, mat in enumerate(d):
        src, tgt = chain[k + 1], chain[k]
        if not is_module_map(mat, src, tgt):
            rep.homomorphisms = False
            rep.witness = rep.witness or f"d_{k} is not A-linear"
        if res.graded and mat.size:
            mp = ModuleMap(src, tgt, mat)
            if not mp.is_graded():
                rep.homomorphisms = False
                rep.witness = rep.witness or f"d_{k} does not preserve degrees"
    for k in range(1, len(d)):
        if d[k].size and d[k - 1].size and not f.is_zero(f.matmul(d[k - 1], d[k])):
            rep.is_complex = False
            rep.exact = False
            rep.witness = rep.witness or f"d_{k - 1} d_{k} != 0"
    # exactness: augmentation onto, then ker d_k = im d_{k+1}
    if f.rank(d[0]) != res.base.dim:
        rep.exact = False
        rep.witness = rep.witness or "augmentation not surjective"
    ranks = [f.rank(mat) if mat.size else 0 for mat in d]
    last = len(res.terms) - 1
    for k in range(len(res.terms)):
        kerdim = res.terms[k].dim - ranks[k]
        if k < last:
            if kerdim != ranks[k + 1]:
                rep.exact = False
                rep.witness = rep.witness or f"homology at P_{k} has dim {kerdim - ranks[k + 1]}"
        elif res.complete and kerdim != 0:
            rep.exact = False
            rep.witness = rep.witness or f"claimed complete but ker d_{k} has dim {kerdim}"
    for k, p in enumerate(res.terms):
        if not term_is_projective(p):
            rep.projective_terms = False
            rep.witness = rep.witness or f"P_{k} is not projective"
    # minimality: ker d_k lies in rad P_k, i.e. ker d_k is superfluous
    for k, p in enumerate(res.terms):
        if p.dim == 0:
            continue
        ker = Submodule(p, f.nullspace(d[k]))
        if not radical_submodule(p).contains(ker):
            rep.minimal = False
            rep.witness = rep.witness or f"ker d_{k} is not superfluous in P_{k}"
            break
    return rep


def support_bound_witness(res: Resolution, a_support: set) -> Optional[str]:
    """Check ``|supp P_k| <= |supp K| * |supp A|`` for the module ``K`` covered at step ``k``."""
    if not res.graded:
        return None
    for k, p in enumerate(res.terms):
        if p.dim == 0 or k >= len(res.kernel_supports):
            continue
        bound = len(res.kernel_supports[k]) * len(a_support)
        if len(p.support()) > bound:
            return f"P_{k} has support {sorted(p.support(), key=repr)} exceeding bound {bound}"
    return None


def compare(r1: Resolution, r2: Resolution) -> bool:
    """Termwise equal dimensions (graded: equal graded dimensions) and both certified minimal."""
    if r1.base.dim != r2.base.dim or r1.base.algebra.dim != r2.base.algebra.dim:
        raise ModuleError("resolutions of different modules")
    n = max(len(r1.terms), len(r2.terms))
    d1 = list(r1.dims) + [0] * (n - len(r1.terms))
    d2 = list(r2.dims) + [0] * (n - len(r2.terms))
    if d1 != d2:
        return False
    if r1.graded and r2.graded:
        g1 = [p.graded_dims() for p in r1.terms] + [{}] * (n - len(r1.terms))
        g2 = [p.graded_dims() for p in r2.terms] + [{}] * (n - len(r2.terms))
        if g1 != g2:
            return False
    return verify(r1).ok and verify(r2).ok


def splice_nonminimal(res: Resolution) -> Resolution:
    """Replace ``P_0 -> M`` by ``P_0 + A -> M`` (zero on the free summand); exact but not minimal."""
    from .modules import direct_sum, regular_module

    f = res.base.field
    a = res.base.algebra
    reg = regular_module(a) if res.graded else forget(regular_module(a))
    p0 = direct_sum([res.terms[0], reg])
    aug = np.concatenate([res.differentials[0], f.zeros(res.base.dim, a.dim)], axis=1)
    # new P_1 = old P_1 + A mapping identically onto the extra summand
    p1 = direct_sum([res.terms[1], reg]) if len(res.terms) > 1 else reg
    d1_old = res.differentials[1] if len(res.terms) > 1 else f.zeros(res.terms[0].dim, 0)
    d1 = block_diag(f, [d1_old, f.eye(a.dim)])
    terms = [p0, p1] + list(res.terms[2:])
    diffs = [aug, d1]
    if len(res.terms) > 2:
        diffs.append(np.concatenate([res.differentials[2], f.zeros(a.dim, res.terms[2].dim)], axis=0))
        diffs.extend(res.differentials[3:])
    return Resolution(res.base, terms, diffs, res.graded, res.complete, kind="spliced")


# -- grading forgetful functor check ---------------------------------------------

@dataclass
class ForgetReport:
    holds: Optional[bool]
    graded_dims: Tuple[int, ...]
    ungraded_dims: Tuple[int, ...]
    forgotten: Optional[VerifyReport] = None
    independent: Optional[VerifyReport] = None
    hypotheses: dict = dc_field(default_factory=dict)
    support_witness: Optional[str] = None
    graded_components: Optional[list] = None

    def summary(self) -> str:
        if self.holds is None:
            return f"hypotheses unmet: {self.hypotheses}"
        eq = "=" if self.graded_dims == self.ungraded_dims else "!="
        dims = "(" + ",".join(str(d) for d in self.graded_dims) + ")"
        return f"graded dims {eq} ungraded dims = {dims}"


def forgetful_resolution_check(m: Module, kmax: int = 4) -> ForgetReport:
    """Resolve ``m`` in the graded category, forget degrees and certify the result in the
    ungraded category; compare with an independent ungraded minimal resolution."""
    a = m.algebra
    hyp = {}
    if not (a.is_graded and m.is_graded):
        hyp["graded_input"] = False
        return ForgetReport(None, (), (), hypotheses=hyp)
    rep = validate(a.monoid)
    hyp["ordered"] = rep.is_ordered
    hyp["identity_least"] = rep.e_is_least
    hyp["well_founded"] = rep.well_founded
    hyp["finite_supports"] = True
    if not rep.ok:
        return ForgetReport(None, (), (), hypotheses=hyp)
    rg = minimal_resolution(m, kmax, graded=True)
    forgotten = rg.forget()
    vf = verify(forgotten)
    ru = minimal_resolution(forget(m), kmax, graded=False)
    vu = verify(ru)
    holds = vf.ok and vu.ok and forgotten.dims == ru.dims
    sw = support_bound_witness(rg, a.support())
    comps = [{a.monoid.label(k): v for k, v in sorted(p.graded_dims().items(), key=lambda kv: a.monoid.sort_key(kv[0]))}
             for p in rg.terms]
    return ForgetReport(holds and sw is None, rg.dims, ru.dims, vf, vu, hyp, sw, comps)

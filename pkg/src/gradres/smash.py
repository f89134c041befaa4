"""Twisted (smash) products of a graded algebra with a Gamma-algebra, and twisted modules.

Basis of ``A # B`` is ``a_i # b_j`` at index ``i * dim B + j`` and the product is
``(a # b)(a' # b') = a a' # b^beta b'`` for ``a'`` of degree ``beta``.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import List, Optional, Sequence

import numpy as np

from .algebra import AlgebraError, GammaAlgebra, GradedAlgebra, build_algebra, radical
from .modules import (
    Module,
    ModuleError,
    ModuleMap,
    Submodule,
    check_module,
    direct_sum,
    is_module_map,
    is_projective,
    radical_submodule,
    shift,
)
from .resolution import Resolution, compare, minimal_resolution, verify


@dataclass(frozen=True, eq=False)
class SmashAlgebra:
    a: GradedAlgebra
    b: GammaAlgebra
    product: GradedAlgebra
    embed_a: np.ndarray  # product.dim x a.dim, a -> a # 1
    embed_b: np.ndarray  # product.dim x b.dim, b -> 1 # b

    def index(self, i: int, j: int) -> int:
        return i * self.b.algebra.dim + j

    def element(self, av: np.ndarray, bv: np.ndarray) -> np.ndarray:
        return self.product.field.kron(av.reshape(-1, 1), bv.reshape(-1, 1)).reshape(-1)

    @property
    def provenance(self) -> dict:
        return {"left": self.a.name, "right": self.b.algebra.name,
                "action": [g.tolist() for g in self.b.generators]}


def _smash_constants(a: GradedAlgebra, g: GammaAlgebra) -> np.ndarray:
    f = a.field
    b = g.algebra
    na, nb = a.dim, b.dim
    n = na * nb
    mult = f.zeros(n, n, n)
    sig = {}
    for k in range(na):
        d = a.degrees[k]
        if d not in sig:
            sig[d] = g.sigma(d)
    for i in range(na):
        for k in range(na):
            ak = a.mult[i, k]
            if f.is_zero(ak):
                continue
            s = sig[a.degrees[k]]
            for j in range(nb):
                bj = s[:, j]
                for l in range(nb):
                    # (b_j)^beta * b_l
                    bv = f.matmul(bj.reshape(1, nb), b.mult[:, l, :]).reshape(nb)
                    mult[i * nb + j, k * nb + l] = f.kron(ak.reshape(-1, 1), bv.reshape(-1, 1)).reshape(n)
    return mult


def smash(a: GradedAlgebra, g: GammaAlgebra, name: str = "") -> SmashAlgebra:
    """Build ``A # B``; the result is re-validated as an algebra (associativity included)."""
    if not a.is_graded:
        raise AlgebraError("the left factor must be graded")
    if a.monoid != g.monoid:
        raise AlgebraError("grading monoid of A differs from the monoid acting on B")
    f = a.field
    b = g.algebra
    if b.field != f:
        raise AlgebraError("factors over different fields")
    na, nb = a.dim, b.dim
    mult = _smash_constants(a, g)
    unit = f.kron(a.unit.reshape(-1, 1), b.unit.reshape(-1, 1)).reshape(-1)
    labels = [f"{a.labels[i]}#{b.labels[j]}" for i in range(na) for j in range(nb)]
    degrees = [a.degrees[i] for i in range(na) for _ in range(nb)]
    idem = None
    if a.idempotents is not None and b.idempotents is not None:
        idem = [f.kron(e.reshape(-1, 1), e2.reshape(-1, 1)).reshape(-1)
                for e in a.idempotent_list() for e2 in b.idempotent_list()]
    hint = None
    try:
        ja, jb = radical(a), radical(b)
        cols = [f.kron(ja[:, c:c + 1], f.eye(nb)) for c in range(ja.shape[1])]
        cols += [f.kron(f.eye(na), jb[:, c:c + 1]) for c in range(jb.shape[1])]
        if cols:
            hint = f.span(np.concatenate(cols, axis=1))
        else:
            hint = f.zeros(na * nb, 0)
    except Exception:
        hint = None
    try:
        prod = build_algebra(f, labels, unit, mult, (a.monoid, degrees), idem,
                             name=name or f"{a.name}#{b.name}", radical_hint=hint)
    except AlgebraError as exc:  # pragma: no cover - would mean an invalid Gamma-algebra got through
        raise AlgebraError(f"smash product failed validation: {exc}", exc.witness) from exc
    embed_a = f.kron(f.eye(na), b.unit.reshape(-1, 1))
    embed_b = f.kron(a.unit.reshape(-1, 1), f.eye(nb))
    s = SmashAlgebra(a, g, prod, embed_a, embed_b)
    for emb, src, label in ((embed_a, a, "A"), (embed_b, b, "B")):
        if not _is_algebra_map(emb, src, prod):
            raise AlgebraError(f"embedding of {label} is not an algebra homomorphism")
    return s


def _is_algebra_map(mat: np.ndarray, src: GradedAlgebra, tgt: GradedAlgebra) -> bool:
    f = src.field
    if not f.equal(f.matmul(mat, src.unit), tgt.unit):
        return False
    for i in range(src.dim):
        for j in range(src.dim):
            lhs = f.matmul(mat, src.mult[i, j])
            rhs = tgt.mul(mat[:, i], mat[:, j])
            if not f.equal(lhs, rhs):
                return False
    return True


def check_twisted_axioms(s: SmashAlgebra) -> dict:
    """The four defining identities of a twisted product, with the identity map as
    comparison isomorphism and the unit maps from the field."""
    p = s.product
    f = p.field
    a, b = s.a, s.b.algebra
    na, nb = a.dim, b.dim
    ea, eb = f.eye(na), f.eye(nb)
    out = {"units": True, "factorisation": True, "left_multiplicative": True, "right_multiplicative": True}
    one_a = s.element(a.unit, b.unit)
    if not (f.equal(f.matmul(s.embed_a, a.unit), one_a) and f.equal(f.matmul(s.embed_b, b.unit), one_a)
            and f.equal(one_a, p.unit)):
        out["units"] = False
    for i in range(na):
        for j in range(nb):
            lhs = s.element(ea[:, i], eb[:, j])
            rhs = p.mul(s.element(ea[:, i], b.unit), s.element(a.unit, eb[:, j]))
            if not f.equal(lhs, rhs):
                out["factorisation"] = False
    for i in range(na):
        for k in range(na):
            lhs = s.element(a.mult[i, k], b.unit)
            rhs = p.mul(s.element(ea[:, i], b.unit), s.element(ea[:, k], b.unit))
            if not f.equal(lhs, rhs):
                out["left_multiplicative"] = False
    for j in range(nb):
        for l in range(nb):
            lhs = s.element(a.unit, b.mult[j, l])
            rhs = p.mul(s.element(a.unit, eb[:, j]), s.element(a.unit, eb[:, l]))
            if not f.equal(lhs, rhs):
                out["right_multiplicative"] = False
    out["ok"] = all(out.values())
    return out


def twisting_map(s: SmashAlgebra) -> np.ndarray:
    """``T[j, i]`` = coordinates of ``(1 # b_j)(a_i # 1)`` in the ``a # b`` basis."""
    p = s.product
    f = p.field
    a, b = s.a, s.b.algebra
    ea, eb = f.eye(a.dim), f.eye(b.dim)
    t = f.zeros(b.dim, a.dim, p.dim)
    for j in range(b.dim):
        for i in range(a.dim):
            t[j, i] = p.mul(s.element(a.unit, eb[:, j]), s.element(ea[:, i], b.unit))
    return t


def rebuild_from_twisting(s: SmashAlgebra, t: np.ndarray) -> np.ndarray:
    """Structure constants recovered from the unit maps and ``T``:
    ``(a # b)(a' # b') = (a # 1) T(b # a') (1 # b')``."""
    f = s.product.field
    a, b = s.a, s.b.algebra
    na, nb = a.dim, b.dim
    n = na * nb
    mult = f.zeros(n, n, n)
    for i in range(na):
        for j in range(nb):
            for k in range(na):
                for l in range(nb):
                    acc = f.zeros(n)
                    tv = t[j, k]
                    for c in np.nonzero(tv != 0)[0]:
                        si, sj = divmod(int(c), nb)
                        left = a.mult[i, si]
                        right = b.mult[sj, l]
                        term = f.kron(left.reshape(-1, 1), right.reshape(-1, 1)).reshape(n)
                        acc = f.add(acc, f.smul(tv[c], term) if f.p is not None else term * tv[c])
                    mult[i * nb + j, k * nb + l] = acc
    return mult


# -- twisted modules -------------------------------------------------------------

def beta_twist(n: Module, g: GammaAlgebra, beta) -> Module:
    """``_beta N``: ``b`` acts as ``b^beta``."""
    f = n.field
    s = g.sigma(g.monoid.element(beta))
    acts = [n.act(s[:, j]) for j in range(g.algebra.dim)]
    action = np.array(acts, dtype=f.dtype).reshape(g.algebra.dim, n.dim, n.dim)
    action.setflags(write=False)
    return Module(n.algebra, action, n.degrees, f"{n.name}_{beta}" if n.name else "")


def twist_module(s: SmashAlgebra, m: Module, n: Module, check: bool = True) -> Module:
    """``M # N`` with ``(a # b)(m # x) = a m # b^deg(m) x``, graded by the degrees of ``M``."""
    if not m.is_graded:
        raise ModuleError("the left factor must be a graded module")
    f = m.field
    a, g = s.a, s.b
    na, nb = a.dim, g.algebra.dim
    dm, dn = m.dim, n.dim
    degs = sorted(set(m.degrees), key=a.monoid.sort_key)
    twisted = {d: beta_twist(n, g, d) for d in degs}
    proj = {}
    for d in degs:
        pmat = f.zeros(dm, dm)
        for k in m.degree_indices(d):
            pmat[k, k] = f.one
        proj[d] = pmat
    action = f.zeros(na * nb, dm * dn, dm * dn)
    for i in range(na):
        for j in range(nb):
            acc = f.zeros(dm * dn, dm * dn)
            for d in degs:
                left = f.matmul(m.action[i], proj[d])
                if f.is_zero(left):
                    continue
                acc = f.add(acc, f.kron(left, twisted[d].action[j]))
            action[i * nb + j] = acc
    action.setflags(write=False)
    degrees = tuple(d for d in m.degrees for _ in range(dn))
    out = Module(s.product, action, degrees, f"{m.name}#{n.name}")
    if check:
        check_module(out)
    return out


def twist_map(s: SmashAlgebra, phi: ModuleMap, psi: ModuleMap, check: bool = True) -> ModuleMap:
    f = s.product.field
    src = twist_module(s, phi.source, psi.source)
    tgt = twist_module(s, phi.target, psi.target)
    mat = f.kron(phi.matrix, psi.matrix)
    if check and not is_module_map(mat, src, tgt):
        raise ModuleError("twisted map does not intertwine the smash actions")
    return ModuleMap(src, tgt, mat)


def shift_twist_identity_check(s: SmashAlgebra, n: Module, beta) -> bool:
    """``A[beta] # N`` and ``(A # _beta N)[beta]`` coincide under the identity basis map."""
    from .modules import regular_module

    a = s.a
    reg = regular_module(a)
    lhs = twist_module(s, shift(reg, beta), n)
    rhs = shift(twist_module(s, reg, beta_twist(n, s.b, beta)), beta)
    f = a.field
    ident = ModuleMap(lhs, rhs, f.eye(lhs.dim))
    return (lhs.degrees == rhs.degrees and f.equal(lhs.action, rhs.action)
            and ident.is_homomorphism() and ident.is_graded())


def direct_sum_compatibility(s: SmashAlgebra, mods: Sequence[Module], n: Module) -> bool:
    """The canonical map ``(sum M_i) # N -> sum (M_i # N)`` is a graded isomorphism."""
    f = s.product.field
    lhs = twist_module(s, direct_sum(list(mods)), n)
    rhs = direct_sum([twist_module(s, m, n) for m in mods])
    # with the (module index outer, N index inner) ordering the canonical map is the identity
    mp = ModuleMap(lhs, rhs, f.eye(lhs.dim))
    return mp.is_homomorphism() and mp.is_graded()


def twisted_superfluous_check(s: SmashAlgebra, sub: Submodule, n: Module) -> Optional[bool]:
    """If ``sub`` is superfluous (graded) in its parent, so is ``sub # N`` in ``parent # N``.

    Returns ``None`` when the premise fails."""
    m2 = sub.parent
    if not radical_submodule(m2).contains(sub) or not sub.is_graded():
        return None
    f = s.product.field
    big = twist_module(s, m2, n)
    basis = f.kron(sub.basis, f.eye(n.dim))
    return radical_submodule(big).contains(Submodule(big, basis))


# -- preservation of minimal resolutions ------------------------------------------

def twist_resolution(s: SmashAlgebra, res: Resolution, n: Module) -> Resolution:
    f = s.product.field
    base = twist_module(s, res.base, n)
    terms = [twist_module(s, p, n) for p in res.terms]
    eye = f.eye(n.dim)
    diffs = [f.kron(d, eye) for d in res.differentials]
    return Resolution(base, terms, diffs, True, res.complete, kind="twisted")


@dataclass
class TwistReport:
    holds: Optional[bool]
    shifts_checked: List = dc_field(default_factory=list)
    failing_shift: Optional[object] = None
    image_dims: tuple = ()
    direct_dims: tuple = ()
    image_report: Optional[dict] = None
    compare: Optional[bool] = None
    reason: str = ""

    def as_dict(self) -> dict:
        return {"holds": self.holds, "shifts_checked": self.shifts_checked,
                "failing_shift": self.failing_shift, "image_dims": list(self.image_dims),
                "direct_dims": list(self.direct_dims), "image_verify": self.image_report,
                "compare": self.compare, "reason": self.reason}


def twisted_resolution_check(s: SmashAlgebra, m: Module, n: Module, kmax: int = 3) -> TwistReport:
    """Apply ``- # N`` to the minimal graded resolution of ``m`` and certify the image as the
    minimal graded resolution of ``m # N``; the twisted ``N`` must be projective at every
    shift degree that occurs."""
    res = minimal_resolution(m, kmax, graded=True)
    shifts = []
    for summ in res.summands:
        for _, beta in summ:
            if beta not in shifts:
                shifts.append(beta)
    shifts.sort(key=s.a.monoid.sort_key)
    labels = [s.a.monoid.to_json(b) for b in shifts]
    for beta in shifts:
        if not is_projective(beta_twist(n, s.b, beta)):
            return TwistReport(None, labels, s.a.monoid.to_json(beta),
                               reason=f"twisted module at shift {s.a.monoid.label(beta)} is not projective")
    image = twist_resolution(s, res, n)
    rep = verify(image)
    direct = minimal_resolution(twist_module(s, m, n), kmax, graded=True)
    same = compare(image, direct)
    return TwistReport(rep.ok and same, labels, None, image.dims, direct.dims, rep.as_dict(), same)

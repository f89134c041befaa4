"""Tensor products over A, Tor, bar resolutions relative to a split subalgebra R,
relative Tor, relative projectivity and the stratifying-ideal checks.

Right A-modules are left modules over the opposite algebra: the matrix of
basis element ``b_i`` is ``n -> n b_i``.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field as dc_field
from typing import Dict, List, Optional, Sequence

import numpy as np

from .algebra import CapabilityError, GradedAlgebra, opposite, quotient_by_ideal
from .exactla import Field, QuotientSpace
from .modules import (
    Module,
    ModuleError,
    Submodule,
    check_module,
    deflate,
    forget,
    hom_space,
    inflate,
    quotient,
    regular_module,
    simples,
)
from .resolution import Resolution, compare, minimal_resolution, verify

DEFAULT_MAXDIM = 20_000


def max_term_dim() -> int:
    raw = os.environ.get("GRADRES_MAXDIM")
    if raw is None or raw == "":
        return DEFAULT_MAXDIM
    try:
        return int(raw)
    except ValueError as exc:
        raise ValueError(f"GRADRES_MAXDIM must be an integer, got {raw!r}") from exc


# -- the subalgebra R -------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class SubalgebraR:
    """A split semisimple commutative subalgebra spanned by orthogonal idempotents."""

    parent: GradedAlgebra
    kind: str  # "ground_field" or "idempotent_span"
    idempotents: tuple

    @classmethod
    def ground_field(cls, a: GradedAlgebra) -> "SubalgebraR":
        return cls(a, "ground_field", (a.unit,))

    @classmethod
    def idempotent_span(cls, a: GradedAlgebra, idems: Optional[Sequence[np.ndarray]] = None) -> "SubalgebraR":
        idems = list(a.idempotent_list() if idems is None else idems)
        f = a.field
        total = f.zeros(a.dim)
        for i, e in enumerate(idems):
            total = f.add(total, e)
            for j, e2 in enumerate(idems):
                want = e if i == j else f.zeros(a.dim)
                if not f.equal(a.mul(e, e2), want):
                    raise ModuleError("idempotents are not orthogonal", (i, j))
        if not f.equal(total, a.unit):
            raise ModuleError("idempotents do not sum to the unit")
        return cls(a, "idempotent_span", tuple(idems))

    def label(self) -> str:
        return "field" if self.kind == "ground_field" else f"span of {len(self.idempotents)} idempotents"


def opposite_of(a: GradedAlgebra) -> GradedAlgebra:
    cached = a.__dict__.get("_opposite")
    if cached is None:
        cached = opposite(a)
        a.__dict__["_opposite"] = cached
    return cached


def right_regular(a: GradedAlgebra) -> Module:
    """``A_A`` as a module over the opposite algebra."""
    act = np.array(a.right_mult)
    act.setflags(write=False)
    return Module(opposite_of(a), act, None, "A_A")


def as_right_module(m: Module, a: GradedAlgebra) -> Module:
    """Reinterpret a left module over ``a``'s opposite as a right ``a``-module (no change of data)."""
    if m.algebra.dim != a.dim:
        raise ModuleError("algebra mismatch")
    return m


def right_quotient_module(a: GradedAlgebra, ideal_basis: np.ndarray) -> Module:
    """``A/I`` as a right module, for a two-sided ideal with basis columns ``ideal_basis``."""
    rr = right_regular(a)
    qm, _ = quotient(rr, Submodule(rr, ideal_basis))
    return Module(qm.algebra, qm.action, None, "(A/I)_A")


def left_quotient_module(a: GradedAlgebra, ideal_basis: np.ndarray) -> Module:
    reg = forget(regular_module(a))
    qm, _ = quotient(reg, Submodule(reg, ideal_basis))
    return Module(a, qm.action, None, "A/I")


# -- tensor products and Tor --------------------------------------------------------

@dataclass
class TensorPresentation:
    dim: int
    space: QuotientSpace  # quotient of N (x) M by the balancing relations


def tensor_over_A(n: Module, m: Module) -> TensorPresentation:
    """``N (x)_A M`` as the cokernel of ``n (x) a (x) m -> na (x) m - n (x) am``."""
    f = m.field
    if n.algebra.dim != m.algebra.dim:
        raise ModuleError("modules over different algebras")
    dn, dm = n.dim, m.dim
    if dn * dm == 0:
        return TensorPresentation(0, QuotientSpace(f, 0, f.zeros(0, 0)))
    en, em = f.eye(dn), f.eye(dm)
    blocks = [f.sub(f.kron(n.action[i], em), f.kron(en, m.action[i])) for i in range(m.algebra.dim)]
    rel = np.concatenate(blocks, axis=1)
    space = QuotientSpace(f, dn * dm, f.span(rel))
    return TensorPresentation(space.dim, space)


@dataclass
class TorTable:
    kind: str
    dims: List[int]
    kmax: int
    left: str = ""
    right: str = ""
    hypotheses: dict = dc_field(default_factory=dict)

    def as_dict(self) -> dict:
        return {"kind": self.kind, "dims": list(self.dims), "kmax": self.kmax,
                "left": self.left, "right": self.right, "hypotheses": self.hypotheses}

    def vanishes_above_zero(self) -> bool:
        return all(d == 0 for d in self.dims[1:])


def _homology_dims(f: Field, dims: List[int], diffs: List[np.ndarray], kmax: int) -> List[int]:
    """``diffs[k]: C_k -> C_{k-1}`` for ``k >= 1`` (``diffs[0]`` unused)."""
    ranks = [0] * (len(dims) + 1)
    for k in range(1, len(dims)):
        mat = diffs[k]
        ranks[k] = f.rank(mat) if mat.size else 0
    out = []
    for k in range(kmax + 1):
        out.append(dims[k] - ranks[k] - ranks[k + 1])
    return out


def tor(n: Module, m: Module, kmax: int = 4, res: Optional[Resolution] = None) -> TorTable:
    """Ordinary ``Tor^A_k(N, M)`` from the minimal resolution of ``M``."""
    f = m.field
    if res is None:
        res = minimal_resolution(forget(m), kmax + 1, graded=False)
    pres = [tensor_over_A(n, p) for p in res.terms]
    dims = [p.dim for p in pres]
    en = f.eye(n.dim)
    diffs = [None]
    for k in range(1, len(res.terms)):
        src, tgt = pres[k], pres[k - 1]
        if src.dim == 0 or tgt.dim == 0:
            diffs.append(f.zeros(tgt.dim, src.dim))
            continue
        lifted = f.matmul(f.kron(en, res.differentials[k]), src.space.section)
        diffs.append(f.matmul(tgt.space.projection, lifted))
    return TorTable("ordinary", _homology_dims(f, dims, diffs, kmax), kmax, n.name, m.name)


# -- balanced tensor over R and the bar resolution -------------------------------------

@dataclass
class Balanced:
    """``U (x)_R X`` realised as the image of ``E = sum_i rho_U(e_i) (x) rho_X(e_i)``."""

    dim: int
    section: np.ndarray  # (dim U * dim X) x dim
    projection: np.ndarray  # dim x (dim U * dim X)


def balanced_tensor(f: Field, u_idem: List[np.ndarray], x_idem: List[np.ndarray]) -> Balanced:
    """``u_idem[i]``: right action of ``e_i`` on U; ``x_idem[i]``: left action on X."""
    du, dx = u_idem[0].shape[0], x_idem[0].shape[0]
    n = du * dx
    if len(u_idem) == 1:
        eye = f.eye(n)
        return Balanced(n, eye, eye)
    e = f.zeros(n, n)
    for ru, rx in zip(u_idem, x_idem):
        e = f.add(e, f.kron(ru, rx))
    piv = f.column_basis(e)
    sec = e[:, piv]
    # E is idempotent with image spanned by ``sec``; coordinates via pivot rows of ``sec``
    rows = f.rref(sec.T)[1]
    inv = f.inverse(sec[rows, :])
    proj = f.matmul(inv, e[rows, :])
    return Balanced(len(piv), sec, proj)


@dataclass(eq=False)
class BarResolution:
    """``beta_k = A (x)_R ... (x)_R M`` with ``k+1`` factors of ``A``.

    ``spaces[n]`` is ``X_n = A (x)_R X_{n-1}`` (``X_0 = M``), ``delta[n]: X_n -> X_{n-1}``
    and ``homotopy[n]: X_n -> X_{n+1}`` is ``y -> 1 (x) y``.
    """

    algebra: GradedAlgebra
    r: SubalgebraR
    base: Module
    modules: List[Module]  # X_0 .. X_{kmax+1}
    spaces: List[Optional[Balanced]]
    delta: List[Optional[np.ndarray]]
    homotopy: List[np.ndarray]

    @property
    def kmax(self) -> int:
        return len(self.modules) - 2

    def resolution(self) -> Resolution:
        terms = self.modules[1:]
        diffs = [self.delta[k] for k in range(1, len(self.modules))]
        return Resolution(self.base, terms, diffs, False, False, kind="bar")

    def term_dims(self) -> List[int]:
        return [x.dim for x in self.modules[1:]]

    def check_complex(self) -> Dict[int, bool]:
        f = self.algebra.field
        out = {}
        for n in range(2, len(self.modules)):
            out[n - 1] = f.is_zero(f.matmul(self.delta[n - 1], self.delta[n]))
        return out

    def check_homotopy(self) -> Dict[int, bool]:
        """``delta s + s delta = id`` on ``X_n`` (only ``delta s`` on ``M``)."""
        f = self.algebra.field
        out = {}
        top = len(self.modules) - 1
        for n in range(0, top):
            lhs = f.matmul(self.delta[n + 1], self.homotopy[n])
            if n >= 1:
                lhs = f.add(lhs, f.matmul(self.homotopy[n - 1], self.delta[n]))
            out[n] = f.equal(lhs, f.eye(self.modules[n].dim))
        return out


def _idempotent_actions(m: Module, r: SubalgebraR) -> List[np.ndarray]:
    return [m.act(e) for e in r.idempotents]


def bar_resolution(a: GradedAlgebra, r: SubalgebraR, m: Module, kmax: int = 4,
                   cap: Optional[int] = None) -> BarResolution:
    """Bar resolution up to ``beta_kmax`` together with its contracting homotopy."""
    f = a.field
    cap = max_term_dim() if cap is None else cap
    m = forget(m)
    na = a.dim
    right_e = [a.right_matrix(e) for e in r.idempotents]
    left = a.left_mult
    unit_col = a.unit.reshape(-1, 1)
    mods = [m]
    spaces: List[Optional[Balanced]] = [None]
    delta: List[Optional[np.ndarray]] = [None]
    homotopy: List[np.ndarray] = []
    for n in range(1, kmax + 2):
        prev = mods[-1]
        if na * prev.dim > cap:
            raise CapabilityError(f"bar term {n} would have raw dimension {na * prev.dim} > cap {cap}")
        bal = balanced_tensor(f, right_e, _idempotent_actions(prev, r))
        dx = prev.dim
        eye_x = f.eye(dx)
        acts = [f.matmul(bal.projection, f.matmul(f.kron(left[i], eye_x), bal.section)) for i in range(na)]
        action = np.array(acts, dtype=f.dtype).reshape(na, bal.dim, bal.dim)
        action.setflags(write=False)
        xn = Module(a, action, None, f"X{n}")
        # multiplication a (x) y -> a y
        mul_full = np.concatenate([prev.action[i] for i in range(na)], axis=1)  # dx x (na*dx)
        mu = f.matmul(mul_full, bal.section)
        if n == 1:
            d = mu
        else:
            lower = spaces[n - 1]
            id_delta = f.matmul(lower.projection,
                                f.matmul(f.kron(f.eye(na), delta[n - 1]), bal.section))
            d = f.sub(mu, id_delta)
        homotopy.append(f.matmul(bal.projection, f.kron(unit_col, eye_x)))
        mods.append(xn)
        spaces.append(bal)
        delta.append(d)
    return BarResolution(a, r, m, mods, spaces, delta, homotopy)


def relative_tor(n: Module, m: Module, r: SubalgebraR, kmax: int = 4,
                 bar: Optional[BarResolution] = None) -> TorTable:
    """``Tor^{(A,R)}_k(N, M)`` as homology of ``N (x)_A beta``, using ``N (x)_A (A (x)_R X) = N (x)_R X``."""
    a = r.parent
    f = a.field
    bar = bar if bar is not None else bar_resolution(a, r, m, kmax)
    if bar.kmax < kmax:
        raise ModuleError("bar resolution too short")
    n_idem = [n.act(e) for e in r.idempotents]  # right action of e_i on N
    dn = n.dim
    en = f.eye(dn)
    # C_k = N (x)_R X_k for k = 0 .. kmax + 1
    cs = [balanced_tensor(f, n_idem, _idempotent_actions(x, r)) for x in bar.modules[:kmax + 2]]
    # n (x) a -> n a
    # column p * na + i holds n_p a_i, matching the (N outer, A inner) tensor ordering
    right_act = np.ascontiguousarray(n.action.transpose(1, 2, 0)).reshape(dn, dn * a.dim)
    diffs = [None]
    for k in range(1, kmax + 2):
        src, tgt = cs[k], cs[k - 1]
        xprev = bar.modules[k - 1].dim
        lift = f.matmul(f.kron(en, bar.spaces[k].section), src.section)  # N (x) A (x) X_{k-1}
        mu = f.matmul(tgt.projection, f.matmul(f.kron(right_act, f.eye(xprev)), lift))
        idd = f.matmul(tgt.projection, f.matmul(f.kron(en, bar.delta[k]), src.section))
        diffs.append(f.sub(mu, idd))
    dims = [c.dim for c in cs]
    hyp = {"R": r.label()}
    return TorTable("relative", _homology_dims(f, dims, diffs, kmax), kmax, n.name, m.name, hyp)


def is_relatively_projective(p: Module, r: SubalgebraR) -> bool:
    """Whether the multiplication ``A (x)_R P -> P`` has an A-linear section."""
    a = r.parent
    f = a.field
    p = forget(p)
    if p.dim == 0:
        return True
    bar = bar_resolution(a, r, p, kmax=0)
    x1, mu = bar.modules[1], bar.delta[1]
    basis = hom_space(p, x1)
    if not basis:
        return False
    cols = [f.matmul(mu, h).reshape(-1) for h in basis]
    system = np.array(cols, dtype=f.dtype).T
    return f.solve(system, f.eye(p.dim).reshape(-1)) is not None


# -- stratifying ideals --------------------------------------------------------------

@dataclass
class StratifyReport:
    stratifying: bool
    tor: TorTable
    relative: Optional[TorTable]
    flags: dict
    quotient_dim: int

    def as_dict(self) -> dict:
        return {"stratifying": self.stratifying, "tor": self.tor.as_dict(),
                "relative_tor": self.relative.as_dict() if self.relative else None,
                "flags": self.flags, "quotient_dim": self.quotient_dim}


def r_module_flags(a: GradedAlgebra, r: SubalgebraR) -> dict:
    """Projectivity and freeness of ``A`` and ``A/I`` over ``R`` (``R`` is semisimple)."""
    f = a.field
    comps = [f.rank(a.right_matrix(e)) for e in r.idempotents]
    return {
        "A_projective_over_R": True,
        "quotient_projective_over_R": True,
        "A_free_over_R": len(set(comps)) == 1,
        "R": r.label(),
        "free_reading": "free as an R-module",
    }


def stratifying_check(a: GradedAlgebra, gens, kmax: int = 4, r: Optional[SubalgebraR] = None) -> StratifyReport:
    q, proj, ideal = quotient_by_ideal(a, gens)
    left = left_quotient_module(a, ideal.basis)
    right = right_quotient_module(a, ideal.basis)
    t = tor(right, left, kmax)
    rel = relative_tor(right, left, r, kmax) if r is not None else None
    flags = r_module_flags(a, r if r is not None else SubalgebraR.ground_field(a))
    strat = t.vanishes_above_zero()
    t.hypotheses = {"ideal_dim": ideal.dim}
    return StratifyReport(strat, t, rel, flags, q.dim)


@dataclass
class QuotientFunctorReport:
    holds: Optional[bool]
    declined: bool
    witness: Optional[dict]
    image_dims: tuple = ()
    direct_dims: tuple = ()
    image_verify: Optional[dict] = None
    compare: Optional[bool] = None

    def as_dict(self) -> dict:
        return {"holds": self.holds, "declined": self.declined, "witness": self.witness,
                "image_dims": list(self.image_dims), "direct_dims": list(self.direct_dims),
                "image_verify": self.image_verify, "compare": self.compare}


def quotient_functor_check(a: GradedAlgebra, gens, m: Module, kmax: int = 4,
                           r: Optional[SubalgebraR] = None) -> QuotientFunctorReport:
    """Apply ``A/I (x)_A -`` to the minimal A-resolution of an A/I-module ``m`` and certify the
    image as the minimal A/I-resolution of ``m``; declines unless ``I`` is stratifying."""
    strat = stratifying_check(a, gens, kmax, r)
    if not strat.stratifying or (strat.relative is not None and not strat.relative.vanishes_above_zero()):
        return QuotientFunctorReport(None, True, strat.as_dict())
    q, proj, ideal = quotient_by_ideal(a, gens)
    f = a.field
    m = forget(m)
    if m.algebra.dim != q.dim:
        raise ModuleError("module must be over the quotient algebra")
    m_big = inflate(m, a, proj)
    res = minimal_resolution(m_big, kmax, graded=False)
    qs = QuotientSpace(f, a.dim, ideal.basis)
    section = qs.section  # preimages of quotient basis vectors

    def reduce_term(p: Module):
        # P / IP as a module over A/I
        vecs = [p.act(ideal.basis[:, c]) for c in range(ideal.dim)]
        ip = np.concatenate(vecs, axis=1) if vecs and p.dim else f.zeros(p.dim, 0)
        space = QuotientSpace(f, p.dim, f.span(ip) if ip.shape[1] else ip)
        acts = [f.matmul(space.projection, f.matmul(p.act(section[:, s]), space.section))
                for s in range(q.dim)]
        action = np.array(acts, dtype=f.dtype).reshape(q.dim, space.dim, space.dim)
        out = Module(q, action, None, p.name)
        check_module(out)
        return out, space

    reduced = [reduce_term(p) for p in res.terms]
    base = deflate(m_big, q, section)
    terms = [t for t, _ in reduced]
    diffs = []
    for k, d in enumerate(res.differentials):
        src_space = reduced[k][1]
        if k == 0:
            diffs.append(f.matmul(d, src_space.section))
        else:
            tgt_space = reduced[k - 1][1]
            diffs.append(f.matmul(tgt_space.projection, f.matmul(d, src_space.section)))
    image = Resolution(base, terms, diffs, False, res.complete, kind="reduced")
    rep = verify(image)
    direct = minimal_resolution(m, kmax, graded=False)
    same = compare(image, direct)
    return QuotientFunctorReport(rep.ok and same, False, None, image.dims, direct.dims, rep.as_dict(), same)


def quotient_modules(a: GradedAlgebra, gens) -> List[Module]:
    """Regular module and simples of ``A/I`` (as modules over the quotient)."""
    q, _, _ = quotient_by_ideal(a, gens)
    return [forget(regular_module(q))] + [forget(s) for s in simples(q)]


def relative_vanishing_check(a: GradedAlgebra, gens, r: SubalgebraR, kmax: int = 4) -> dict:
    """If relative ``Tor(A/I, A/I)`` vanishes in positive degrees (and ``A``, ``A/I`` are
    R-projective), relative ``Tor(A/I, M)`` vanishes for the A/I-modules at hand."""
    q, proj, ideal = quotient_by_ideal(a, gens)
    right = right_quotient_module(a, ideal.basis)
    left = left_quotient_module(a, ideal.basis)
    base = relative_tor(right, left, r, kmax)
    flags = r_module_flags(a, r)
    premise = base.vanishes_above_zero() and flags["A_projective_over_R"] and flags["quotient_projective_over_R"]
    rows = []
    ok = True
    for mod in quotient_modules(a, gens):
        big = inflate(mod, a, proj)
        t = relative_tor(right, big, r, kmax)
        rows.append({"module_dim": mod.dim, "dims": t.dims})
        if premise and not t.vanishes_above_zero():
            ok = False
    return {"premise": premise, "holds": ok if premise else None, "base": base.as_dict(),
            "modules": rows, "flags": flags}

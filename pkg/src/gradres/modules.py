"""Finite-dimensional left modules, graded modules and the submodule calculus.

A module stores one action matrix per algebra basis element.  Graded
modules additionally carry one monoid degree per module basis vector; all
constructions here keep module bases homogeneous.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from functools import cached_property
from itertools import combinations, product
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .algebra import CapabilityError, GradedAlgebra, same_algebra
from .exactla import Field, QuotientSpace, block_diag


class ModuleError(ValueError):
    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


@dataclass(frozen=True, eq=False)
class Module:
    algebra: GradedAlgebra
    action: np.ndarray  # action[i] = matrix of algebra basis element i
    degrees: Optional[tuple] = None
    name: str = ""

    @property
    def dim(self) -> int:
        return self.action.shape[1]

    @property
    def field(self) -> Field:
        return self.algebra.field

    @property
    def is_graded(self) -> bool:
        return self.degrees is not None

    def act(self, a: np.ndarray) -> np.ndarray:
        """Matrix of the algebra element with coordinates ``a``."""
        n, m = self.algebra.dim, self.dim
        f = self.field
        return f.matmul(a.reshape(1, n), self.action.reshape(n, m * m)).reshape(m, m)

    def support(self) -> set:
        return set(self.degrees) if self.degrees is not None else set()

    def graded_dims(self) -> dict:
        out = {}
        for d in self.degrees or ():
            out[d] = out.get(d, 0) + 1
        return out

    def degree_indices(self, gamma) -> List[int]:
        return [k for k, d in enumerate(self.degrees) if d == gamma]

    @cached_property
    def radical(self) -> "Submodule":
        return radical_submodule(self)

    def __repr__(self):
        g = ", graded" if self.is_graded else ""
        return f"Module({self.name or '?'}, dim={self.dim}{g})"


def check_module(m: Module) -> None:
    a = m.algebra
    f = a.field
    n, d = a.dim, m.dim
    if m.action.shape != (n, d, d):
        raise ModuleError(f"action has shape {m.action.shape}, expected {(n, d, d)}")
    if not f.equal(m.act(a.unit), f.eye(d)):
        raise ModuleError("the unit does not act as the identity")
    flat = m.action.reshape(n, d * d)
    for i in range(n):
        for j in range(n):
            lhs = f.matmul(m.action[i], m.action[j])
            rhs = f.matmul(a.mult[i, j].reshape(1, n), flat).reshape(d, d)
            if not f.equal(lhs, rhs):
                raise ModuleError(
                    f"action is not multiplicative on ({a.labels[i]}, {a.labels[j]})", (i, j)
                )
    if m.is_graded:
        if not a.is_graded:
            raise ModuleError("graded module over an ungraded algebra")
        if len(m.degrees) != d:
            raise ModuleError("need one degree per module basis vector")
        g = a.monoid
        for i in range(n):
            for k in range(d):
                target = g.mul(a.degrees[i], m.degrees[k])
                for r in np.nonzero(m.action[i][:, k] != 0)[0]:
                    if m.degrees[r] != target:
                        raise ModuleError(
                            f"grading violated: {a.labels[i]} sends basis vector {k} "
                            f"(degree {m.degrees[k]}) onto basis vector {r} of degree "
                            f"{m.degrees[r]}, expected {target}",
                            (i, k, int(r)),
                        )


def build_module(algebra: GradedAlgebra, action, degrees=None, name: str = "",
                 check: bool = True) -> Module:
    f = algebra.field
    act = f.array(action) if not isinstance(action, np.ndarray) else f.reduce(action)
    if act.ndim == 3 and act.shape[0] == algebra.dim:
        pass
    elif act.size == 0:
        act = f.zeros(algebra.dim, 0, 0)
    if degrees is not None:
        degrees = tuple(algebra.monoid.element(x) for x in degrees)
    m = Module(algebra, act, degrees, name)
    if check:
        check_module(m)
    act.setflags(write=False)
    return m


def _module(algebra, action, degrees, name="") -> Module:
    """Internal constructor for actions that are correct by construction."""
    action.setflags(write=False)
    return Module(algebra, action, degrees, name)


@dataclass(frozen=True, eq=False)
class Submodule:
    parent: Module
    basis: np.ndarray  # independent columns, homogeneous when the parent is graded

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    @property
    def field(self) -> Field:
        return self.parent.field

    def contains(self, other: "Submodule") -> bool:
        return self.field.contains(self.basis, other.basis)

    def equals(self, other: "Submodule") -> bool:
        return self.dim == other.dim and self.contains(other)

    @property
    def is_whole(self) -> bool:
        return self.dim == self.parent.dim

    def is_graded(self) -> bool:
        if not self.parent.is_graded:
            return False
        return homogeneous_basis(self.field, self.basis, self.parent.degrees) is not None

    def coordinates(self, vecs: np.ndarray) -> np.ndarray:
        """Coordinates of vectors of the submodule in ``basis``."""
        f = self.field
        rows = self._pivot_rows
        if not rows:
            return f.zeros(0, vecs.shape[1])
        return f.matmul(self._pivot_inverse, vecs[rows, :])

    @cached_property
    def _pivot_rows(self) -> List[int]:
        return self.field.rref(self.basis.T)[1] if self.dim else []

    @cached_property
    def _pivot_inverse(self) -> np.ndarray:
        return self.field.inverse(self.basis[self._pivot_rows, :])

    def to_module(self) -> Module:
        f = self.field
        p = self.parent
        acts = [self.coordinates(f.matmul(p.action[i], self.basis)) for i in range(p.algebra.dim)]
        action = np.array(acts, dtype=f.dtype).reshape(p.algebra.dim, self.dim, self.dim)
        degrees = None
        if p.is_graded:
            degrees = tuple(_vector_degree(self.basis[:, c], p.degrees) for c in range(self.dim))
            if any(d is None for d in degrees):
                degrees = None
        return _module(p.algebra, action, degrees, f"sub({p.name})" if p.name else "")

    def inclusion(self) -> "ModuleMap":
        return ModuleMap(self.to_module(), self.parent, self.basis)


@dataclass(frozen=True, eq=False)
class ModuleMap:
    source: Module
    target: Module
    matrix: np.ndarray  # target.dim x source.dim

    def compose(self, other: "ModuleMap") -> "ModuleMap":
        """``self o other``."""
        return ModuleMap(other.source, self.target, self.source.field.matmul(self.matrix, other.matrix))

    def is_homomorphism(self) -> bool:
        return is_module_map(self.matrix, self.source, self.target)

    def is_graded(self) -> bool:
        if not (self.source.is_graded and self.target.is_graded):
            return False
        for c, r in zip(*np.nonzero(self.matrix.T != 0)):
            if self.source.degrees[c] != self.target.degrees[r]:
                return False
        return True


def is_module_map(mat: np.ndarray, src: Module, tgt: Module) -> bool:
    f = src.field
    if mat.shape != (tgt.dim, src.dim):
        return False
    for i in range(src.algebra.dim):
        if not f.equal(f.matmul(mat, src.action[i]), f.matmul(tgt.action[i], mat)):
            return False
    return True


# -- grading helpers ---------------------------------------------------------

def _vector_degree(v: np.ndarray, degrees):
    degs = {degrees[i] for i in np.nonzero(v != 0)[0]}
    return degs.pop() if len(degs) == 1 else None


def homogeneous_basis(f: Field, vecs: np.ndarray, degrees) -> Optional[np.ndarray]:
    """A homogeneous basis of the span of ``vecs``; ``None`` if the span is not graded."""
    span = f.span(vecs) if vecs.shape[1] else vecs
    if span.shape[1] == 0:
        return span
    if all(_vector_degree(span[:, c], degrees) is not None for c in range(span.shape[1])):
        return span
    pieces = []
    for gamma in sorted(set(degrees), key=repr):
        outside = [k for k, d in enumerate(degrees) if d != gamma]
        null = f.nullspace(span[outside, :]) if outside else f.eye(span.shape[1])
        if null.shape[1]:
            pieces.append(f.matmul(span, null))
    total = np.concatenate(pieces, axis=1) if pieces else f.zeros(len(degrees), 0)
    if total.shape[1] != span.shape[1]:
        return None
    return total


def _graded_span(m: Module, vecs: np.ndarray) -> np.ndarray:
    f = m.field
    if not m.is_graded:
        return f.span(vecs) if vecs.shape[1] else f.zeros(m.dim, 0)
    hb = homogeneous_basis(f, vecs, m.degrees)
    if hb is None:
        return f.span(vecs)
    return hb


# -- constructions -----------------------------------------------------------

def regular_module(a: GradedAlgebra) -> Module:
    return _module(a, np.array(a.left_mult), a.degrees, f"{a.name}" if a.name else "A")


def submodule(m: Module, vecs) -> Submodule:
    """The submodule generated by the given vectors (columns, or a list of vectors)."""
    f = m.field
    if isinstance(vecs, np.ndarray) and vecs.ndim == 2:
        gens = vecs
    else:
        vecs = list(vecs)
        gens = np.array([f.array(v) for v in vecs], dtype=f.dtype).reshape(len(vecs), m.dim).T
    span = _graded_span(m, gens)
    while True:
        pieces = [span] + [f.matmul(m.action[i], span) for i in range(m.algebra.dim)]
        new = _graded_span(m, np.concatenate(pieces, axis=1))
        if new.shape[1] == span.shape[1]:
            return Submodule(m, span)
        span = new


def checked_submodule(m: Module, basis: np.ndarray) -> Submodule:
    """Wrap an explicit basis, verifying closure under the action."""
    f = m.field
    if basis.shape[1] and f.rank(basis) != basis.shape[1]:
        raise ModuleError("submodule basis is not independent")
    for i in range(m.algebra.dim):
        if not f.contains(basis, f.matmul(m.action[i], basis)):
            raise ModuleError(f"subspace not closed under {m.algebra.labels[i]}", (i,))
    return Submodule(m, basis)


def zero_submodule(m: Module) -> Submodule:
    return Submodule(m, m.field.zeros(m.dim, 0))


def whole(m: Module) -> Submodule:
    return Submodule(m, m.field.eye(m.dim))


def shift(m: Module, beta) -> Module:
    """``M[beta]``: same module, a basis vector of degree ``alpha`` moves to ``alpha * beta``."""
    if not m.is_graded:
        raise ModuleError("shift needs a graded module")
    g = m.algebra.monoid
    beta = g.element(beta)
    return replace(m, degrees=tuple(g.mul(a, beta) for a in m.degrees))


def forget(m: Module) -> Module:
    return replace(m, degrees=None)


def direct_sum(mods: Sequence[Module]) -> Module:
    if not mods:
        raise ModuleError("empty direct sum needs an algebra")
    a = mods[0].algebra
    f = a.field
    action = np.array([block_diag(f, [m.action[i] for m in mods]) for i in range(a.dim)], dtype=f.dtype)
    action = action.reshape(a.dim, sum(m.dim for m in mods), sum(m.dim for m in mods))
    degrees = None
    if all(m.is_graded for m in mods):
        degrees = tuple(d for m in mods for d in m.degrees)
    return _module(a, action, degrees, "+".join(m.name or "?" for m in mods))


def zero_module(a: GradedAlgebra, graded: bool = False) -> Module:
    return _module(a, a.field.zeros(a.dim, 0, 0), () if graded else None, "0")


def direct_sum_submodule(subs: Sequence[Submodule], total: Module) -> Submodule:
    """``sum_k i_k(N_k)`` inside ``total = direct_sum([N_k.parent])``."""
    f = total.field
    blocks = block_diag(f, [s.basis for s in subs])
    return Submodule(total, blocks)


def quotient(m: Module, n: Submodule) -> Tuple[Module, ModuleMap]:
    f = m.field
    q = QuotientSpace(f, m.dim, n.basis)
    acts = [f.matmul(q.projection, f.matmul(m.action[i], q.section)) for i in range(m.algebra.dim)]
    action = np.array(acts, dtype=f.dtype).reshape(m.algebra.dim, q.dim, q.dim)
    degrees = None
    if m.is_graded and n.is_graded():
        degrees = tuple(m.degrees[j] for j in q.kept)
    qm = _module(m.algebra, action, degrees, f"{m.name}/N" if m.name else "")
    return qm, ModuleMap(m, qm, q.projection)


def image(phi: ModuleMap, n: Submodule) -> Submodule:
    f = phi.source.field
    vecs = f.matmul(phi.matrix, n.basis)
    return Submodule(phi.target, _graded_span(phi.target, vecs))


def preimage(phi: ModuleMap, t: Submodule) -> Submodule:
    f = phi.source.field
    src = phi.source
    stacked = np.concatenate([phi.matrix, f.neg(t.basis)], axis=1)
    null = f.nullspace(stacked)
    vecs = null[:src.dim, :]
    return Submodule(src, _graded_span(src, vecs))


def submodule_sum(n1: Submodule, n2: Submodule) -> Submodule:
    if n1.parent is not n2.parent:
        raise ModuleError("submodules of different modules cannot be added")
    vecs = np.concatenate([n1.basis, n2.basis], axis=1)
    return Submodule(n1.parent, _graded_span(n1.parent, vecs))


def kernel(phi: ModuleMap) -> Submodule:
    """Kernel with a homogeneous basis when ``phi`` is a graded map."""
    f = phi.source.field
    src, tgt = phi.source, phi.target
    if src.is_graded and tgt.is_graded:
        pieces = []
        for gamma in sorted(set(src.degrees), key=src.algebra.monoid.sort_key):
            cols = src.degree_indices(gamma)
            rows = [r for r, d in enumerate(tgt.degrees) if d == gamma]
            if rows:
                null = f.nullspace(phi.matrix[np.ix_(rows, cols)])
            else:
                null = f.eye(len(cols))
            if phi.matrix[:, cols].size and not f.is_zero(
                    np.delete(phi.matrix[:, cols], rows, axis=0)):
                raise ModuleError("map is not degree preserving")
            vec = f.zeros(src.dim, null.shape[1])
            vec[cols, :] = null
            pieces.append(vec)
        basis = np.concatenate(pieces, axis=1) if pieces else f.zeros(src.dim, 0)
        return Submodule(src, basis)
    return Submodule(src, f.nullspace(phi.matrix))


def inflate(m: Module, big: GradedAlgebra, projection: np.ndarray) -> Module:
    """Restrict scalars along an algebra surjection ``big -> m.algebra`` given by ``projection``."""
    f = m.field
    n_small, d = m.algebra.dim, m.dim
    acts = f.matmul(projection.T, m.action.reshape(n_small, d * d)).reshape(big.dim, d, d)
    return _module(big, acts, m.degrees if big.is_graded else None, m.name)


def deflate(m: Module, small: GradedAlgebra, section: np.ndarray) -> Module:
    """View a module annihilated by an ideal as a module over the quotient algebra.

    ``section[:, s]`` is a preimage in ``m.algebra`` of quotient basis vector ``s``.
    """
    f = m.field
    acts = [m.act(section[:, s]) for s in range(small.dim)]
    action = np.array(acts, dtype=f.dtype).reshape(small.dim, m.dim, m.dim)
    degrees = m.degrees if small.is_graded else None
    out = _module(small, action, degrees, m.name)
    check_module(out)
    return out


def annihilates(m: Module, ideal_basis: np.ndarray) -> bool:
    f = m.field
    return all(f.is_zero(m.act(ideal_basis[:, c])) for c in range(ideal_basis.shape[1]))


def permute_module(m: Module, alg_perm: Optional[Sequence[int]], mod_perm: Sequence[int],
                   algebra: Optional[GradedAlgebra] = None) -> Module:
    """Reorder algebra and module bases (new index ``i`` is old index ``perm[i]``)."""
    mp = np.asarray(mod_perm)
    act = m.action
    if alg_perm is not None:
        act = act[np.asarray(alg_perm)]
    act = act[:, mp][:, :, mp]
    degrees = tuple(m.degrees[i] for i in mp) if m.degrees is not None else None
    out = Module(algebra if algebra is not None else m.algebra, np.ascontiguousarray(act), degrees, m.name)
    check_module(out)
    return out


def same_module(m1: Module, m2: Module) -> bool:
    """Identical action matrices and degrees (not an isomorphism test)."""
    return (same_algebra(m1.algebra, m2.algebra) and m1.dim == m2.dim
            and m1.field.equal(m1.action, m2.action) and m1.degrees == m2.degrees)


# -- Hom spaces ----------------------------------------------------------------

def hom_space(m: Module, n: Module, graded: bool = False) -> List[np.ndarray]:
    """Basis of ``Hom_A(m, n)`` as ``n.dim x m.dim`` matrices (degree preserving if ``graded``)."""
    f = m.field
    dm, dn = m.dim, n.dim
    if dm == 0 or dn == 0:
        return []
    free = [(r, c) for r in range(dn) for c in range(dm)
            if not graded or n.degrees[r] == m.degrees[c]]
    if not free:
        return []
    cols = np.array([r * dm + c for r, c in free])
    blocks = []
    eye_m, eye_n = f.eye(dm), f.eye(dn)
    for i in range(m.algebra.dim):
        cons = f.sub(f.kron(eye_n, m.action[i].T), f.kron(n.action[i], eye_m))
        blocks.append(cons[:, cols])
    system = np.concatenate(blocks, axis=0)
    null = f.nullspace(system)
    out = []
    for k in range(null.shape[1]):
        full = f.zeros(dn * dm)
        full[cols] = null[:, k]
        out.append(full.reshape(dn, dm))
    return out


def random_hom(m: Module, n: Module, rng: np.random.Generator, graded: bool = False) -> ModuleMap:
    f = m.field
    basis = hom_space(m, n, graded)
    mat = f.zeros(n.dim, m.dim)
    for b in basis:
        mat = f.add(mat, f.smul(f.random(rng, ()), b) if f.p is not None else f.reduce(f.random(rng, ()) * b))
    return ModuleMap(m, n, mat)


def is_isomorphic_bruteforce_free(m: Module, n: Module) -> bool:
    """Isomorphism test by searching the Hom space (small prime fields only)."""
    f = m.field
    if m.dim != n.dim:
        return False
    basis = hom_space(m, n)
    if f.p is None or f.p ** len(basis) > 100_000:
        raise CapabilityError("isomorphism search space too large")
    for coeffs in product(f.elements(), repeat=len(basis)):
        mat = f.zeros(n.dim, m.dim)
        for c, b in zip(coeffs, basis):
            if c:
                mat = f.add(mat, f.smul(c, b))
        if f.rank(mat) == m.dim:
            return True
    return m.dim == 0


# -- radicals and superfluous submodules ---------------------------------------

def radical_submodule(m: Module) -> Submodule:
    """``J M`` for the Jacobson radical ``J`` of the algebra."""
    f = m.field
    jb = m.algebra.radical_basis
    if jb.shape[1] == 0 or m.dim == 0:
        return zero_submodule(m)
    vecs = np.concatenate([m.act(jb[:, c]) for c in range(jb.shape[1])], axis=1)
    if m.is_graded:
        hb = homogeneous_basis(f, vecs, m.degrees)
        if hb is None:
            raise ModuleError("radical of a graded module came out non-graded")
        return Submodule(m, hb)
    return Submodule(m, f.span(vecs))


def top(m: Module) -> Tuple[Module, ModuleMap]:
    return quotient(m, radical_submodule(m))


def is_superfluous(n: Submodule, m: Optional[Module] = None) -> bool:
    """``N`` is superfluous in ``M`` iff ``N`` lies in ``rad M`` (finite-dimensional modules)."""
    m = m if m is not None else n.parent
    if n.parent is not m:
        raise ModuleError("submodule does not belong to this module")
    return m.radical.contains(n)


_ENUMERATION_LIMIT = 50_000


def count_subspaces(p: int, m: int) -> int:
    total = 0
    for r in range(m + 1):
        num = den = 1
        for i in range(r):
            num *= p ** (m - i) - 1
            den *= p ** (i + 1) - 1
        total += num // den
    return total


def all_subspaces(f: Field, m: int):
    """Yield every subspace of ``f^m`` as a matrix of basis columns (RREF enumeration)."""
    if f.p is None:
        raise CapabilityError("subspace enumeration needs a finite field")
    if count_subspaces(f.p, m) > _ENUMERATION_LIMIT:
        raise CapabilityError(f"too many subspaces of F{f.p}^{m} to enumerate")
    for r in range(m + 1):
        for piv in combinations(range(m), r):
            pset = set(piv)
            free = [(i, j) for i in range(r) for j in range(piv[i] + 1, m) if j not in pset]
            for vals in product(range(f.p), repeat=len(free)):
                rows = np.zeros((r, m), dtype=np.int64)
                for i, j in enumerate(piv):
                    rows[i, j] = 1
                for (i, j), v in zip(free, vals):
                    rows[i, j] = v
                yield rows.T


def all_submodules(m: Module, graded: bool = False) -> List[Submodule]:
    f = m.field
    out = []
    for basis in all_subspaces(f, m.dim):
        ok = all(f.contains(basis, f.matmul(m.action[i], basis)) for i in range(m.algebra.dim))
        if not ok:
            continue
        sub = Submodule(m, basis)
        if graded:
            hb = homogeneous_basis(f, basis, m.degrees)
            if hb is None:
                continue
            sub = Submodule(m, hb)
        out.append(sub)
    return out


def is_superfluous_bruteforce(n: Submodule, m: Optional[Module] = None, graded: bool = False) -> bool:
    """Literal definition: every submodule ``T`` with ``N + T = M`` equals ``M``.

    With ``graded`` only graded ``T`` are considered (the graded category).
    """
    m = m if m is not None else n.parent
    if n.parent is not m:
        raise ModuleError("submodule does not belong to this module")
    f = m.field
    for t in _submodule_cache(m, graded):
        if t.dim == m.dim:
            continue
        both = np.concatenate([n.basis, t.basis], axis=1)
        if both.shape[1] and f.rank(both) == m.dim:
            return False
    return True


def _submodule_cache(m: Module, graded: bool) -> List[Submodule]:
    key = "_subs_graded" if graded else "_subs"
    cached = m.__dict__.get(key)
    if cached is None:
        cached = all_submodules(m, graded)
        m.__dict__[key] = cached
    return cached


# -- projectives and simples ---------------------------------------------------

def indecomposable_projective(a: GradedAlgebra, i: int) -> Tuple[Module, np.ndarray]:
    """``A e_i`` as a module, with its embedding matrix into ``A``."""
    f = a.field
    e = a.idempotent_list()[i]
    cols = a.right_matrix(e)
    emb = cols[:, f.column_basis(cols)]
    reg = regular_module(a)
    sub = Submodule(reg, emb)
    mod = sub.to_module()
    return replace(mod, name=f"P({i})"), emb


def simples(a: GradedAlgebra) -> List[Module]:
    out = []
    for i in range(len(a.idempotent_list())):
        p, _ = indecomposable_projective(a, i)
        s, _ = top(p)
        out.append(replace(s, name=f"S({i})"))
    return out


def is_projective(m: Module, graded: bool = False) -> bool:
    from .resolution import projective_cover

    p, _ = projective_cover(m, graded=graded and m.is_graded)
    return p.dim == m.dim

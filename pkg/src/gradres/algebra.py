"""Finite-dimensional (graded) algebras given by structure constants.

Path algebras compose right to left: the product ``p * q`` means "first
``q``, then ``p``", and is nonzero only when ``q`` ends where ``p`` starts.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from functools import cached_property
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .exactla import Field, QuotientSpace
from .monoid import GradedMonoid


class AlgebraError(ValueError):
    """Validation failure; ``witness`` names the offending basis indices."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class CapabilityError(RuntimeError):
    """The requested computation is outside what is implemented (never a wrong answer)."""


@dataclass(frozen=True, eq=False)
class GradedAlgebra:
    field: Field
    mult: np.ndarray  # mult[i, j] = coordinates of b_i * b_j
    unit: np.ndarray
    labels: Tuple[str, ...]
    monoid: Optional[GradedMonoid] = None
    degrees: Optional[tuple] = None
    idempotents: Optional[np.ndarray] = None  # rows are coordinate vectors
    radical_hint: Optional[np.ndarray] = None  # columns span the arrow ideal
    name: str = ""

    @property
    def dim(self) -> int:
        return len(self.labels)

    @property
    def is_graded(self) -> bool:
        return self.degrees is not None

    def basis_vector(self, i: int) -> np.ndarray:
        v = self.field.zeros(self.dim)
        v[i] = self.field.one
        return v

    def vector(self, coeffs: Dict[str, object]) -> np.ndarray:
        """Build an element from ``{label: coefficient}``."""
        v = self.field.zeros(self.dim)
        for lab, c in coeffs.items():
            v[self.labels.index(lab)] = self.field.scalar(c)
        return v

    def mul(self, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        n = self.dim
        f = self.field
        uv = f.matmul(u.reshape(1, n), self.mult.reshape(n, n * n)).reshape(n, n)
        return f.matmul(v.reshape(1, n), uv).reshape(n)

    @cached_property
    def left_mult(self) -> np.ndarray:
        """``left_mult[i]`` is the matrix of ``x -> b_i x``."""
        return np.ascontiguousarray(self.mult.transpose(0, 2, 1))

    @cached_property
    def right_mult(self) -> np.ndarray:
        """``right_mult[j]`` is the matrix of ``x -> x b_j``."""
        return np.ascontiguousarray(self.mult.transpose(1, 2, 0))

    def left_matrix(self, u: np.ndarray) -> np.ndarray:
        n = self.dim
        return self.field.matmul(u.reshape(1, n), self.left_mult.reshape(n, n * n)).reshape(n, n)

    def right_matrix(self, v: np.ndarray) -> np.ndarray:
        n = self.dim
        return self.field.matmul(v.reshape(1, n), self.right_mult.reshape(n, n * n)).reshape(n, n)

    def degree(self, i: int):
        return self.degrees[i]

    def support(self) -> set:
        return set(self.degrees) if self.degrees is not None else set()

    def homogeneous_degree(self, v: np.ndarray):
        """Degree of a nonzero homogeneous element, ``None`` otherwise."""
        degs = {self.degrees[i] for i in np.nonzero(v != 0)[0]}
        return degs.pop() if len(degs) == 1 else None

    def idempotent_list(self) -> List[np.ndarray]:
        if self.idempotents is None:
            raise CapabilityError(
                f"algebra {self.name or '?'} has no recorded primitive idempotents"
            )
        return [self.idempotents[i] for i in range(self.idempotents.shape[0])]

    @cached_property
    def radical_basis(self) -> np.ndarray:
        return radical(self)

    def forget_grading(self) -> "GradedAlgebra":
        return replace(self, monoid=None, degrees=None)

    def __repr__(self):
        return f"GradedAlgebra({self.name or '?'}, dim={self.dim}, field={self.field})"


@dataclass(frozen=True, eq=False)
class IdealData:
    parent: GradedAlgebra
    basis: np.ndarray  # columns

    @property
    def dim(self) -> int:
        return self.basis.shape[1]


# -- validation -------------------------------------------------------------

def check_algebra(a: GradedAlgebra) -> None:
    """Exhaustive structure check; raises :class:`AlgebraError` with a witness."""
    f = a.field
    n = a.dim
    if a.mult.shape != (n, n, n) or a.unit.shape != (n,):
        raise AlgebraError("structure constants have the wrong shape")
    eye = f.eye(n)
    lu = a.left_matrix(a.unit)
    ru = a.right_matrix(a.unit)
    for i in range(n):
        if not f.equal(lu[:, i], eye[:, i]) or not f.equal(ru[:, i], eye[:, i]):
            raise AlgebraError(f"unit law fails at basis element {a.labels[i]!r}", (i,))
    m2 = a.mult.reshape(n * n, n)
    lhs = f.matmul(m2, a.mult.reshape(n, n * n)).reshape(n, n, n, n)
    rhs = f.matmul(m2, a.mult.transpose(1, 0, 2).reshape(n, n * n)).reshape(n, n, n, n)
    rhs = rhs.transpose(2, 0, 1, 3)
    bad = np.argwhere(lhs != rhs)
    if bad.size:
        i, j, k = (int(x) for x in bad[0][:3])
        raise AlgebraError(
            "multiplication is not associative on "
            f"({a.labels[i]}, {a.labels[j]}, {a.labels[k]})",
            (i, j, k),
        )
    if a.is_graded:
        if a.monoid is None or len(a.degrees) != n:
            raise AlgebraError("grading needs a monoid and one degree per basis vector")
        g = a.monoid
        for i in range(n):
            for j in range(n):
                target = g.mul(a.degrees[i], a.degrees[j])
                for k in np.nonzero(a.mult[i, j] != 0)[0]:
                    if a.degrees[k] != target:
                        raise AlgebraError(
                            f"grading violated: {a.labels[i]}*{a.labels[j]} has a "
                            f"component on {a.labels[k]} of degree {a.degrees[k]}, "
                            f"expected {target}",
                            (i, j, int(k)),
                        )
        for k in np.nonzero(a.unit != 0)[0]:
            if a.degrees[k] != g.identity:
                raise AlgebraError("the unit is not homogeneous of neutral degree", (int(k),))
    if a.idempotents is not None:
        es = a.idempotent_list()
        total = f.zeros(n)
        for s, es_ in enumerate(es):
            total = f.add(total, es_)
            for t, et in enumerate(es):
                prod = a.mul(es_, et)
                want = es_ if s == t else f.zeros(n)
                if not f.equal(prod, want):
                    raise AlgebraError(f"idempotents {s}, {t} are not orthogonal idempotents", (s, t))
            if a.is_graded and any(a.degrees[k] != a.monoid.identity for k in np.nonzero(es_ != 0)[0]):
                raise AlgebraError(f"idempotent {s} is not of neutral degree", (s,))
        if not f.equal(total, a.unit):
            raise AlgebraError("idempotents do not sum to the unit")


def build_algebra(field: Field, basis: Sequence[str], unit, structconsts, grading=None,
                  idempotents=None, name: str = "", radical_hint=None) -> GradedAlgebra:
    """Validate and build an algebra.

    ``structconsts`` is either an ``n x n x n`` array or a mapping
    ``{(i, j): coordinate vector}`` (absent pairs multiply to zero).
    ``grading`` is ``(monoid, degrees)``.
    """
    n = len(basis)
    if isinstance(structconsts, dict):
        mult = field.zeros(n, n, n)
        for (i, j), vec in structconsts.items():
            mult[i, j] = field.array(vec)
    else:
        mult = field.array(structconsts)
    unit = field.array(unit)
    monoid = degrees = None
    if grading is not None:
        monoid, degrees = grading
        degrees = tuple(monoid.element(d) for d in degrees)
    idem = field.array(idempotents) if idempotents is not None else None
    if idem is not None and idem.ndim == 1:
        idem = idem.reshape(1, -1)
    alg = GradedAlgebra(field, mult, unit, tuple(basis), monoid, degrees, idem, radical_hint, name)
    check_algebra(alg)
    _freeze(alg)
    return alg


def _freeze(alg: GradedAlgebra) -> None:
    for arr in (alg.mult, alg.unit, alg.idempotents, alg.radical_hint):
        if arr is not None:
            arr.setflags(write=False)


# -- subspace helpers -------------------------------------------------------

def _products(a: GradedAlgebra, left: np.ndarray, right: np.ndarray) -> np.ndarray:
    """Columns spanning ``left * right`` for column-basis matrices."""
    f = a.field
    cols = []
    for i in range(left.shape[1]):
        lm = a.left_matrix(left[:, i])
        cols.append(f.matmul(lm, right))
    if not cols:
        return f.zeros(a.dim, 0)
    return np.concatenate(cols, axis=1)


def ideal_closure(a: GradedAlgebra, gens: np.ndarray) -> np.ndarray:
    """Column basis of the two-sided ideal generated by the columns of ``gens``."""
    f = a.field
    span = f.span(gens) if gens.shape[1] else f.zeros(a.dim, 0)
    while True:
        pieces = [span]
        for i in range(a.dim):
            pieces.append(f.matmul(a.left_mult[i], span))
            pieces.append(f.matmul(a.right_mult[i], span))
        new = f.span(np.concatenate(pieces, axis=1))
        if new.shape[1] == span.shape[1]:
            return span
        span = new


def is_two_sided_ideal(a: GradedAlgebra, basis: np.ndarray) -> bool:
    f = a.field
    for i in range(a.dim):
        if not f.contains(basis, f.matmul(a.left_mult[i], basis)):
            return False
        if not f.contains(basis, f.matmul(a.right_mult[i], basis)):
            return False
    return True


def nilpotency_index(a: GradedAlgebra, basis: np.ndarray) -> Optional[int]:
    """Smallest ``k`` with ``J^k = 0``, or ``None`` if ``J`` is not nilpotent."""
    f = a.field
    if basis.shape[1] == 0:
        return 0
    power = basis
    for k in range(1, a.dim + 2):
        if power.shape[1] == 0:
            return k - 1
        power = f.span(_products(a, basis, power))
    return None


# -- radical ---------------------------------------------------------------

def _certify_radical(a: GradedAlgebra, basis: np.ndarray, semisimple_dim: Optional[int]) -> bool:
    if not is_two_sided_ideal(a, basis):
        return False
    if nilpotency_index(a, basis) is None:
        return False
    if semisimple_dim is not None and a.dim - basis.shape[1] != semisimple_dim:
        return False
    return True


def _trace_form_radical(a: GradedAlgebra) -> np.ndarray:
    f = a.field
    n = a.dim
    traces = f.array([sum(a.left_mult[k][i, i] for i in range(n)) for k in range(n)])
    gram = f.matmul(a.mult.reshape(n * n, n), traces.reshape(n, 1)).reshape(n, n)
    return f.nullspace(gram)


_CORNER_SEARCH_LIMIT = 1000


def _corner_radical(a: GradedAlgebra) -> Optional[np.ndarray]:
    """Radical of a basic split algebra from its primitive idempotents.

    Off-diagonal corners ``e_i A e_j`` lie in the radical; each local corner
    ``e_i A e_i`` contributes the elements ``c - lambda e_i`` that are nilpotent.
    """
    f = a.field
    if f.p is None or f.p > _CORNER_SEARCH_LIMIT:
        return None
    es = a.idempotent_list()
    cols = []
    for i, ei in enumerate(es):
        li = a.left_matrix(ei)
        for j, ej in enumerate(es):
            corner = f.span(f.matmul(li, a.right_matrix(ej)))
            if i != j:
                cols.append(corner)
                continue
            for c in range(corner.shape[1]):
                x = corner[:, c]
                for lam in f.elements():
                    y = f.sub(x, f.smul(lam, ei))
                    if _is_nilpotent_element(a, y):
                        cols.append(y.reshape(-1, 1))
                        break
                else:
                    return None  # corner is not local
    if not cols:
        return f.zeros(a.dim, 0)
    return f.span(np.concatenate(cols, axis=1))


def _is_nilpotent_element(a: GradedAlgebra, y: np.ndarray) -> bool:
    f = a.field
    power = y
    for _ in range(a.dim + 1):
        if f.is_zero(power):
            return True
        power = a.mul(power, y)
    return f.is_zero(power)


def radical(a: GradedAlgebra) -> np.ndarray:
    """Column basis of the Jacobson radical.

    Tries, in order: the recorded arrow ideal of a path algebra, the trace
    form (characteristic 0 or ``p > dim``), and the idempotent corners of a
    basic split algebra.  Every candidate is certified as a nilpotent ideal
    with semisimple quotient before it is returned.
    """
    f = a.field
    n_idem = a.idempotents.shape[0] if a.idempotents is not None else None
    if a.radical_hint is not None:
        hint = f.span(a.radical_hint) if a.radical_hint.shape[1] else a.radical_hint
        if n_idem is not None and _certify_radical(a, hint, n_idem):
            return hint
    if f.p is None or f.p > a.dim:
        cand = _trace_form_radical(a)
        # the trace-form criterion makes A/J semisimple by itself
        if _certify_radical(a, cand, None):
            return cand
    if a.idempotents is not None:
        cand = _corner_radical(a)
        if cand is not None and _certify_radical(a, cand, n_idem):
            return cand
    raise CapabilityError(
        f"cannot compute the radical of {a!r}: needs a path presentation, "
        "char 0 / p > dim, or primitive idempotents of a basic split algebra over a small prime field"
    )


# -- constructions -----------------------------------------------------------

def quotient_by_ideal(a: GradedAlgebra, gens) -> Tuple[GradedAlgebra, np.ndarray, IdealData]:
    """``A / I`` for the two-sided ideal generated by ``gens`` (vectors)."""
    f = a.field
    gen_mat = f.array(gens).reshape(-1, a.dim).T if len(gens) else f.zeros(a.dim, 0)
    ideal = ideal_closure(a, gen_mat)
    q = QuotientSpace(f, a.dim, ideal)
    k = q.dim
    mult = f.zeros(k, k, k)
    for s in range(k):
        for t in range(k):
            mult[s, t] = q.project(a.mult[q.kept[s], q.kept[t]])
    unit = q.project(a.unit)
    grading = None
    if a.is_graded and all(a.homogeneous_degree(gen_mat[:, c]) is not None
                           for c in range(gen_mat.shape[1]) if not f.is_zero(gen_mat[:, c])):
        grading = (a.monoid, [a.degrees[j] for j in q.kept])
    idem = None
    if a.idempotents is not None:
        imgs = [q.project(e) for e in a.idempotent_list()]
        imgs = [v for v in imgs if not f.is_zero(v)]
        idem = np.array(imgs, dtype=f.dtype).reshape(len(imgs), k) if imgs else None
    hint = None
    if a.radical_hint is not None:
        # images of the radical span the radical of a quotient
        hint = f.matmul(q.projection, a.radical_hint)
    labels = [a.labels[j] for j in q.kept]
    quot = build_algebra(f, labels, unit, mult, grading, idem,
                         name=f"{a.name}/I" if a.name else "", radical_hint=hint)
    return quot, q.projection, IdealData(a, ideal)


def opposite(a: GradedAlgebra) -> GradedAlgebra:
    mult = np.ascontiguousarray(a.mult.transpose(1, 0, 2))
    monoid = a.monoid
    if monoid is not None and monoid.kind == "table":
        monoid = replace(monoid, mul_table=tuple(zip(*monoid.mul_table)))
    op = GradedAlgebra(a.field, mult, a.unit, a.labels, monoid, a.degrees,
                       a.idempotents, a.radical_hint, f"{a.name}^op" if a.name else "")
    check_algebra(op)
    return op


def is_opposite_of(b: GradedAlgebra, a: GradedAlgebra) -> bool:
    return b.dim == a.dim and b.field == a.field and a.field.equal(b.mult, a.mult.transpose(1, 0, 2))


def same_algebra(a: GradedAlgebra, b: GradedAlgebra) -> bool:
    return a is b or (a.dim == b.dim and a.field == b.field and a.field.equal(a.mult, b.mult))


def permute_algebra(a: GradedAlgebra, perm: Sequence[int]) -> GradedAlgebra:
    """Reorder the basis: new basis vector ``i`` is old basis vector ``perm[i]``."""
    p = np.asarray(perm)
    mult = a.mult[np.ix_(p, p, p)]
    degrees = tuple(a.degrees[i] for i in p) if a.degrees is not None else None
    idem = a.idempotents[:, p] if a.idempotents is not None else None
    hint = a.radical_hint[p, :] if a.radical_hint is not None else None
    out = GradedAlgebra(a.field, np.ascontiguousarray(mult), a.unit[p], tuple(a.labels[i] for i in p),
                        a.monoid, degrees, idem, hint, a.name)
    check_algebra(out)
    return out


def field_algebra(field: Field) -> GradedAlgebra:
    one = [field.one]
    return build_algebra(field, ["1"], one, [[[1]]], (GradedMonoid.natural(), [0]),
                         idempotents=[one], name=str(field))


# -- quivers -----------------------------------------------------------------

@dataclass(frozen=True)
class QuiverPresentation:
    vertices: Tuple[str, ...]
    arrows: Tuple[Tuple[str, str, str], ...]  # (source, target, name)
    relations: Tuple[Tuple[Tuple[Tuple[str, ...], object], ...], ...] = ()
    truncation_degree: Optional[int] = None

    @classmethod
    def make(cls, vertices, arrows, relations=(), truncate=None) -> "QuiverPresentation":
        if isinstance(vertices, int):
            vertices = [str(v) for v in range(vertices)]
        verts = tuple(str(v) for v in vertices)
        arr = tuple((str(s), str(t), str(name)) for s, t, name in arrows)
        rels = []
        for rel in relations:
            if isinstance(rel, dict):
                pairs = tuple((tuple(p), c) for p, c in zip(rel["paths"], rel.get("coeffs", [1] * len(rel["paths"]))))
            else:
                pairs = tuple((tuple(p), c) for p, c in rel)
            rels.append(pairs)
        return cls(verts, arr, tuple(rels), truncate)


_DEFAULT_PATH_CAP = 30


def path_algebra(q: QuiverPresentation, field: Field, name: str = "") -> GradedAlgebra:
    """Path algebra modulo homogeneous admissible relations, graded by path length.

    A path is a tuple of arrow indices read as a product, so ``(a, b)`` is
    ``a * b``: first ``b``, then ``a``.
    """
    f = field
    vidx = {v: i for i, v in enumerate(q.vertices)}
    if len(vidx) != len(q.vertices):
        raise AlgebraError("duplicate vertex names")
    names = [name_ for _, _, name_ in q.arrows]
    if len(set(names)) != len(names):
        raise AlgebraError("duplicate arrow names")
    aidx = {nm: i for i, nm in enumerate(names)}
    src = []
    tgt = []
    for s, t, nm in q.arrows:
        if s not in vidx or t not in vidx:
            raise AlgebraError(f"arrow {nm!r} uses an unknown vertex")
        src.append(vidx[s])
        tgt.append(vidx[t])

    def p_source(p):
        return src[p[-1]]

    def p_target(p):
        return tgt[p[0]]

    def composable(p, r):  # p * r defined
        return src[p[-1]] == tgt[r[0]]

    relations = []
    for rel in q.relations:
        terms = []
        for path, c in rel:
            try:
                ap = tuple(aidx[x] for x in path)
            except KeyError as exc:
                raise AlgebraError(f"relation uses unknown arrow {exc.args[0]!r}") from None
            if len(ap) < 2:
                raise AlgebraError("relations must lie in the square of the arrow ideal", path)
            if any(not composable(ap[k:k + 1], ap[k + 1:k + 2]) for k in range(len(ap) - 1)):
                raise AlgebraError(f"relation term {path} is not a path", path)
            terms.append((ap, f.scalar(c)))
        terms = [(p, c) for p, c in terms if c != 0]
        if not terms:
            continue
        lengths = {len(p) for p, _ in terms}
        ends = {(p_source(p), p_target(p)) for p, _ in terms}
        if len(ends) != 1:
            raise AlgebraError("relation combines non-parallel paths", rel)
        if len(lengths) != 1:
            raise AlgebraError("only length-homogeneous relations are supported", rel)
        relations.append((terms, lengths.pop(), ends.pop()))

    cap = q.truncation_degree if q.truncation_degree is not None else _DEFAULT_PATH_CAP
    # paths[d] lists all paths of length d >= 1
    paths: Dict[int, List[tuple]] = {1: [(i,) for i in range(len(names))]}
    quotients: Dict[int, QuotientSpace] = {}
    index: Dict[int, Dict[tuple, int]] = {}
    d = 1
    while True:
        plist = paths[d]
        index[d] = {p: k for k, p in enumerate(plist)}
        if q.truncation_degree is not None and d > q.truncation_degree:
            quotients[d] = QuotientSpace(f, len(plist), f.eye(len(plist)))
        else:
            gens = []
            for terms, ln, (s, t) in relations:
                if ln > d:
                    continue
                for d1 in range(d - ln + 1):
                    d2 = d - ln - d1
                    lefts = [()] if d1 == 0 else [u for u in paths[d1] if p_source(u) == t]
                    rights = [()] if d2 == 0 else [w for w in paths[d2] if p_target(w) == s]
                    for u in lefts:
                        for w in rights:
                            vec = f.zeros(len(plist))
                            for p, c in terms:
                                vec[index[d][u + p + w]] = f.add(vec[index[d][u + p + w]], c)
                            gens.append(vec)
            sub = np.array(gens, dtype=f.dtype).T if gens else f.zeros(len(plist), 0)
            quotients[d] = QuotientSpace(f, len(plist), sub)
        if quotients[d].dim == 0:
            break
        if d >= cap:
            raise AlgebraError(
                f"quotient is still nonzero in path length {d}; the algebra looks infinite-dimensional"
            )
        paths[d + 1] = [(a,) + p for p in plist for a in range(len(names)) if src[a] == p_target(p)]
        if not paths[d + 1]:
            index[d + 1] = {}
            quotients[d + 1] = QuotientSpace(f, 0, f.zeros(0, 0))
            d += 1
            break
        d += 1
    top = d - 1  # largest length with nonzero quotient

    nv = len(q.vertices)
    basis: List[tuple] = [("v", i) for i in range(nv)]
    degrees = [0] * nv
    offset = {}
    for ln in range(1, top + 1):
        offset[ln] = len(basis)
        for kept in quotients[ln].kept:
            basis.append(("p", paths[ln][kept]))
            degrees.append(ln)
    n = len(basis)

    def coords(path) -> np.ndarray:
        vec = f.zeros(n)
        ln = len(path)
        if ln > top:
            return vec
        qs = quotients[ln]
        col = f.zeros(len(paths[ln]))
        col[index[ln][path]] = f.one
        vec[offset[ln]:offset[ln] + qs.dim] = qs.project(col)
        return vec

    mult = f.zeros(n, n, n)
    for i, (ki, xi) in enumerate(basis):
        for j, (kj, xj) in enumerate(basis):
            if ki == "v" and kj == "v":
                if xi == xj:
                    mult[i, j, i] = f.one
            elif ki == "v":
                if p_target(xj) == xi:
                    mult[i, j, j] = f.one
            elif kj == "v":
                if p_source(xi) == xj:
                    mult[i, j, i] = f.one
            elif composable(xi, xj):
                mult[i, j] = coords(xi + xj)
    labels = [f"e{q.vertices[x]}" if k == "v" else "*".join(names[a] for a in x) for k, x in basis]
    unit = f.zeros(n)
    unit[:nv] = f.one
    idem = f.zeros(nv, n)
    for i in range(nv):
        idem[i, i] = f.one
    hint = f.zeros(n, n - nv)
    for c in range(n - nv):
        hint[nv + c, c] = f.one
    alg = build_algebra(f, labels, unit, mult, (GradedMonoid.natural(), degrees), idem,
                        name=name, radical_hint=hint)
    alg.__dict__["quiver"] = q
    return alg


# -- Gamma-algebras ----------------------------------------------------------

@dataclass(frozen=True, eq=False)
class GammaAlgebra:
    """An algebra with a right monoid action ``b -> b^gamma`` by unital endomorphisms.

    For the naturals (and N^d) only generator matrices are stored;
    ``sigma(gamma)`` assembles the rest.  Matrices act on coordinate columns.
    """

    algebra: GradedAlgebra
    monoid: GradedMonoid
    generators: Tuple[np.ndarray, ...]
    name: str = ""

    def sigma(self, gamma) -> np.ndarray:
        f = self.algebra.field
        if self.monoid.kind == "natural":
            return f.power(self.generators[0], int(gamma))
        if self.monoid.kind == "natural_power":
            out = f.eye(self.algebra.dim)
            for g, k in zip(self.generators, gamma):
                out = f.matmul(f.power(g, int(k)), out)
            return out
        return self.generators[gamma]

    def act(self, b: np.ndarray, gamma) -> np.ndarray:
        return self.algebra.field.matmul(self.sigma(gamma), b)


def _check_endomorphism(b: GradedAlgebra, s: np.ndarray, label) -> None:
    f = b.field
    n = b.dim
    if s.shape != (n, n):
        raise AlgebraError(f"action matrix for {label} has shape {s.shape}, expected {(n, n)}")
    if not f.equal(f.matmul(s, b.unit), b.unit):
        raise AlgebraError(f"action of {label} is not unital", (label,))
    for i in range(n):
        si = s[:, i]
        for j in range(n):
            lhs = f.matmul(s, b.mult[i, j])
            rhs = b.mul(si, s[:, j])
            if not f.equal(lhs, rhs):
                raise AlgebraError(
                    f"action of {label} is not multiplicative on ({b.labels[i]}, {b.labels[j]})",
                    (label, i, j),
                )


def make_gamma_algebra(b: GradedAlgebra, monoid: GradedMonoid, action, name: str = "") -> GammaAlgebra:
    """Validate an action given by generator matrices (N, N^d) or one matrix per element (table)."""
    f = b.field
    if monoid.kind == "natural" and not isinstance(action, (list, tuple)):
        action = [action]
    elif monoid.kind == "natural" and len(action) and np.ndim(action[0]) == 1:
        action = [action]
    mats = tuple(f.array(m) for m in action)
    for m in mats:
        m.setflags(write=False)
    expected = {"natural": 1, "natural_power": monoid.d}.get(monoid.kind, len(monoid.elements))
    if len(mats) != expected:
        raise AlgebraError(f"expected {expected} action matrices, got {len(mats)}")
    for k, s in enumerate(mats):
        _check_endomorphism(b, s, monoid.label(k) if monoid.kind == "table" else f"generator {k}")
    if monoid.kind == "natural_power":
        for s in range(len(mats)):
            for t in range(s):
                if not f.equal(f.matmul(mats[s], mats[t]), f.matmul(mats[t], mats[s])):
                    raise AlgebraError(f"generators {t} and {s} of N^d do not commute", (t, s))
    if monoid.kind == "table":
        monoid.check_table()
        e = monoid.identity_index
        if not f.equal(mats[e], f.eye(b.dim)):
            raise AlgebraError("the neutral element must act as the identity", (e,))
        n = len(monoid.elements)
        for g1 in range(n):
            for g2 in range(n):
                # right action: b^(g1 g2) = (b^g1)^g2
                want = f.matmul(mats[g2], mats[g1])
                if not f.equal(mats[monoid.mul(g1, g2)], want):
                    raise AlgebraError(
                        f"action law fails for ({monoid.label(g1)}, {monoid.label(g2)})", (g1, g2)
                    )
    return GammaAlgebra(b, monoid, mats, name or b.name)


def permute_gamma_algebra(g: GammaAlgebra, perm: Sequence[int]) -> GammaAlgebra:
    p = np.asarray(perm)
    b = permute_algebra(g.algebra, p)
    mats = [m[np.ix_(p, p)] for m in g.generators]
    return make_gamma_algebra(b, g.monoid, mats, g.name)

"""Exact linear algebra over prime fields and the rationals.

Matrices are plain numpy arrays: ``int64`` with entries in ``[0, p)`` for a
prime field, ``object`` arrays of :class:`fractions.Fraction` for the
rationals.  A :class:`Field` knows how to build, reduce and multiply them.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

_INT64_LIMIT = 2**63 - 1
# components are only worth finding on matrices at least this large
_SPLIT_THRESHOLD = 40_000
_FLOAT_EXACT = 2**52  # integer sums below this are exact in float64
_BLAS_MIN_WORK = 1 << 16


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class Field:
    """A prime field ``F_p`` (``p`` set) or the rationals (``p is None``)."""

    p: Optional[int] = None

    def __post_init__(self):
        if self.p is not None:
            if not isinstance(self.p, (int, np.integer)) or not _is_prime(int(self.p)):
                raise ValueError(f"field characteristic must be prime, got {self.p!r}")
            if self.p >= 2**31:
                raise ValueError("prime fields are limited to p < 2**31")

    @classmethod
    def prime(cls, p: int) -> "Field":
        return cls(int(p))

    @classmethod
    def rationals(cls) -> "Field":
        return cls(None)

    @property
    def is_prime_field(self) -> bool:
        return self.p is not None

    @property
    def characteristic(self) -> int:
        return 0 if self.p is None else self.p

    @property
    def dtype(self):
        return np.int64 if self.p is not None else object

    def __str__(self):
        return f"F{self.p}" if self.p is not None else "Q"

    # -- construction -------------------------------------------------
    def scalar(self, x):
        if self.p is None:
            return Fraction(x)
        if isinstance(x, str):
            x = Fraction(x)
        if isinstance(x, Fraction):
            return int(x.numerator * pow(x.denominator, -1, self.p) % self.p)
        return int(x) % self.p

    def array(self, data) -> np.ndarray:
        """Coerce nested lists / arrays into a reduced array of this field."""
        if isinstance(data, np.ndarray) and data.dtype == self.dtype and self.p is not None:
            return np.mod(data, self.p)
        raw = np.array(data, dtype=object)
        if self.p is None:
            flat = [Fraction(x) for x in raw.ravel()]
            out = np.empty(raw.shape, dtype=object)
            for k, v in enumerate(flat):
                out.flat[k] = v
            return out
        flat = [self.scalar(x) for x in raw.ravel()]
        return np.array(flat, dtype=np.int64).reshape(raw.shape)

    def zeros(self, *shape) -> np.ndarray:
        if len(shape) == 1 and isinstance(shape[0], tuple):
            shape = shape[0]
        if self.p is None:
            out = np.empty(shape, dtype=object)
            out.fill(Fraction(0))
            return out
        return np.zeros(shape, dtype=np.int64)

    def eye(self, n: int) -> np.ndarray:
        out = self.zeros(n, n)
        for i in range(n):
            out[i, i] = self.one
        return out

    @property
    def one(self):
        return Fraction(1) if self.p is None else 1

    @property
    def zero(self):
        return Fraction(0) if self.p is None else 0

    def elements(self):
        """All field elements (prime fields only)."""
        if self.p is None:
            raise ValueError("the rationals are infinite")
        return range(self.p)

    def random(self, rng: np.random.Generator, shape) -> np.ndarray:
        if self.p is None:
            vals = rng.integers(-3, 4, size=shape)
            return self.array(vals)
        return rng.integers(0, self.p, size=shape).astype(np.int64)

    # -- arithmetic ---------------------------------------------------
    def reduce(self, a: np.ndarray) -> np.ndarray:
        return np.mod(a, self.p) if self.p is not None else a

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.p is None:
            return 1 / Fraction(x)
        return pow(int(x), -1, self.p)

    def neg(self, a):
        return self.reduce(-a)

    def add(self, a, b):
        return self.reduce(a + b)

    def sub(self, a, b):
        return self.reduce(a - b)

    def smul(self, c, a):
        return self.reduce(self.scalar(c) * a)

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.p is None:
            if a.shape[-1] == 0:
                return self.zeros(a.shape[0], b.shape[-1]) if b.ndim == 2 else self.zeros(a.shape[0])
            return a.dot(b)
        inner = a.shape[-1]
        bound = inner * (self.p - 1) ** 2
        if bound < _FLOAT_EXACT and a.size * (b.shape[-1] if b.ndim == 2 else 1) >= _BLAS_MIN_WORK:
            prod = a.astype(np.float64) @ b.astype(np.float64)
            return np.mod(np.rint(prod).astype(np.int64), self.p)
        if bound < _INT64_LIMIT:
            return np.mod(a @ b, self.p)
        out = a.astype(object).dot(b.astype(object)) % self.p
        return out.astype(np.int64)

    def dot(self, *mats: np.ndarray) -> np.ndarray:
        out = mats[0]
        for m in mats[1:]:
            out = self.matmul(out, m)
        return out

    def power(self, a: np.ndarray, n: int) -> np.ndarray:
        out = self.eye(a.shape[0])
        base = a
        while n:
            if n & 1:
                out = self.matmul(out, base)
            base = self.matmul(base, base)
            n >>= 1
        return out

    def kron(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Kronecker product; block ``(i, j)`` of the result is ``a[i, j] * b``."""
        if self.p is None:
            ra, ca = a.shape
            rb, cb = b.shape
            out = self.zeros(ra * rb, ca * cb)
            for i in range(ra):
                for j in range(ca):
                    if a[i, j] != 0:
                        out[i * rb:(i + 1) * rb, j * cb:(j + 1) * cb] = a[i, j] * b
            return out
        return np.mod(np.kron(a, b), self.p)

    def is_zero(self, a: np.ndarray) -> bool:
        return not np.any(a != 0)

    def equal(self, a: np.ndarray, b: np.ndarray) -> bool:
        return a.shape == b.shape and not np.any(a != b)

    # -- elimination --------------------------------------------------
    def rref(self, m: np.ndarray):
        """Return ``(reduced, pivot_cols, rank)`` for ``m``."""
        a = np.array(m, dtype=self.dtype, copy=True)
        if a.ndim != 2:
            raise ValueError("rref expects a 2-d matrix")
        rows, cols = a.shape
        pivots = []
        r = 0
        p = self.p
        for c in range(cols):
            if r == rows:
                break
            nz = np.nonzero(a[r:, c])[0]
            if nz.size == 0:
                continue
            i = r + int(nz[0])
            if i != r:
                a[[r, i]] = a[[i, r]]
            lead = a[r, c]
            if lead != 1:
                a[r, c:] = self.reduce(a[r, c:] * self.inv(lead))
            col = a[:, c].copy()
            col[r] = 0
            others = np.nonzero(col)[0]
            if others.size:
                if p == 2:
                    a[others, c:] ^= a[r, c:]
                else:
                    upd = a[others, c:] - np.outer(col[others], a[r, c:])
                    a[others, c:] = self.reduce(upd)
            pivots.append(c)
            r += 1
        return a, pivots, r

    def rank(self, m: np.ndarray) -> int:
        if m.size == 0:
            return 0
        if self.p == 2 and m.size >= _SPLIT_THRESHOLD:
            return _rank_f2_packed(m)
        if m.size >= _SPLIT_THRESHOLD:
            return sum(self.rank(block) for block in _components(m))
        return self.rref(m)[2]

    def nullspace(self, m: np.ndarray) -> np.ndarray:
        """Columns form a basis of ``{v : m v = 0}``."""
        rows, cols = m.shape
        red, pivots, rank = self.rref(m)
        pivset = set(pivots)
        free = [c for c in range(cols) if c not in pivset]
        out = self.zeros(cols, len(free))
        for k, f in enumerate(free):
            out[f, k] = self.one
            for i, pc in enumerate(pivots):
                out[pc, k] = self.reduce(-red[i, f])
        return out

    def solve(self, m: np.ndarray, b: np.ndarray):
        """One solution ``x`` of ``m x = b`` (``b`` a vector or a matrix), else ``None``."""
        vector = b.ndim == 1
        bb = b.reshape(-1, 1) if vector else b
        if bb.shape[0] != m.shape[0]:
            raise ValueError(f"dimension mismatch: matrix has {m.shape[0]} rows, rhs has {bb.shape[0]}")
        cols = m.shape[1]
        aug = np.concatenate([np.asarray(m, dtype=self.dtype), np.asarray(bb, dtype=self.dtype)], axis=1)
        red, pivots, rank = self.rref(aug)
        if pivots and pivots[-1] >= cols:
            return None
        x = self.zeros(cols, bb.shape[1])
        for i, pc in enumerate(pivots):
            x[pc] = red[i, cols:]
        return x[:, 0] if vector else x

    def inverse(self, m: np.ndarray) -> np.ndarray:
        n = m.shape[0]
        if m.shape != (n, n):
            raise ValueError("inverse of a non-square matrix")
        x = self.solve(m, self.eye(n))
        if x is None or self.rank(m) < n:
            raise ValueError("matrix is singular")
        return x

    def column_basis(self, m: np.ndarray) -> list:
        """Indices of a maximal independent set of columns (leftmost first)."""
        return self.rref(m)[1]

    def span(self, m: np.ndarray) -> np.ndarray:
        """Independent columns spanning the column space of ``m``."""
        if m.shape[1] == 0:
            return self.zeros(m.shape[0], 0)
        return m[:, self.column_basis(m)]

    def contains(self, basis: np.ndarray, vecs: np.ndarray) -> bool:
        """Whether every column of ``vecs`` lies in the column space of ``basis``."""
        if vecs.shape[1] == 0:
            return True
        if basis.shape[1] == 0:
            return self.is_zero(vecs)
        return self.rank(np.concatenate([basis, vecs], axis=1)) == self.rank(basis)


def _rank_f2_packed(m: np.ndarray) -> int:
    """Rank over F2 with rows packed into 64-bit words."""
    rows, cols = m.shape
    if rows > cols:
        m = m.T
        rows, cols = cols, rows
    bits = np.packbits(np.asarray(m, dtype=np.uint8) & 1, axis=1, bitorder="little")
    pad = (-bits.shape[1]) % 8
    if pad:
        bits = np.concatenate([bits, np.zeros((rows, pad), dtype=np.uint8)], axis=1)
    words = np.ascontiguousarray(bits).view(np.uint64)
    rank = 0
    for c in range(cols):
        if rank == rows:
            break
        w, b = divmod(c, 64)
        mask = np.uint64(1) << np.uint64(b)
        hits = np.nonzero(words[rank:, w] & mask)[0]
        if hits.size == 0:
            continue
        piv = rank + int(hits[0])
        if piv != rank:
            words[[rank, piv]] = words[[piv, rank]]
        below = rank + 1 + np.nonzero(words[rank + 1:, w] & mask)[0]
        if below.size:
            words[below, w:] ^= words[rank, w:]
        rank += 1
    return rank


def _components(m: np.ndarray):
    """Split ``m`` into the blocks of connected components of its nonzero pattern."""
    rows, cols = np.nonzero(m != 0)
    if rows.size == 0:
        return []
    nr, nc = m.shape
    graph = coo_matrix((np.ones(rows.size), (rows, nr + cols)), shape=(nr + nc, nr + nc))
    _, labels = connected_components(graph, directed=False)
    row_lab = labels[:nr]
    col_lab = labels[nr:]
    blocks = []
    for lab in np.unique(labels[nr + cols]):
        ri = np.nonzero(row_lab == lab)[0]
        ci = np.nonzero(col_lab == lab)[0]
        blocks.append(m[np.ix_(ri, ci)])
    return blocks


def block_diag(field: Field, blocks: Sequence[np.ndarray]) -> np.ndarray:
    r = sum(b.shape[0] for b in blocks)
    c = sum(b.shape[1] for b in blocks)
    out = field.zeros(r, c)
    i = j = 0
    for b in blocks:
        out[i:i + b.shape[0], j:j + b.shape[1]] = b
        i += b.shape[0]
        j += b.shape[1]
    return out


class QuotientSpace:
    """The quotient ``V / W`` of ``V = field^n`` by the column space of ``sub``.

    The complement is spanned by standard basis vectors (``section``), so a
    homogeneous ambient basis yields a homogeneous quotient basis.
    """

    def __init__(self, field: Field, n: int, sub: np.ndarray):
        self.field = field
        self.n = n
        if sub.shape[1]:
            red, pivots, rank = field.rref(sub.T)
            red = red[:rank]
        else:
            red, pivots, rank = field.zeros(0, n), [], 0
        self.sub_rows = red
        self.pivots = pivots
        pivset = set(pivots)
        self.kept = [j for j in range(n) if j not in pivset]
        k = len(self.kept)
        sec = field.zeros(n, k)
        for col, j in enumerate(self.kept):
            sec[j, col] = field.one
        self.section = sec
        proj = field.zeros(k, n)
        for col, j in enumerate(self.kept):
            proj[col, j] = field.one
        if rank:
            # v - sum_i v[piv_i] * row_i, read off on the kept coordinates
            proj[:, pivots] = field.reduce(-red[:, self.kept].T)
        self.projection = proj

    @property
    def dim(self) -> int:
        return len(self.kept)

    def project(self, v: np.ndarray) -> np.ndarray:
        return self.field.matmul(self.projection, v)

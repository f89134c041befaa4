"""Small algebras and modules used by the examples, tests and the acceptance suite.

All quiver fixtures are graded by path length (monoid N).
"""
from __future__ import annotations

from typing import List

import numpy as np

from .algebra import (
    GammaAlgebra,
    GradedAlgebra,
    QuiverPresentation,
    field_algebra,
    make_gamma_algebra,
    path_algebra,
)
from .exactla import Field
from .modules import Module, quotient, regular_module, simples, submodule
from .monoid import GradedMonoid
from .resolution import free_module
from .smash import SmashAlgebra, smash


def truncated_polynomial(n: int, p: int = 2, var: str = "x") -> GradedAlgebra:
    """``k[x]/(x^n)``, one loop with the relation ``x^n = 0``."""
    rel = [((tuple([var] * n), 1),)]
    q = QuiverPresentation.make(["1"], [("1", "1", var)], rel)
    return path_algebra(q, Field(p), f"D{n}" if var == "x" else f"k[{var}]/({var}^{n})")


def d2(p: int = 2) -> GradedAlgebra:
    return truncated_polynomial(2, p)


def d3(p: int = 2) -> GradedAlgebra:
    return truncated_polynomial(3, p)


def a2(p: int = 2) -> GradedAlgebra:
    """Path algebra of ``1 --a--> 2``: basis ``e1, e2, a``."""
    q = QuiverPresentation.make(["1", "2"], [("1", "2", "a")])
    return path_algebra(q, Field(p), "A2")


def a3_zero_relation(p: int = 2) -> GradedAlgebra:
    """``1 --a--> 2 --b--> 3`` with ``b a = 0``."""
    q = QuiverPresentation.make(["1", "2", "3"], [("1", "2", "a"), ("2", "3", "b")],
                                [((("b", "a"), 1),)])
    return path_algebra(q, Field(p), "A3/ba")


def ground(p: int = 2) -> GradedAlgebra:
    return field_algebra(Field(p))


def twisting_algebra(p: int, scale: int) -> GammaAlgebra:
    """``B = F_p[y]/(y^2)`` with ``N`` acting through ``sigma(y) = scale * y``."""
    b = truncated_polynomial(2, p, var="y")
    f = b.field
    sig = f.zeros(2, 2)
    sig[0, 0] = f.one
    sig[1, 1] = f.scalar(scale)
    return make_gamma_algebra(b, GradedMonoid.natural(), sig, name=f"B(sigma y = {scale}y)")


def quantum_plane(scale: int = 2, p: int = 5) -> SmashAlgebra:
    """``k[x]/(x^2) # k[y]/(y^2)`` with ``y x = scale * x y``."""
    return smash(truncated_polynomial(2, p), twisting_algebra(p, scale), name=f"QP({scale})")


def simple(a: GradedAlgebra, i: int = 0) -> Module:
    return simples(a)[i]


def fixture_modules(a: GradedAlgebra) -> List[Module]:
    """Regular module and simples."""
    return [regular_module(a)] + simples(a)


def random_graded_module(a: GradedAlgebra, rng: np.random.Generator, max_dim: int = 4,
                         max_shift: int = 2, max_summands: int = 2, tries: int = 200) -> Module:
    """A random graded quotient of a random graded projective with dimension in ``1..max_dim``."""
    f = a.field
    nid = len(a.idempotent_list())
    for _ in range(tries):
        k = int(rng.integers(1, max_summands + 1))
        summ = [(int(rng.integers(0, nid)), int(rng.integers(0, max_shift + 1))) for _ in range(k)]
        p, _ = free_module(a, summ, graded=True)
        gens = []
        for _ in range(int(rng.integers(0, 3))):
            degs = sorted(set(p.degrees))
            d = degs[int(rng.integers(0, len(degs)))]
            v = f.zeros(p.dim)
            for j in p.degree_indices(d):
                v[j] = f.random(rng, ())
            gens.append(v)
        sub = submodule(p, gens) if gens else submodule(p, [])
        q, _ = quotient(p, sub)
        if 1 <= q.dim <= max_dim:
            q.__dict__  # plain dataclass; name it for reports
            return Module(q.algebra, q.action, q.degrees, f"rand{q.dim}")
    raise RuntimeError("could not draw a module of the requested size")


def random_modules(a: GradedAlgebra, count: int, seed: int, max_dim: int = 4) -> List[Module]:
    rng = np.random.default_rng(seed)
    return [random_graded_module(a, rng, max_dim) for _ in range(count)]


def permutation_pair(a: GradedAlgebra, rng: np.random.Generator):
    """A random basis permutation of ``a`` (kept as an explicit index list)."""
    return [int(i) for i in rng.permutation(a.dim)]

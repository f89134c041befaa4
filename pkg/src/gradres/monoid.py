"""Grading monoids: the naturals, N^d, and finite multiplication tables."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Any, FrozenSet, Tuple


class MonoidError(ValueError):
    pass


@dataclass(frozen=True)
class OrderReport:
    is_ordered: bool
    e_is_least: bool
    well_founded: bool
    violations: Tuple[Tuple[str, tuple], ...] = ()

    @property
    def ok(self) -> bool:
        return self.is_ordered and self.e_is_least and self.well_founded


@dataclass(frozen=True)
class GradedMonoid:
    """A grading monoid.

    Elements are ``int`` for ``natural``, tuples of ints for
    ``natural_power`` and indices into ``elements`` for ``table``.
    """

    kind: str
    d: int = 1
    order_kind: str = "componentwise"
    elements: Tuple[str, ...] = ()
    identity_index: int = 0
    mul_table: Tuple[Tuple[int, ...], ...] = ()
    order: FrozenSet[Tuple[int, int]] = field(default_factory=frozenset)

    def __post_init__(self):
        if self.kind not in ("natural", "natural_power", "table"):
            raise MonoidError(f"unknown monoid kind {self.kind!r}")
        if self.kind == "table":
            n = len(self.elements)
            if len(self.mul_table) != n or any(len(r) != n for r in self.mul_table):
                raise MonoidError("multiplication table must be n x n")
            if any(not 0 <= x < n for r in self.mul_table for x in r):
                raise MonoidError("multiplication table entries out of range")
            if not 0 <= self.identity_index < n:
                raise MonoidError("identity index out of range")
        if self.kind == "natural_power" and self.order_kind not in ("componentwise", "none"):
            raise MonoidError(f"unknown order kind {self.order_kind!r}")

    # -- constructors -------------------------------------------------
    @classmethod
    def natural(cls) -> "GradedMonoid":
        return cls("natural")

    @classmethod
    def natural_power(cls, d: int, order_kind: str = "componentwise") -> "GradedMonoid":
        return cls("natural_power", d=d, order_kind=order_kind)

    @classmethod
    def table(cls, elements, identity, mul, order=()) -> "GradedMonoid":
        return cls(
            "table",
            elements=tuple(str(e) for e in elements),
            identity_index=int(identity),
            mul_table=tuple(tuple(int(x) for x in row) for row in mul),
            order=frozenset((int(a), int(b)) for a, b in order),
        )

    # -- arithmetic ---------------------------------------------------
    @property
    def identity(self):
        if self.kind == "natural":
            return 0
        if self.kind == "natural_power":
            return (0,) * self.d
        return self.identity_index

    @property
    def is_finite(self) -> bool:
        return self.kind == "table"

    def all_elements(self):
        if not self.is_finite:
            raise MonoidError("monoid is infinite")
        return list(range(len(self.elements)))

    def element(self, x) -> Any:
        """Canonicalise an element (lists become tuples) and check membership."""
        if self.kind == "natural":
            if isinstance(x, bool) or int(x) != x or x < 0:
                raise MonoidError(f"{x!r} is not a natural number")
            return int(x)
        if self.kind == "natural_power":
            t = tuple(int(v) for v in x)
            if len(t) != self.d or any(v < 0 for v in t):
                raise MonoidError(f"{x!r} is not in N^{self.d}")
            return t
        if isinstance(x, str):
            if x not in self.elements:
                raise MonoidError(f"unknown monoid element {x!r}")
            return self.elements.index(x)
        if not 0 <= int(x) < len(self.elements):
            raise MonoidError(f"monoid element index {x!r} out of range")
        return int(x)

    def mul(self, a, b):
        if self.kind == "natural":
            return a + b
        if self.kind == "natural_power":
            return tuple(x + y for x, y in zip(a, b))
        return self.mul_table[a][b]

    def power(self, a, n: int):
        out = self.identity
        for _ in range(n):
            out = self.mul(out, a)
        return out

    def less(self, a, b) -> bool:
        """Strict order ``a < b``."""
        if self.kind == "natural":
            return a < b
        if self.kind == "natural_power":
            if self.order_kind == "none":
                return False
            return a != b and all(x <= y for x, y in zip(a, b))
        return (a, b) in self.order

    def sort_key(self, a):
        if self.kind == "natural":
            return (a,)
        if self.kind == "natural_power":
            return (sum(a),) + tuple(a)
        return (a,)

    def label(self, a) -> str:
        if self.kind == "table":
            return self.elements[a]
        return str(a)

    def to_json(self, a):
        return list(a) if self.kind == "natural_power" else a

    def left_divisors(self, gamma, beta) -> set:
        """All ``alpha`` with ``alpha * beta == gamma``."""
        if self.kind == "natural":
            return {gamma - beta} if gamma >= beta else set()
        if self.kind == "natural_power":
            diff = tuple(g - b for g, b in zip(gamma, beta))
            return {diff} if all(v >= 0 for v in diff) else set()
        return {a for a in range(len(self.elements)) if self.mul_table[a][beta] == gamma}

    def check_table(self):
        """Raise :class:`MonoidError` with a witness unless the table is a monoid."""
        if self.kind != "table":
            return
        n = len(self.elements)
        e = self.identity_index
        for a in range(n):
            if self.mul_table[e][a] != a or self.mul_table[a][e] != a:
                raise MonoidError(f"identity law fails at {self.elements[a]!r}")
        for a, b, c in product(range(n), repeat=3):
            m = self.mul_table
            if m[m[a][b]][c] != m[a][m[b][c]]:
                raise MonoidError(
                    "multiplication not associative at "
                    f"({self.elements[a]}, {self.elements[b]}, {self.elements[c]})"
                )


def left_divisors(g: GradedMonoid, gamma, beta) -> set:
    return g.left_divisors(gamma, beta)


def validate(g: GradedMonoid) -> OrderReport:
    """Check the ordered-monoid, least-identity and well-foundedness axioms."""
    if g.kind == "natural":
        return OrderReport(True, True, True)
    if g.kind == "natural_power":
        if g.order_kind == "componentwise" or g.d == 0:
            return OrderReport(True, True, True)
        # no order: the axiom holds vacuously but 0 is not below anything
        return OrderReport(True, False, True, (("e_is_least", (g.identity, g.identity)),))

    g.check_table()
    n = len(g.elements)
    violations = []
    for a, b in sorted(g.order):
        for c in range(n):
            if not g.less(g.mul(a, c), g.mul(b, c)):
                violations.append(("ordered", (a, b, c)))
            elif not g.less(g.mul(c, a), g.mul(c, b)):
                violations.append(("ordered", (a, b, c)))
    is_ordered = not violations

    e = g.identity_index
    e_least = True
    for c in range(n):
        if c != e and not g.less(e, c):
            e_least = False
            violations.append(("e_is_least", (e, c)))

    well_founded = True
    for a in range(n):
        if (a, a) in g.order:
            well_founded = False
            violations.append(("irreflexive", (a, a)))
    for (a, b), (c, d) in product(sorted(g.order), repeat=2):
        if b == c and (a, d) not in g.order:
            well_founded = False
            violations.append(("transitive", (a, b, d)))
    return OrderReport(is_ordered, e_least, well_founded, tuple(violations))


def monoid_from_json(data: dict) -> GradedMonoid:
    kind = data.get("kind")
    if kind == "natural":
        return GradedMonoid.natural()
    if kind == "natural_power":
        return GradedMonoid.natural_power(int(data["d"]), data.get("order", "componentwise"))
    if kind == "table":
        elements = data["elements"]
        ident = data["identity"]
        if isinstance(ident, str):
            ident = list(elements).index(ident)
        g = GradedMonoid.table(elements, ident, data["mul"], data.get("order", ()))
        g.check_table()
        return g
    raise MonoidError(f"unknown monoid kind {kind!r}")


def monoid_to_json(g: GradedMonoid) -> dict:
    if g.kind == "natural":
        return {"kind": "natural"}
    if g.kind == "natural_power":
        return {"kind": "natural_power", "d": g.d, "order": g.order_kind}
    return {
        "kind": "table",
        "elements": list(g.elements),
        "identity": g.identity_index,
        "mul": [list(r) for r in g.mul_table],
        "order": sorted([list(p) for p in g.order]),
    }

"""JSON readers and writers for fields, monoids, algebras, Gamma-algebras, modules and reports.

Scalars are integers over F_p and strings such as ``"3/7"`` over Q.
"""
from __future__ import annotations

import json
import os
from fractions import Fraction
from typing import Any, Optional

import numpy as np

from .algebra import (
    GammaAlgebra,
    GradedAlgebra,
    QuiverPresentation,
    build_algebra,
    field_algebra,
    make_gamma_algebra,
    path_algebra,
)
from .exactla import Field
from .modules import Module, build_module, regular_module, simples
from .monoid import MonoidError, monoid_from_json, monoid_to_json


class InputError(ValueError):
    """Malformed or inconsistent input description."""


# -- scalars -------------------------------------------------------------------

def field_from_json(data) -> Field:
    if isinstance(data, dict):
        data = data.get("p", data.get("char"))
    if data in ("Q", "QQ", "rationals", 0, None):
        return Field(None)
    if isinstance(data, str):
        data = data.lstrip("Ff")
    try:
        return Field(int(data))
    except (TypeError, ValueError) as exc:
        raise InputError(f"bad field description {data!r}") from exc


def field_to_json(f: Field):
    return "Q" if f.p is None else f.p


def scalar_to_json(f: Field, x):
    if f.p is None:
        x = Fraction(x)
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return int(x)


def array_to_json(f: Field, a: np.ndarray):
    if np.ndim(a) == 0:
        return scalar_to_json(f, a[()] if isinstance(a, np.ndarray) else a)
    return [array_to_json(f, row) for row in a]


def array_from_json(f: Field, data) -> np.ndarray:
    try:
        return f.array(data)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad matrix data: {exc}") from exc


# -- files and references ---------------------------------------------------------

def load_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from exc
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from exc


def _resolve(ref, base_dir: Optional[str]):
    """A reference is either an inline object or a path relative to ``base_dir``."""
    if isinstance(ref, str):
        path = ref if os.path.isabs(ref) or base_dir is None else os.path.join(base_dir, ref)
        return load_json(path), os.path.dirname(path)
    return ref, base_dir


# -- algebras --------------------------------------------------------------------

def algebra_from_json(data: dict, base_dir: Optional[str] = None) -> GradedAlgebra:
    try:
        return _algebra_from_json(data, base_dir)
    except (KeyError, IndexError, TypeError) as exc:
        raise InputError(f"bad algebra description: missing or malformed {exc}") from exc


def _algebra_from_json(data: dict, base_dir) -> GradedAlgebra:
    if not isinstance(data, dict):
        raise InputError("algebra description must be an object")
    f = field_from_json(data.get("field", 2))
    name = data.get("name", "")
    if "quiver" in data:
        qd = data["quiver"]
        q = QuiverPresentation.make(qd["vertices"], qd.get("arrows", []), qd.get("relations", []),
                                    qd.get("truncate"))
        return path_algebra(q, f, name)
    if data.get("kind") == "field":
        return field_algebra(f)
    basis = list(data["basis"])
    n = len(basis)
    mult = f.zeros(n, n, n)
    for entry in data["mul"]:
        i, j, k, c = entry
        mult[int(i), int(j), int(k)] = f.scalar(c)
    unit = data["unit"]
    if isinstance(unit, str):
        unit = [1 if b == unit else 0 for b in basis]
    grading = None
    if data.get("grading") is not None:
        g = data["grading"]
        monoid = monoid_from_json(g.get("monoid", {"kind": "natural"}))
        grading = (monoid, g["degrees"])
    idem = data.get("idempotents")
    if idem is not None:
        idem = [[1 if b == e else 0 for b in basis] if isinstance(e, str) else e for e in idem]
    return build_algebra(f, basis, unit, mult, grading, idem, name=name)


def algebra_to_json(a: GradedAlgebra) -> dict:
    f = a.field
    mul = []
    for i, j, k in zip(*np.nonzero(a.mult != 0)):
        mul.append([int(i), int(j), int(k), scalar_to_json(f, a.mult[i, j, k])])
    out = {"field": field_to_json(f), "name": a.name, "basis": list(a.labels),
           "unit": array_to_json(f, a.unit), "mul": mul}
    if a.is_graded:
        out["grading"] = {"monoid": monoid_to_json(a.monoid),
                          "degrees": [a.monoid.to_json(d) for d in a.degrees]}
    if a.idempotents is not None:
        out["idempotents"] = array_to_json(f, a.idempotents)
    return out


def gamma_from_json(data: dict, base_dir: Optional[str] = None,
                    algebra: Optional[GradedAlgebra] = None) -> GammaAlgebra:
    try:
        if algebra is None:
            ad, adir = _resolve(data["algebra"], base_dir)
            algebra = algebra_from_json(ad, adir)
        monoid = monoid_from_json(data.get("monoid", {"kind": "natural"}))
        action = data["action"]
        f = algebra.field
        if monoid.kind == "natural" and np.ndim(action) == 2:
            action = [action]
        mats = [array_from_json(f, m) for m in action]
        return make_gamma_algebra(algebra, monoid, mats, data.get("name", ""))
    except (KeyError, TypeError) as exc:
        raise InputError(f"bad Gamma-algebra description: {exc}") from exc


def gamma_to_json(g: GammaAlgebra) -> dict:
    f = g.algebra.field
    return {"algebra": algebra_to_json(g.algebra), "monoid": monoid_to_json(g.monoid),
            "action": [array_to_json(f, m) for m in g.generators], "name": g.name}


# -- modules ---------------------------------------------------------------------

def module_from_json(data: dict, algebra: GradedAlgebra) -> Module:
    """Explicit ``{"dim", "action", "degrees"}`` or a named ``{"kind": "regular" | "simple", "index"}``."""
    if not isinstance(data, dict):
        raise InputError("module description must be an object")
    kind = data.get("kind")
    try:
        if kind == "regular":
            m = regular_module(algebra)
        elif kind == "simple":
            m = simples(algebra)[int(data.get("index", 0))]
        else:
            f = algebra.field
            dim = int(data["dim"])
            action = data["action"]
            if len(action) != algebra.dim:
                raise InputError(f"module action lists {len(action)} matrices, algebra has dimension {algebra.dim}")
            act = f.zeros(algebra.dim, dim, dim)
            for i, mat in enumerate(action):
                arr = array_from_json(f, mat).reshape(dim, dim) if dim else f.zeros(0, 0)
                act[i] = arr
            degrees = data.get("degrees")
            m = build_module(algebra, act, degrees, data.get("name", ""))
    except (KeyError, TypeError, IndexError) as exc:
        raise InputError(f"bad module description: {exc}") from exc
    except MonoidError as exc:
        raise InputError(str(exc)) from exc
    if data.get("graded") is False:
        from .modules import forget

        m = forget(m)
    return m


def module_to_json(m: Module, algebra_ref: Any = None) -> dict:
    f = m.field
    out = {"algebra": algebra_ref if algebra_ref is not None else m.algebra.name,
           "dim": m.dim, "action": [array_to_json(f, m.action[i]) for i in range(m.algebra.dim)],
           "name": m.name}
    if m.is_graded:
        out["degrees"] = [m.algebra.monoid.to_json(d) for d in m.degrees]
    return out


def vectors_from_json(data, a_labels, f: Field, dim: int) -> list:
    """Vectors given as coordinate lists or ``{label: coeff}`` maps."""
    out = []
    for v in data:
        if isinstance(v, dict):
            vec = f.zeros(dim)
            for lab, c in v.items():
                if lab not in a_labels:
                    raise InputError(f"unknown basis label {lab!r}")
                vec[list(a_labels).index(lab)] = f.scalar(c)
            out.append(vec)
        elif isinstance(v, str):
            if v not in a_labels:
                raise InputError(f"unknown basis label {v!r}")
            vec = f.zeros(dim)
            vec[list(a_labels).index(v)] = f.one
            out.append(vec)
        else:
            vec = array_from_json(f, v)
            if vec.shape != (dim,):
                raise InputError(f"vector of length {vec.shape} where {dim} was expected")
            out.append(vec)
    return out


# -- reports ---------------------------------------------------------------------

def resolution_to_json(res, report=None) -> dict:
    f = res.base.field
    out = {"dims": list(res.dims), "kmax": res.kmax, "graded": res.graded, "complete": res.complete,
           "differentials": [array_to_json(f, d) for d in res.differentials]}
    if res.graded:
        g = res.base.algebra.monoid
        out["graded_dims"] = [
            [[g.to_json(k), v] for k, v in sorted(p.graded_dims().items(), key=lambda kv: g.sort_key(kv[0]))]
            for p in res.terms
        ]
    if res.summands:
        out["summands"] = [[[i, (res.base.algebra.monoid.to_json(b) if b is not None else None)] for i, b in s]
                           for s in res.summands]
    if report is not None:
        out["verify"] = report.as_dict()
    return out


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False, default=_default)


def _default(o):
    if isinstance(o, (np.integer,)):
        return int(o)
    if isinstance(o, (np.bool_,)):
        return bool(o)
    if isinstance(o, Fraction):
        return str(o)
    if isinstance(o, (set, frozenset, tuple)):
        return list(o)
    raise TypeError(f"cannot serialise {type(o).__name__}")

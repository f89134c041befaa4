"""Corpus runner: the built-in acceptance suite or a directory of JSON case files.

Case kinds:
  {"kind": "criterion", "number": k}
  {"kind": "resolution", "algebra": ..., "module": ..., "terms": [[[i, shift], ...], ...],
   "differentials": [...], "graded": bool, "complete": bool}
  {"kind": "forgetful", "algebra": ..., "module": ..., "kmax": k}
  {"kind": "stratify", "algebra": ..., "ideal": [...], "expect": bool, "kmax": k}
"""
from __future__ import annotations

import glob
import os
from typing import List, Optional, Tuple

from .algebra import AlgebraError, CapabilityError
from .config import RunConfig
from .criteria import ALL_CRITERIA, run_all
from .homology import stratifying_check
from .jsonio import InputError, _resolve, algebra_from_json, array_from_json, load_json, module_from_json, vectors_from_json
from .modules import ModuleError
from .monoid import MonoidError
from .resolution import Resolution, forgetful_resolution_check, free_module, verify

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_CAPABILITY = 0, 1, 2, 3


def _case_resolution(data, base_dir) -> Tuple[bool, dict]:
    ad, adir = _resolve(data["algebra"], base_dir)
    alg = algebra_from_json(ad, adir)
    md, _ = _resolve(data["module"], base_dir)
    m = module_from_json(md, alg)
    graded = bool(data.get("graded", False)) and m.is_graded
    f = alg.field
    terms = []
    for summ in data["terms"]:
        pairs = [(int(i), alg.monoid.element(b) if graded else None) for i, b in summ]
        terms.append(free_module(alg, pairs, graded)[0])
    diffs = []
    for k, d in enumerate(data["differentials"]):
        rows = m.dim if k == 0 else terms[k - 1].dim
        mat = array_from_json(f, d) if len(d) else f.zeros(rows, terms[k].dim)
        diffs.append(mat.reshape(rows, terms[k].dim))
    if not graded and m.is_graded:
        from .modules import forget

        m = forget(m)
    res = Resolution(m, terms, diffs, graded, bool(data.get("complete", False)), kind="case")
    rep = verify(res)
    return rep.ok, rep.as_dict()


def _case_forgetful(data, base_dir, cfg) -> Tuple[bool, dict]:
    ad, adir = _resolve(data["algebra"], base_dir)
    alg = algebra_from_json(ad, adir)
    md, _ = _resolve(data["module"], base_dir)
    m = module_from_json(md, alg)
    rep = forgetful_resolution_check(m, int(data.get("kmax", cfg.kmax)))
    return bool(rep.holds), {"summary": rep.summary()}


def _case_stratify(data, base_dir, cfg) -> Tuple[bool, dict]:
    ad, adir = _resolve(data["algebra"], base_dir)
    alg = algebra_from_json(ad, adir)
    gens = vectors_from_json(data["ideal"], alg.labels, alg.field, alg.dim)
    rep = stratifying_check(alg, gens, int(data.get("kmax", cfg.kmax)))
    expect = data.get("expect")
    ok = rep.stratifying == expect if expect is not None else True
    return ok, rep.as_dict()


def run_case(path: str, cfg: RunConfig) -> dict:
    data = load_json(path)
    if not isinstance(data, dict) or "kind" not in data:
        raise InputError(f"{path}: case needs a 'kind'")
    base = os.path.dirname(path)
    kind = data["kind"]
    try:
        if kind == "criterion":
            num = int(data["number"])
            if not 1 <= num <= len(ALL_CRITERIA):
                raise InputError(f"{path}: no criterion {num}")
            res = ALL_CRITERIA[num - 1](cfg)
            return {"case": os.path.basename(path), "passed": res.ok, "detail": res.as_dict(),
                    "witness": res.witness}
        if kind == "resolution":
            ok, detail = _case_resolution(data, base)
        elif kind == "forgetful":
            ok, detail = _case_forgetful(data, base, cfg)
        elif kind == "stratify":
            ok, detail = _case_stratify(data, base, cfg)
        else:
            raise InputError(f"{path}: unknown case kind {kind!r}")
    except KeyError as exc:
        raise InputError(f"{path}: missing field {exc}") from exc
    return {"case": os.path.basename(path), "passed": ok, "detail": detail,
            "witness": None if ok else detail.get("witness", detail)}


def run_corpus(cfg: RunConfig = RunConfig(), directory: Optional[str] = None,
               only: Optional[List[int]] = None) -> Tuple[int, dict]:
    if directory is None:
        results = run_all(cfg, only)
        summary = {"cases": [r.as_dict() for r in results], "lines": [r.line() for r in results]}
        code = EXIT_OK if all(r.ok for r in results) else EXIT_FAIL
        summary["passed"] = code == EXIT_OK
        return code, summary
    if not os.path.isdir(directory):
        return EXIT_INPUT, {"error": f"{directory} is not a directory"}
    files = sorted(glob.glob(os.path.join(directory, "*.json")))
    if not files:
        return EXIT_INPUT, {"error": f"empty corpus: no case files in {directory}"}
    cases = []
    try:
        for path in files:
            cases.append(run_case(path, cfg))
    except (InputError, AlgebraError, ModuleError, MonoidError, ValueError) as exc:
        return EXIT_INPUT, {"error": str(exc), "cases": cases}
    except CapabilityError as exc:
        return EXIT_CAPABILITY, {"error": str(exc), "cases": cases}
    passed = all(c["passed"] for c in cases)
    lines = [f"[{'PASS' if c['passed'] else 'FAIL'}] {c['case']}"
             + ("" if c["passed"] else f" witness: {c['witness']}") for c in cases]
    return (EXIT_OK if passed else EXIT_FAIL), {"cases": cases, "lines": lines, "passed": passed}

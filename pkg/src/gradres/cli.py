"""Batch command line: ``gradres <command> ...``.

Exit codes: 0 success / property holds, 1 property fails (witness in the report),
2 invalid input, 3 hypotheses unmet or computation out of scope.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import replace
from typing import List, Optional

from .algebra import AlgebraError, CapabilityError, quotient_by_ideal
from .config import RunConfig
from .corpus import EXIT_CAPABILITY, EXIT_FAIL, EXIT_INPUT, EXIT_OK, run_corpus
from .criteria import calculus_check, right_fixture_modules
from .homology import (
    SubalgebraR,
    bar_resolution,
    opposite_of,
    quotient_functor_check,
    relative_tor,
    relative_vanishing_check,
    stratifying_check,
    tor,
)
from .jsonio import (
    InputError,
    algebra_from_json,
    algebra_to_json,
    dumps,
    gamma_from_json,
    load_json,
    module_from_json,
    module_to_json,
    resolution_to_json,
    vectors_from_json,
)
from .modules import (
    Module,
    ModuleError,
    annihilates,
    deflate,
    forget,
    is_superfluous,
    is_superfluous_bruteforce,
    kernel,
    regular_module,
    simples,
    submodule,
)
from .monoid import MonoidError
from .resolution import cover, forgetful_resolution_check, minimal_resolution, verify
from .smash import (
    check_twisted_axioms,
    shift_twist_identity_check,
    smash,
    twist_module,
    twisted_resolution_check,
)

VERIFY_TARGETS = ("thm2.6", "prop3.2", "thm3.6", "prop4.1", "prop4.2", "thm4.3", "prop1.5")


class Outcome:
    def __init__(self, code: int, payload: dict, text: str):
        self.code, self.payload, self.text = code, payload, text


# -- loading -------------------------------------------------------------------------

def _load_algebra(args):
    if not args.algebra:
        raise InputError("--algebra is required")
    data = load_json(args.algebra)
    return algebra_from_json(data, os.path.dirname(args.algebra))


def _load_module(path: Optional[str], alg, required: bool = True, what: str = "--module") -> Optional[Module]:
    if path is None:
        if required:
            raise InputError(f"{what} is required")
        return None
    if path.lstrip().startswith("{"):
        data = json.loads(path)
    else:
        data = load_json(path)
    return module_from_json(data, alg)


def _load_gamma(args):
    if not args.gamma:
        raise InputError("--gamma is required")
    data = load_json(args.gamma)
    if "algebra" not in data:
        raise InputError("Gamma-algebra file needs an 'algebra' entry")
    return gamma_from_json(data, os.path.dirname(args.gamma))


def _load_vectors(source: Optional[str], labels, f, dim: int, what: str):
    if source is None:
        raise InputError(f"{what} is required")
    if os.path.exists(source):
        data = load_json(source)
    else:
        try:
            data = json.loads(source)
        except json.JSONDecodeError:
            data = [s for s in source.split(",") if s]
    if isinstance(data, dict):
        data = data.get("generators", data.get("vectors", []))
    return vectors_from_json(data, labels, f, dim)


def _subalgebra(args, alg) -> SubalgebraR:
    if args.r in (None, "field"):
        return SubalgebraR.ground_field(alg)
    if args.r in ("vertices", "idempotents"):
        return SubalgebraR.idempotent_span(alg)
    raise InputError(f"unknown subalgebra {args.r!r} (use 'field' or 'vertices')")


def _right_module(path, alg) -> Module:
    """A right module: explicit right-action matrices, or regular / simple of the opposite algebra."""
    if path is None:
        raise InputError("--right is required")
    data = json.loads(path) if path.lstrip().startswith("{") else load_json(path)
    m = forget(module_from_json(data, opposite_of(alg)))
    return replace(m, name=m.name or "N")


# -- commands --------------------------------------------------------------------------

def cmd_resolve(args) -> Outcome:
    alg = _load_algebra(args)
    m = _load_module(args.module, alg)
    if args.graded and not m.is_graded:
        raise InputError("--graded needs a module with degrees")
    res = minimal_resolution(m if args.graded else forget(m), args.kmax, graded=args.graded)
    rep = verify(res)
    payload = resolution_to_json(res, rep)
    text = f"dims = {list(res.dims)} complete = {res.complete} " \
           f"exact={rep.exact} projective={rep.projective_terms} minimal={rep.minimal}"
    return Outcome(EXIT_OK if rep.ok else EXIT_FAIL, payload, text)


def cmd_cover(args) -> Outcome:
    alg = _load_algebra(args)
    m = _load_module(args.module, alg)
    graded = args.graded and m.is_graded
    c = cover(m if graded else forget(m), graded)
    ker = kernel(c.map)
    payload = {"dim": c.module.dim, "kernel_dim": ker.dim,
               "summands": [[i, alg.monoid.to_json(b) if b is not None else None] for i, b in c.summands],
               "projective": ker.dim == 0}
    text = f"cover dim {c.module.dim}, kernel dim {ker.dim}, summands {payload['summands']}"
    return Outcome(EXIT_OK, payload, text)


def cmd_superfluous(args) -> Outcome:
    alg = _load_algebra(args)
    m = forget(_load_module(args.module, alg))
    vecs = _load_vectors(args.vectors, [str(i) for i in range(m.dim)], alg.field, m.dim, "--vectors")
    n = submodule(m, vecs)
    payload = {"submodule_dim": n.dim, "superfluous": is_superfluous(n, m)}
    if args.bruteforce:
        payload["bruteforce"] = is_superfluous_bruteforce(n, m)
    text = f"submodule dim {n.dim}: superfluous = {payload['superfluous']}"
    if args.bruteforce:
        text += f" (brute force: {payload['bruteforce']})"
    code = EXIT_OK if not args.bruteforce or payload["bruteforce"] == payload["superfluous"] else EXIT_FAIL
    return Outcome(code, payload, text)


def cmd_smash(args) -> Outcome:
    alg = _load_algebra(args)
    g = _load_gamma(args)
    s = smash(alg, g)
    axioms = check_twisted_axioms(s)
    payload = algebra_to_json(s.product)
    payload["provenance"] = s.provenance
    payload["axioms"] = axioms
    text = f"{s.product.name}: dim {s.product.dim}, twisted-product identities {'hold' if axioms['ok'] else 'FAIL'}"
    return Outcome(EXIT_OK if axioms["ok"] else EXIT_FAIL, payload, text)


def cmd_twist(args) -> Outcome:
    alg = _load_algebra(args)
    g = _load_gamma(args)
    s = smash(alg, g)
    m = _load_module(args.module, alg)
    n = _load_module(args.bmodule, g.algebra, what="--bmodule")
    t = twist_module(s, m, n)
    payload = module_to_json(t, s.product.name)
    return Outcome(EXIT_OK, payload, f"twisted module of dim {t.dim} over {s.product.name}")


def cmd_tor(args) -> Outcome:
    alg = _load_algebra(args)
    n = _right_module(args.right, alg)
    m = forget(_load_module(args.module, alg))
    t = tor(n, m, args.kmax)
    return Outcome(EXIT_OK, t.as_dict(), f"Tor dims = {t.dims}")


def cmd_rtor(args) -> Outcome:
    alg = _load_algebra(args)
    n = _right_module(args.right, alg)
    m = forget(_load_module(args.module, alg))
    r = _subalgebra(args, alg)
    t = relative_tor(n, m, r, args.kmax)
    return Outcome(EXIT_OK, t.as_dict(), f"relative Tor dims (R = {r.label()}) = {t.dims}")


def cmd_bar(args) -> Outcome:
    alg = _load_algebra(args)
    m = _load_module(args.module, alg)
    r = _subalgebra(args, alg)
    bar = bar_resolution(alg, r, m, args.kmax)
    cx, hom = bar.check_complex(), bar.check_homotopy()
    rep = verify(bar.resolution())
    ok = all(cx.values()) and all(hom.values()) and rep.exact
    payload = {"dims": bar.term_dims(), "dd_zero": cx, "homotopy": hom, "verify": rep.as_dict()}
    text = f"bar dims = {bar.term_dims()}, d d = 0: {all(cx.values())}, ds + sd = id: {all(hom.values())}, " \
           f"minimal: {rep.minimal}"
    return Outcome(EXIT_OK if ok else EXIT_FAIL, payload, text)


def cmd_stratify(args) -> Outcome:
    alg = _load_algebra(args)
    gens = _load_vectors(args.ideal, alg.labels, alg.field, alg.dim, "--ideal")
    r = _subalgebra(args, alg) if args.r else None
    rep = stratifying_check(alg, gens, args.kmax, r)
    text = f"Tor(A/I, A/I) dims = {rep.tor.dims}: {'stratifying' if rep.stratifying else 'not stratifying'}"
    return Outcome(EXIT_OK if rep.stratifying else EXIT_FAIL, rep.as_dict(), text)


def _quotient_module(args, alg, gens):
    q, proj, ideal = quotient_by_ideal(alg, gens)
    data = json.loads(args.module) if args.module.lstrip().startswith("{") else load_json(args.module)
    if data.get("kind") in ("simple", "regular") or len(data.get("action", [])) == q.dim:
        return forget(module_from_json(data, q))
    m = forget(module_from_json(data, alg))
    if not annihilates(m, ideal.basis):
        raise InputError("module is not annihilated by the ideal")
    from .exactla import QuotientSpace

    qs = QuotientSpace(alg.field, alg.dim, ideal.basis)
    return deflate(m, q, qs.section)


def cmd_verify(args) -> Outcome:
    target = args.target
    cfg = RunConfig(kmax=args.kmax, seed=args.seed)
    if target == "thm2.6":
        alg = _load_algebra(args)
        m = _load_module(args.module, alg)
        rep = forgetful_resolution_check(m, args.kmax)
        payload = {"holds": rep.holds, "graded_dims": list(rep.graded_dims),
                   "ungraded_dims": list(rep.ungraded_dims), "hypotheses": rep.hypotheses,
                   "graded_components": rep.graded_components,
                   "forgotten_verify": rep.forgotten.as_dict() if rep.forgotten else None,
                   "support_witness": rep.support_witness}
        if rep.holds is None:
            return Outcome(EXIT_CAPABILITY, payload, rep.summary())
        return Outcome(EXIT_OK if rep.holds else EXIT_FAIL, payload, rep.summary())
    if target == "prop3.2":
        alg = _load_algebra(args)
        g = _load_gamma(args)
        s = smash(alg, g)
        n = _load_module(args.bmodule, g.algebra, what="--bmodule")
        betas = [g.monoid.element(json.loads(b)) for b in args.beta] if args.beta else [0, 1, 2]
        rows = {str(b): shift_twist_identity_check(s, n, b) for b in betas}
        ok = all(rows.values())
        return Outcome(EXIT_OK if ok else EXIT_FAIL, {"holds": ok, "by_shift": rows},
                       f"identity map is a graded isomorphism for shifts {betas}: {ok}")
    if target == "thm3.6":
        alg = _load_algebra(args)
        g = _load_gamma(args)
        s = smash(alg, g)
        m = _load_module(args.module, alg)
        n = _load_module(args.bmodule, g.algebra, what="--bmodule")
        rep = twisted_resolution_check(s, m, n, args.kmax)
        if rep.holds is None:
            return Outcome(EXIT_CAPABILITY, rep.as_dict(), f"hypotheses unmet: {rep.reason}")
        text = f"image dims {list(rep.image_dims)}, direct dims {list(rep.direct_dims)}: " \
               f"{'minimal resolution preserved' if rep.holds else 'FAILS'}"
        return Outcome(EXIT_OK if rep.holds else EXIT_FAIL, rep.as_dict(), text)
    if target == "prop4.1":
        alg = _load_algebra(args)
        gens = _load_vectors(args.ideal, alg.labels, alg.field, alg.dim, "--ideal")
        r = _subalgebra(args, alg) if args.r else SubalgebraR.idempotent_span(alg)
        rep = relative_vanishing_check(alg, gens, r, args.kmax)
        if not rep["premise"]:
            return Outcome(EXIT_CAPABILITY, rep, "premise fails: relative Tor(A/I, A/I) does not vanish")
        return Outcome(EXIT_OK if rep["holds"] else EXIT_FAIL, rep,
                       f"relative Tor(A/I, M) vanishes for all A/I-modules tried: {rep['holds']}")
    if target == "prop4.2":
        alg = _load_algebra(args)
        r = SubalgebraR.ground_field(alg)
        if args.right and args.module:
            pairs = [(_right_module(args.right, alg), forget(_load_module(args.module, alg)))]
        else:
            lefts = [forget(regular_module(alg))] + [forget(s) for s in simples(alg)]
            pairs = [(n, m) for m in lefts for n in right_fixture_modules(alg)]
        rows = []
        ok = True
        for n, m in pairs:
            rel, ordi = relative_tor(n, m, r, args.kmax), tor(n, m, args.kmax)
            rows.append({"left": n.name, "right": m.name, "relative": rel.dims, "ordinary": ordi.dims})
            ok = ok and rel.dims == ordi.dims
        return Outcome(EXIT_OK if ok else EXIT_FAIL, {"holds": ok, "pairs": rows},
                       f"relative Tor over the field = ordinary Tor on {len(rows)} pairs: {ok}")
    if target == "thm4.3":
        alg = _load_algebra(args)
        gens = _load_vectors(args.ideal, alg.labels, alg.field, alg.dim, "--ideal")
        if args.module is None:
            raise InputError("--module is required")
        m = _quotient_module(args, alg, gens)
        r = _subalgebra(args, alg) if args.r else None
        rep = quotient_functor_check(alg, gens, m, args.kmax, r)
        if rep.declined:
            return Outcome(EXIT_CAPABILITY, rep.as_dict(),
                           f"declined: ideal not stratifying, Tor dims {rep.witness['tor']['dims']}")
        text = f"image dims {list(rep.image_dims)} = direct dims {list(rep.direct_dims)}: {rep.holds}"
        return Outcome(EXIT_OK if rep.holds else EXIT_FAIL, rep.as_dict(), text)
    if target == "prop1.5":
        alg = _load_algebra(args)
        cfg = replace(cfg, calculus_instances=args.instances)
        ok, counts, wit = calculus_check((alg,), cfg)
        return Outcome(EXIT_OK if ok else EXIT_FAIL, {"holds": ok, "counts": counts, "witness": wit},
                       f"submodule calculus on {args.instances} instances: {ok}" + (f" ({wit})" if wit else ""))
    raise InputError(f"unknown verification target {target!r}")


def cmd_corpus(args) -> Outcome:
    maxdim = int(os.environ.get("GRADRES_MAXDIM", RunConfig.maxdim))
    cfg = RunConfig(kmax=args.kmax, seed=args.seed, maxdim=maxdim)
    code, summary = run_corpus(cfg, args.dir, args.only)
    text = "\n".join(summary.get("lines", [])) or summary.get("error", "")
    return Outcome(code, summary, text)


# -- parser ------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--algebra", help="algebra JSON file")
    common.add_argument("--module", help="module JSON file (or inline JSON)")
    common.add_argument("--kmax", type=int, default=4)
    common.add_argument("--graded", action="store_true")
    common.add_argument("--format", choices=("json", "text"), default="text")
    common.add_argument("--seed", type=int, default=0)

    p = argparse.ArgumentParser(prog="gradres", description="Graded minimal resolutions, twisted products "
                                "and stratifying ideals over finite-dimensional algebras.")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("resolve", parents=[common], help="minimal projective resolution")
    sub.add_parser("cover", parents=[common], help="projective cover")
    sp = sub.add_parser("superfluous", parents=[common], help="is a generated submodule superfluous")
    sp.add_argument("--vectors", help="JSON list of generating vectors")
    sp.add_argument("--bruteforce", action="store_true", help="also run subspace enumeration")
    for name, hlp in (("smash", "twisted product algebra"), ("twist", "twisted module")):
        s = sub.add_parser(name, parents=[common], help=hlp)
        s.add_argument("--gamma", help="Gamma-algebra JSON file")
        s.add_argument("--bmodule", help="module over the Gamma-algebra")
    for name in ("tor", "rtor"):
        s = sub.add_parser(name, parents=[common], help="Tor" if name == "tor" else "relative Tor")
        s.add_argument("--right", help="right module JSON (actions n -> n b)")
        s.add_argument("--r", choices=("field", "vertices"), default=None)
    s = sub.add_parser("bar", parents=[common], help="bar resolution relative to R")
    s.add_argument("--r", choices=("field", "vertices"), default="field")
    s = sub.add_parser("stratify", parents=[common], help="stratifying ideal check")
    s.add_argument("--ideal", help="ideal generators: JSON file, inline JSON or comma-separated labels")
    s.add_argument("--r", choices=("field", "vertices"), default=None)
    v = sub.add_parser("verify", parents=[common], help="run a verification pipeline")
    v.add_argument("target", choices=VERIFY_TARGETS)
    v.add_argument("--gamma")
    v.add_argument("--bmodule")
    v.add_argument("--right")
    v.add_argument("--ideal")
    v.add_argument("--r", choices=("field", "vertices"), default=None)
    v.add_argument("--beta", action="append", help="shift degree as JSON (repeatable)")
    v.add_argument("--instances", type=int, default=100)
    c = sub.add_parser("corpus", parents=[common], help="run the acceptance suite or a case directory")
    c.add_argument("--dir", default=None)
    c.add_argument("--only", type=int, action="append")
    return p


COMMANDS = {
    "resolve": cmd_resolve, "cover": cmd_cover, "superfluous": cmd_superfluous, "smash": cmd_smash,
    "twist": cmd_twist, "tor": cmd_tor, "rtor": cmd_rtor, "bar": cmd_bar, "stratify": cmd_stratify,
    "verify": cmd_verify, "corpus": cmd_corpus,
}


def run(argv: Optional[List[str]] = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    fmt = getattr(args, "format", "text")
    try:
        outcome = COMMANDS[args.command](args)
    except (InputError, AlgebraError, ModuleError, MonoidError, json.JSONDecodeError, ValueError) as exc:
        outcome = Outcome(EXIT_INPUT, {"error": "invalid input", "reason": str(exc),
                                       "witness": getattr(exc, "witness", None)}, f"invalid input: {exc}")
    except CapabilityError as exc:
        outcome = Outcome(EXIT_CAPABILITY, {"error": "capability", "reason": str(exc)}, f"cannot compute: {exc}")
    outcome.payload.setdefault("exit_code", outcome.code)
    if fmt == "json":
        out.write(dumps(outcome.payload) + "\n")
    else:
        out.write(outcome.text + "\n")
    return outcome.code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

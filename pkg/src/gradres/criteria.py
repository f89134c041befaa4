"""Acceptance suites: each returns a :class:`CriterionResult` with timing and a witness on failure."""
from __future__ import annotations

import time
from dataclasses import dataclass, field as dc_field
from typing import Callable, Dict, List, Optional

import numpy as np

from .algebra import permute_algebra, permute_gamma_algebra
from .config import RunConfig
from .fixtures import a2, d2, d3, quantum_plane, random_modules
from .homology import (
    SubalgebraR,
    bar_resolution,
    opposite_of,
    quotient_functor_check,
    quotient_modules,
    relative_tor,
    right_regular,
    stratifying_check,
    tor,
)
from .modules import (
    Module,
    all_submodules,
    direct_sum,
    direct_sum_submodule,
    forget,
    hom_space,
    image,
    is_superfluous,
    is_superfluous_bruteforce,
    permute_module,
    regular_module,
    simples,
    submodule_sum,
)
from .resolution import forgetful_resolution_check
from .smash import shift_twist_identity_check, smash, twisted_resolution_check


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    seconds: float
    budget: float
    detail: dict = dc_field(default_factory=dict)
    witness: Optional[str] = None

    @property
    def within_budget(self) -> bool:
        return self.seconds < self.budget

    @property
    def ok(self) -> bool:
        return self.passed and self.within_budget

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        extra = "" if self.within_budget else f" (over budget {self.budget:.0f}s)"
        wit = f" witness: {self.witness}" if self.witness and not self.passed else ""
        return f"[{status}] criterion {self.number}: {self.name} ({self.seconds:.2f}s){extra}{wit}"

    def as_dict(self) -> dict:
        return {"criterion": self.number, "name": self.name, "passed": self.passed, "ok": self.ok,
                "seconds": round(self.seconds, 3), "budget": self.budget, "detail": self.detail,
                "witness": self.witness}


def _timed(number: int, name: str, budget: float, fn: Callable[[], tuple]) -> CriterionResult:
    t0 = time.perf_counter()
    passed, detail, witness = fn()
    return CriterionResult(number, name, passed, time.perf_counter() - t0, budget, detail, witness)


def _f2_fixture_modules(cfg: RunConfig) -> List[Module]:
    mods = []
    for alg in (d2(), d3(), a2()):
        mods.append(regular_module(alg))
        mods.extend(simples(alg))
    algs = [d2(), d3(), a2()]
    for k in range(cfg.random_modules):
        alg = algs[k % 3]
        mods.extend(random_modules(alg, 1, cfg.seed * 1000 + k, max_dim=4))
    return mods


# -- 1: superfluous predicate against brute force ----------------------------------------

def superfluous_oracle(cfg: RunConfig = RunConfig()) -> CriterionResult:
    def run():
        checked = 0
        for m in _f2_fixture_modules(cfg):
            if m.dim > cfg.bruteforce_dim:
                continue
            for n in all_submodules(m):
                checked += 1
                if is_superfluous(n, m) != is_superfluous_bruteforce(n, m):
                    return False, {"checked": checked}, f"{m.name}: submodule {n.basis.T.tolist()}"
        return True, {"submodules_checked": checked}, None

    return _timed(1, "superfluous predicate = brute force", 10.0, run)


# -- 2: calculus of superfluous submodules -------------------------------------------------

def _random_map(m: Module, n: Module, rng) -> np.ndarray:
    f = m.field
    mat = f.zeros(n.dim, m.dim)
    for b in hom_space(m, n):
        if rng.integers(0, 2):
            mat = f.add(mat, b)
    return mat


def calculus_check(algebras, cfg: RunConfig = RunConfig()) -> tuple:
    """Random (map, submodule) instances over the given algebras; returns ``(passed, counts, witness)``."""
    from .modules import ModuleMap

    rng = np.random.default_rng(cfg.seed + 17)
    pools: Dict[str, List[Module]] = {}
    for alg in algebras:
        pool = [regular_module(alg)] + simples(alg) + random_modules(alg, 3, cfg.seed + 5, max_dim=3)
        pools[alg.name] = [forget(m) for m in pool if m.dim <= max(cfg.bruteforce_dim, 4)]
    names = sorted(pools)
    counts = {"i": 0, "ii": 0, "iii": 0, "brute_force_evaluations": 0}
    for inst in range(cfg.calculus_instances):
        pool = pools[names[inst % len(names)]]
        m = pool[int(rng.integers(0, len(pool)))]
        m2 = pool[int(rng.integers(0, len(pool)))]
        subs_m = all_submodules(m)
        subs_m2 = all_submodules(m2)
        n1 = subs_m[int(rng.integers(0, len(subs_m)))]
        n2 = subs_m[int(rng.integers(0, len(subs_m)))]
        k2 = subs_m2[int(rng.integers(0, len(subs_m2)))]
        phi = _random_map(m, m2, rng)
        img = image(ModuleMap(m, m2, phi), n1)
        total = direct_sum([m, m2])
        pair = direct_sum_submodule([n1, k2], total)
        preds = [("radical", is_superfluous)]
        if max(m.dim, m2.dim) <= cfg.bruteforce_dim:
            preds.append(("brute force", is_superfluous_bruteforce))
        for label, pred in preds:
            if label == "brute force":
                counts["brute_force_evaluations"] += 1
            s1 = pred(n1, m)
            if s1:
                counts["i"] += 1
                if not pred(img, m2):
                    return False, counts, f"instance {inst} ({label}): image of superfluous submodule not superfluous"
            if s1 and pred(n2, m):
                counts["ii"] += 1
                if not pred(submodule_sum(n1, n2), m):
                    return False, counts, f"instance {inst} ({label}): sum of superfluous submodules"
            if label == "brute force" and total.dim > cfg.bruteforce_dim:
                continue
            counts["iii"] += 1
            if pred(pair, total) != (s1 and pred(k2, m2)):
                return False, counts, f"instance {inst} ({label}): direct sum criterion"
    return True, counts, None


def superfluous_calculus(cfg: RunConfig = RunConfig()) -> CriterionResult:
    return _timed(2, "superfluous submodule calculus (image, sum, direct sum)", 30.0,
                  lambda: calculus_check((d2(), d3(), a2()), cfg))


# -- 3: graded resolutions forget to ungraded minimal resolutions ---------------------------

def forgetful_modules(cfg: RunConfig, algs=None) -> List[Module]:
    if algs is None:
        algs = {"D2": d2(), "D3": d3(), "A2": a2()}
    mods = [simples(algs["D2"])[0], simples(algs["D3"])[0], simples(algs["A2"])[0]]
    mods += [regular_module(algs[k]) for k in ("D2", "D3", "A2")]
    for key in ("A2", "D3"):
        mods += random_modules(algs[key], cfg.random_graded, cfg.seed + 101, max_dim=4)
    return mods


def forgetful_table(cfg: RunConfig, mods: List[Module]) -> tuple:
    table = []
    for m in mods:
        rep = forgetful_resolution_check(m, cfg.kmax)
        table.append((rep.graded_dims, rep.ungraded_dims))
        if not rep.holds:
            return table, f"{m.name}: {rep.summary()}"
    return table, None


def forgetful_functor(cfg: RunConfig = RunConfig()) -> CriterionResult:
    def run():
        table, wit = forgetful_table(cfg, forgetful_modules(cfg))
        return wit is None, {"dims": [list(g) for g, _ in table]}, wit

    return _timed(3, "graded minimal resolutions stay minimal after forgetting degrees", 30.0, run)


# -- 4: shift/twist identity ------------------------------------------------------------------

def shift_twist(cfg: RunConfig = RunConfig()) -> CriterionResult:
    def run():
        qp = quantum_plane(2, 5)
        b = qp.b.algebra
        rows = {}
        for label, n in (("regular", regular_module(b)), ("k", simples(b)[0])):
            for beta in (0, 1, 2):
                ok = shift_twist_identity_check(qp, n, beta)
                rows[f"{label}, beta={beta}"] = ok
                if not ok:
                    return False, rows, f"N={label}, beta={beta}"
        return True, rows, None

    return _timed(4, "A[beta] # N = (A # twisted N)[beta] via the identity", 5.0, run)


# -- 5: twisted minimal resolutions ------------------------------------------------------------

def twisted_table(cfg: RunConfig, qp=None) -> tuple:
    qp = qp if qp is not None else quantum_plane(2, 5)
    k = simples(qp.a)[0]
    rep = twisted_resolution_check(qp, k, regular_module(qp.b.algebra), cfg.twist_kmax)
    return rep


def twisted_resolution(cfg: RunConfig = RunConfig()) -> CriterionResult:
    def run():
        rep = twisted_table(cfg)
        return bool(rep.holds), rep.as_dict(), None if rep.holds else (rep.reason or str(rep.image_report))

    return _timed(5, "- # N carries the minimal graded resolution to a minimal one over QP(2)", 60.0, run)


# -- 6: bar complexes ----------------------------------------------------------------------------

def bar_certification(cfg: RunConfig = RunConfig()) -> CriterionResult:
    def run():
        detail = {}
        D2, A2 = d2(), a2()
        cases = [(D2, SubalgebraR.ground_field(D2)), (A2, SubalgebraR.ground_field(A2)),
                 (A2, SubalgebraR.idempotent_span(A2))]
        for alg, r in cases:
            for m in [regular_module(alg)] + simples(alg):
                bar = bar_resolution(alg, r, m, cfg.kmax)
                cx, hom = bar.check_complex(), bar.check_homotopy()
                key = f"{alg.name}/{r.label()}/{m.name}"
                detail[key] = bar.term_dims()
                if not all(cx.values()):
                    return False, detail, f"{key}: d d != 0 in degrees {[k for k, v in cx.items() if not v]}"
                if not all(hom.values()):
                    return False, detail, f"{key}: ds + sd != id in degrees {[k for k, v in hom.items() if not v]}"
        return True, detail, None

    return _timed(6, "bar complexes: d d = 0 and ds + sd = id", 60.0, run)


# -- 7: relative Tor over the field = ordinary Tor -----------------------------------------------

def right_fixture_modules(a) -> List[Module]:
    op = opposite_of(a)
    out = [right_regular(a)]
    for s in simples(op):
        out.append(Module(op, s.action, None, f"{s.name}_A"))
    return out


def relative_equals_ordinary(cfg: RunConfig = RunConfig()) -> CriterionResult:
    def run():
        detail = {}
        for alg in (d2(), a2()):
            r = SubalgebraR.ground_field(alg)
            lefts = [forget(regular_module(alg))] + [forget(s) for s in simples(alg)]
            for m in lefts:
                bar = bar_resolution(alg, r, m, cfg.kmax)
                for n in right_fixture_modules(alg):
                    rel = relative_tor(n, m, r, cfg.kmax, bar=bar)
                    ordi = tor(n, m, cfg.kmax)
                    key = f"{alg.name}: Tor({n.name}, {m.name})"
                    detail[key] = ordi.dims
                    if rel.dims != ordi.dims:
                        return False, detail, f"{key}: relative {rel.dims} vs ordinary {ordi.dims}"
        return True, detail, None

    return _timed(7, "relative Tor over the ground field = ordinary Tor", 60.0, run)


# -- 8: stratifying verdicts ---------------------------------------------------------------------

def stratifying_table(cfg: RunConfig, A2=None, D2=None, gen_a=None, gen_d=None) -> dict:
    A2 = A2 if A2 is not None else a2()
    D2 = D2 if D2 is not None else d2()
    gen_a = gen_a if gen_a is not None else A2.vector({"e2": 1})
    gen_d = gen_d if gen_d is not None else D2.vector({"x": 1})
    sa = stratifying_check(A2, [gen_a], cfg.kmax)
    sd = stratifying_check(D2, [gen_d], cfg.kmax)
    return {"A2/Ae2A": sa.tor.dims, "D2/(x)": sd.tor.dims,
            "verdicts": [sa.stratifying, sd.stratifying]}


def stratifying_verdicts(cfg: RunConfig = RunConfig()) -> CriterionResult:
    def run():
        t = stratifying_table(cfg)
        ok = (t["verdicts"] == [True, False] and all(d == 0 for d in t["A2/Ae2A"][1:])
              and t["D2/(x)"][1] == 1)
        return ok, t, None if ok else f"tables {t}"

    return _timed(8, "stratifying verdicts (A2 with Ae2A yes, D2 with (x) no)", 10.0, run)


# -- 9: the quotient functor on minimal resolutions ------------------------------------------------

def quotient_functor(cfg: RunConfig = RunConfig()) -> CriterionResult:
    def run():
        A2, D2 = a2(), d2()
        ga, gd = [A2.vector({"e2": 1})], [D2.vector({"x": 1})]
        qa = quotient_modules(A2, ga)
        s1 = qa[1]
        pos = quotient_functor_check(A2, ga, s1, cfg.kmax)
        neg = quotient_functor_check(D2, gd, quotient_modules(D2, gd)[1], cfg.kmax)
        neg_tor = neg.witness["tor"]["dims"] if neg.witness else None
        ok = bool(pos.holds) and list(pos.image_dims) == [1] + [0] * cfg.kmax
        ok = ok and neg.declined and neg_tor is not None and neg_tor[1] != 0
        detail = {"positive": pos.as_dict(), "negative_declined": neg.declined, "negative_tor": neg_tor}
        return ok, detail, None if ok else str(detail)

    return _timed(9, "A/I (x)_A - sends the minimal resolution of S1 to a minimal one", 10.0, run)


# -- 10: determinism under basis permutations ------------------------------------------------------

def _permuted_forgetful_modules(cfg: RunConfig, rng) -> List[Module]:
    base = {"D2": d2(), "D3": d3(), "A2": a2()}
    perms = {k: [int(i) for i in rng.permutation(a.dim)] for k, a in base.items()}
    palg = {k: permute_algebra(a, perms[k]) for k, a in base.items()}
    mods = forgetful_modules(cfg, base)
    owners = ["D2", "D3", "A2", "D2", "D3", "A2"] + ["A2"] * cfg.random_graded + ["D3"] * cfg.random_graded
    out = []
    for m, key in zip(mods, owners):
        mp = [int(i) for i in rng.permutation(m.dim)]
        out.append(permute_module(m, perms[key], mp, palg[key]))
    return out


def determinism(cfg: RunConfig = RunConfig()) -> CriterionResult:
    rng = np.random.default_rng(cfg.seed + 4242)

    def run():
        detail = {}
        # forgetful functor tables
        t1, w1 = forgetful_table(cfg, forgetful_modules(cfg))
        t2, w2 = forgetful_table(cfg, _permuted_forgetful_modules(cfg, rng))
        detail["forgetful_equal"] = t1 == t2
        # twisted resolutions
        qp = quantum_plane(2, 5)
        pa = [int(i) for i in rng.permutation(qp.a.dim)]
        pb = [int(i) for i in rng.permutation(qp.b.algebra.dim)]
        a_perm = permute_algebra(qp.a, pa)
        g_perm = permute_gamma_algebra(qp.b, pb)
        qp2 = smash(a_perm, g_perm, name="QP(2) permuted")
        r1 = twisted_table(cfg, qp)
        r2 = twisted_table(cfg, qp2)
        detail["twisted_equal"] = (r1.image_dims, r1.direct_dims) == (r2.image_dims, r2.direct_dims)
        # stratifying tables
        A2, D2 = a2(), d2()
        p2 = [int(i) for i in rng.permutation(A2.dim)]
        pd = [int(i) for i in rng.permutation(D2.dim)]
        A2p, D2p = permute_algebra(A2, p2), permute_algebra(D2, pd)
        s1 = stratifying_table(cfg)
        s2 = stratifying_table(cfg, A2p, D2p, A2.vector({"e2": 1})[p2], D2.vector({"x": 1})[pd])
        detail["stratifying_equal"] = s1 == s2
        ok = all(detail.values()) and w1 is None and w2 is None
        return ok, detail, None if ok else str(detail)

    return _timed(10, "dimension tables invariant under basis permutations", 120.0, run)


ALL_CRITERIA = [
    superfluous_oracle,
    superfluous_calculus,
    forgetful_functor,
    shift_twist,
    twisted_resolution,
    bar_certification,
    relative_equals_ordinary,
    stratifying_verdicts,
    quotient_functor,
    determinism,
]


def run_all(cfg: RunConfig = RunConfig(), only: Optional[List[int]] = None) -> List[CriterionResult]:
    out = []
    for k, fn in enumerate(ALL_CRITERIA, start=1):
        if only and k not in only:
            continue
        out.append(fn(cfg))
    return out

"""Acceptance criteria 1-10 at exact equality and within their runtime budgets.

Each test prints one ``[PASS]`` / ``[FAIL]`` line for its criterion.
"""
import pytest

from gradres import criteria
from gradres.config import RunConfig

CFG = RunConfig()


def report(capsys, res):
    with capsys.disabled():
        print("\n" + res.line())
    assert res.passed, res.witness
    assert res.within_budget, f"{res.seconds:.2f}s over the {res.budget:.0f}s budget"


def test_criterion_01_superfluous_oracle(capsys):
    res = criteria.superfluous_oracle(CFG)
    report(capsys, res)
    assert res.detail["submodules_checked"] > 0


def test_criterion_02_superfluous_calculus(capsys):
    res = criteria.superfluous_calculus(CFG)
    report(capsys, res)
    counts = res.detail
    # every property is exercised, and brute force participates
    assert counts["i"] > 0 and counts["ii"] > 0 and counts["iii"] > 0
    assert counts["brute_force_evaluations"] > 0


def test_criterion_03_forgetful_functor(capsys):
    res = criteria.forgetful_functor(CFG)
    report(capsys, res)
    dims = res.detail["dims"]
    assert len(dims) == 6 + 2 * CFG.random_graded
    assert dims[0] == [2, 2, 2, 2, 2]  # k over D2
    assert dims[1] == [3, 3, 3, 3, 3]  # k over D3
    assert dims[2] == [2, 1, 0, 0, 0]  # S1 over A2


def test_criterion_04_shift_twist(capsys):
    res = criteria.shift_twist(CFG)
    report(capsys, res)
    assert len(res.detail) == 6 and all(res.detail.values())


def test_criterion_05_twisted_resolution(capsys):
    res = criteria.twisted_resolution(CFG)
    report(capsys, res)
    assert res.detail["image_dims"] == [4, 4, 4, 4]
    assert res.detail["compare"] is True


def test_criterion_06_bar_complexes(capsys):
    res = criteria.bar_certification(CFG)
    report(capsys, res)
    assert len(res.detail) == 2 + 3 + 3  # D2 has one simple, A2 two
    assert res.detail["D2/field/S(0)"] == [2, 4, 8, 16, 32]


def test_criterion_07_relative_equals_ordinary(capsys):
    res = criteria.relative_equals_ordinary(CFG)
    report(capsys, res)
    assert len(res.detail) == 2 * 2 + 3 * 3


def test_criterion_08_stratifying(capsys):
    res = criteria.stratifying_verdicts(CFG)
    report(capsys, res)
    assert res.detail["A2/Ae2A"] == [1, 0, 0, 0, 0]
    assert res.detail["D2/(x)"][1] == 1
    assert res.detail["verdicts"] == [True, False]


def test_criterion_09_quotient_functor(capsys):
    res = criteria.quotient_functor(CFG)
    report(capsys, res)
    assert res.detail["positive"]["image_dims"] == [1, 0, 0, 0, 0]
    assert res.detail["negative_declined"] is True


def test_criterion_10_determinism(capsys):
    res = criteria.determinism(CFG)
    report(capsys, res)
    assert res.detail == {"forgetful_equal": True, "twisted_equal": True, "stratifying_equal": True}


@pytest.mark.parametrize("seed", [1, 2])
def test_other_seeds(seed):
    """The seeded suites pass for seeds other than the default."""
    cfg = RunConfig(seed=seed)
    for fn in (criteria.superfluous_oracle, criteria.superfluous_calculus, criteria.forgetful_functor):
        res = fn(cfg)
        assert res.passed, res.witness

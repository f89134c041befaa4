import io
import json
import os
import shutil

import pytest

from gradres.cli import run
from gradres.corpus import run_corpus
from gradres.config import RunConfig


def call(argv, data_dir):
    out = io.StringIO()
    cwd = os.getcwd()
    os.chdir(data_dir)
    try:
        code = run(argv, out)
    finally:
        os.chdir(cwd)
    return code, out.getvalue()


def call_json(argv, data_dir):
    code, text = call(argv + ["--format", "json"], data_dir)
    return code, json.loads(text)


def test_resolve_json(data_dir):
    code, rep = call_json(["resolve", "--algebra", "d2.json", "--module", "k.json", "--kmax", "4"], data_dir)
    assert code == 0 and rep["dims"] == [2, 2, 2, 2, 2]
    assert rep["verify"]["minimal"] is True


def test_verify_forgetful(data_dir):
    code, text = call(["verify", "thm2.6", "--algebra", "a2.json", "--module", "s1.json"], data_dir)
    assert code == 0
    assert "graded dims = ungraded dims = (2,1,0,0" in text


def test_malformed_json(tmp_path, data_dir):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, rep = call_json(["resolve", "--algebra", str(bad), "--module", "k.json"], data_dir)
    assert code == 2 and "invalid JSON" in rep["reason"]


def test_missing_file(data_dir):
    code, _ = call(["resolve", "--algebra", "nope.json", "--module", "k.json"], data_dir)
    assert code == 2


def test_bad_module_action(tmp_path, data_dir):
    mod = tmp_path / "m.json"
    mod.write_text(json.dumps({"dim": 1, "action": [[[1]], [[1]]]}))  # x acts invertibly on D2
    code, rep = call_json(["resolve", "--algebra", "d2.json", "--module", str(mod)], data_dir)
    assert code == 2 and rep["error"] == "invalid input"


def test_unknown_subcommand(data_dir):
    code, _ = call(["frobnicate"], data_dir)
    assert code == 2


@pytest.mark.parametrize("argv,expected", [
    (["stratify", "--algebra", "a2.json", "--ideal", "ideal_e2.json"], 0),
    (["stratify", "--algebra", "d2.json", "--ideal", "ideal_x.json"], 1),
    (["verify", "thm4.3", "--algebra", "a2.json", "--ideal", "e2", "--module", "s1.json"], 0),
    (["verify", "thm4.3", "--algebra", "d2.json", "--ideal", "x", "--module", "k.json"], 3),
    (["verify", "prop3.2", "--algebra", "f5_dual.json", "--gamma", "b_sigma2.json", "--bmodule", "k.json"], 0),
    (["verify", "thm3.6", "--algebra", "f5_dual.json", "--gamma", "b_sigma2.json", "--module", "k.json",
      "--bmodule", "regular.json", "--kmax", "3"], 0),
    (["verify", "prop4.1", "--algebra", "a2.json", "--ideal", "e2"], 0),
    (["verify", "prop4.2", "--algebra", "d2.json"], 0),
    (["verify", "prop1.5", "--algebra", "a2.json", "--instances", "20"], 0),
    (["bar", "--algebra", "a2.json", "--module", "s1.json", "--r", "vertices", "--kmax", "3"], 0),
    (["smash", "--algebra", "f5_dual.json", "--gamma", "b_sigma2.json"], 0),
    (["superfluous", "--algebra", "a2.json", "--module", "regular.json", "--vectors", "[[0,0,1]]",
      "--bruteforce"], 0),
])
def test_exit_codes(argv, expected, data_dir):
    code, text = call(argv, data_dir)
    assert code == expected, text


def test_tor_commands(data_dir):
    code, rep = call_json(["tor", "--algebra", "d2.json", "--right", "k.json", "--module", "k.json"], data_dir)
    assert code == 0 and rep["dims"] == [1, 1, 1, 1, 1]
    code, rep = call_json(["rtor", "--algebra", "d2.json", "--right", "k.json", "--module", "k.json",
                           "--r", "field"], data_dir)
    assert code == 0 and rep["dims"] == [1, 1, 1, 1, 1] and rep["kind"] == "relative"


def test_twisted_declines_with_zero_action(tmp_path, data_dir):
    gam = json.load(open(os.path.join(data_dir, "b_sigma2.json")))
    gam["action"] = [[1, 0], [0, 0]]
    path = tmp_path / "b0.json"
    path.write_text(json.dumps(gam))
    code, rep = call_json(["verify", "thm3.6", "--algebra", "f5_dual.json", "--gamma", str(path),
                           "--module", "k.json", "--bmodule", "regular.json", "--kmax", "3"], data_dir)
    assert code == 3 and rep["failing_shift"] == 1


def test_smash_json_round_trip(tmp_path, data_dir):
    code, rep = call_json(["smash", "--algebra", "f5_dual.json", "--gamma", "b_sigma2.json"], data_dir)
    assert code == 0
    path = tmp_path / "qp.json"
    path.write_text(json.dumps(rep))
    code2, res = call_json(["resolve", "--algebra", str(path), "--module", "k.json", "--kmax", "2"], data_dir)
    assert code2 == 0 and res["dims"] == [4, 8, 12]


def test_exit_code_deterministic(data_dir):
    argv = ["verify", "prop1.5", "--algebra", "d2.json", "--instances", "10", "--seed", "3"]
    assert call(argv, data_dir) == call(argv, data_dir)


def test_corpus_directory(data_dir):
    code, text = call(["corpus", "--dir", "corpus"], data_dir)
    assert code == 0 and "FAIL" not in text


def test_corpus_negative_control(data_dir):
    code, rep = call_json(["corpus", "--dir", "corpus_negative"], data_dir)
    assert code == 1
    failing = [c for c in rep["cases"] if not c["passed"]]
    assert [c["case"] for c in failing] == ["s2_nonminimal.json"]
    assert "superfluous" in failing[0]["witness"]


def test_corpus_empty(tmp_path, data_dir):
    code, _ = call(["corpus", "--dir", str(tmp_path)], data_dir)
    assert code == 2


def test_corpus_injected_case(tmp_path, data_dir):
    case = json.load(open(os.path.join(data_dir, "corpus_negative", "s2_nonminimal.json")))
    case["algebra"] = os.path.join(data_dir, "a2.json")
    case["module"] = os.path.join(data_dir, "s2.json")
    (tmp_path / "injected.json").write_text(json.dumps(case))
    shutil.copy(os.path.join(data_dir, "corpus", "criterion_4.json"), tmp_path)
    code, summary = run_corpus(RunConfig(), str(tmp_path))
    assert code == 1
    assert [c["passed"] for c in summary["cases"]] == [True, False]


def test_builtin_corpus_subset():
    code, summary = run_corpus(RunConfig(), None, [4, 8])
    assert code == 0 and len(summary["lines"]) == 2

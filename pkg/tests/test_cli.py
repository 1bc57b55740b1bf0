import json
from pathlib import Path

import pytest

from palgebra.cli import main


PKG = Path(__file__).resolve().parent.parent / "src" / "palgebra"
MODELS, CORPUS_DIR = PKG / "models", PKG / "corpus"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_prove_found(capsys):
    code, out, _ = run(capsys, "prove", "a & b, ~b |-")
    assert code == 0 and "\ngoal s3 " in out and "LLAndIntro" in out


def test_prove_refuted(capsys):
    code, out, _ = run(capsys, "prove", "a, b, ~a |-")
    assert code == 1 and "refuted" in out


def test_prove_json(capsys):
    code, out, _ = run(capsys, "prove", "a, ~a |-", "--json")
    payload = json.loads(out[out.index("{"):])
    assert code == 0 and payload["found"] and payload["script"]


def test_validate_exit_codes(capsys):
    code, out, _ = run(capsys, "validate", "a, b, ~a |-", "--model", "subspace:dim=2", "--seed", "3")
    assert code == 1 and "seed=3" in out
    code, out, _ = run(capsys, "validate", "a, ~a |-", "--model", "mo:2")
    assert code == 0


def test_seed_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("PALGEBRA_SEED", "77")
    code, out, _ = run(capsys, "countermodel", "a, b, ~a |-")
    assert code == 0 and "seed=77" in out


def test_countermodel_none(capsys):
    code, out, _ = run(capsys, "countermodel", "a, ~a |-", "--trials", "20")
    assert code == 1 and "no countermodel" in out


def test_countermodel_json(capsys):
    code, out, _ = run(capsys, "countermodel", "a & b, ~(b & a) |-", "--json")
    payload = json.loads(out[out.index("{"):])
    assert code == 0 and payload["model"] == "mo:2"


@pytest.mark.parametrize("argv", [
    ["validate", "a |-", "--model", "nonsense"],
    ["validate", "a |-", "--model", "subspace:dim=0"],
    ["validate", "a & |-", "--model", "mo:2"],
    ["enumerate", "--size", "9"],
    ["quotient", "--atoms", "4", "--depth", "1"],
    ["prove", "a |- a", "--depth", "0"],
    ["check-proof", "/nonexistent/path"],
])
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and "palgebra: error:" in err


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["validate", "a |-"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["laws", "--model", "mo:2", "--jobs", "0"])
    assert exc.value.code == 2


def test_check_proof_corpus(capsys):
    code, out, _ = run(capsys, "check-proof", str(CORPUS_DIR))
    assert code == 0 and "accepted" in out and "FAIL" not in out


def test_check_proof_rejects(capsys, tmp_path):
    bad = tmp_path / "bad.proof"
    bad.write_text('s1 = NAxiom formula="a" => "a, ~a |-"\ngoal s1 "a, a |-"\n')
    code, out, _ = run(capsys, "check-proof", str(bad))
    assert code == 1 and "FAIL" in out


def test_laws_pass_and_fail(capsys):
    code, out, _ = run(capsys, "laws", "--model", "mo:2", "--suite", "axioms", "--budget", "50")
    assert code == 0 and "seed=0" in out
    code, out, _ = run(capsys, "laws", "--model", f"file:{MODELS / 'o6.palg'}", "--budget", "50")
    assert code == 1 and "FAIL" in out


def test_laws_json(capsys):
    code, out, _ = run(capsys, "laws", "--model", "bool2", "--suite", "theorems", "--budget", "20", "--json")
    start = out.index("[")
    rows = json.loads(out[start: out.rindex("]") + 1])
    assert code == 0 and rows and all("law" in r or "name" in r or "id" in r for r in rows)


def test_enumerate_out(capsys, tmp_path):
    code, out, _ = run(capsys, "enumerate", "--size", "4", "--out", str(tmp_path))
    files = list(tmp_path.glob("*.palg"))
    assert code == 0 and files
    code, _, _ = run(capsys, "laws", "--model", f"file:{files[0]}", "--budget", "20")
    assert code == 0


def test_quotient(capsys):
    code, out, _ = run(capsys, "quotient", "--atoms", "1", "--depth", "2", "--time-limit", "2")
    assert code == 0 and "0 unknown pairs" in out

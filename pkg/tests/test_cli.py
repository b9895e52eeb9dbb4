import json

import pytest

from conftest import AC2, CH2, PT
from sclat.asc import AscBase
from sclat.cli import main
from sclat.io import base_to_json, load_base, same_presentation, write_json


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, base in {
        "ch2": CH2(),
        "pt1": PT(1),
        "pt2": PT(2),
        "ac2": AscBase(AC2(), {"a1": 1, "a2": 2}),
    }.items():
        paths[name] = tmp_path / f"{name}.json"
        write_json(paths[name], base_to_json(base))
    return paths


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--json")
    return code, json.loads(out) if out else None, err


def test_axioms_ch2(capsys, files):
    code, doc, _ = run_json(capsys, "axioms", files["ch2"])
    assert code == 0 and doc["ok"]
    verdicts = {v["name"]: v["passed"] for v in doc["verdicts"]}
    assert all(verdicts[f"SS{i}"] for i in range(1, 7)) and verdicts["SC0"]


def test_axioms_pt1_is_subscaled_only(capsys, files):
    code, doc, _ = run_json(capsys, "axioms", files["pt1"], "--catenarity")
    assert code == 0 and doc["classification"] == "subscaled only"
    assert doc["catenarity"]["catenary"] is False


def test_represent_then_validate(capsys, files, tmp_path):
    out = tmp_path / "rep"
    code, _, _ = run(capsys, "represent", files["ch2"], "-o", out)
    assert code == 0
    assert (out / "X.sls.json").exists() and (out / "phi.map.json").exists()
    code, doc, _ = run_json(capsys, "validate-embedding", out)
    assert code == 0 and doc["is_embedding"]


def test_represent_asc_then_validate(capsys, files, tmp_path):
    out = tmp_path / "rep"
    assert run(capsys, "represent-asc", files["ac2"], "--N", 3, "-o", out)[0] == 0
    code, doc, _ = run_json(capsys, "validate-embedding", out)
    assert code == 0 and doc["asc_atoms"]


def test_sat_unsat(capsys):
    code, out, _ = run(capsys, "sat", "--d", 1, "--formula", r"C0(x) /\ C1(x) != 0")
    assert code == 0 and out.startswith("UNSAT")


def test_sat_capped_exit_two(capsys):
    code, doc, _ = run_json(capsys, "sat", "--d", 2, "--formula", r"C0(x) /\ C2(x) != 0", "--max-bases", 20)
    assert code == 2 and doc["exhaustive"] is False


def test_decide_with_prime(capsys, files):
    code, doc, _ = run_json(
        capsys, "decide", "--theory", "T1", "--prime", files["pt1"], "--formula", r"E x . x != 0 /\ x != 1 /\ C0(x) = x"
    )
    assert code == 0 and doc["verdict"] == "TRUE"
    assert doc["witness"]["lattice"]["format"] == "sclat/1"


def test_decide_refusal(capsys, files):
    code, _, err = run(capsys, "decide", "--prime", files["ch2"], "--formula", "E x . x = 0")
    assert code == 1 and json.loads(err)["error"]


def test_eval(capsys, files):
    code, out, _ = run(capsys, "eval", files["ch2"], "--term", "C0(x)", "--assign", "x=p")
    assert code == 0 and "p" in out
    code, doc, _ = run_json(capsys, "eval", files["ch2"], "--formula", r"(C0(x) /\ C1(x)) = 0", "--assign", "x=1")
    assert code == 0 and doc["value"] is True


def test_dim_and_canon(capsys, files):
    code, doc, _ = run_json(capsys, "dim", files["ch2"], "p,q")
    assert code == 0 and doc["dim"] == 1
    code, a, _ = run(capsys, "canon", files["ch2"])
    code, b, _ = run(capsys, "canon", files["ch2"])
    assert a == b and all(c in "0123456789abcdef" for c in a.strip())


def test_iso_and_theory_eq(capsys, files):
    assert run(capsys, "iso", files["pt1"], files["pt2"])[1].strip() == "false"
    assert run(capsys, "theory-eq", files["pt1"], files["pt1"])[1].strip() == "true"
    assert run(capsys, "theory-eq", files["pt1"], files["pt2"], "--asc")[1].strip() == "false"


def test_enumerate(capsys, tmp_path):
    code, doc, _ = run_json(capsys, "enumerate", "--d", 0, "--max-irr", 2, "-o", tmp_path / "all")
    assert code == 0 and doc["count"] == 3
    assert len(list((tmp_path / "all").iterdir())) == 3


def test_extend_and_split_round_trip(capsys, files, tmp_path):
    sig = tmp_path / "sig.json"
    sig.write_text(json.dumps({"g": "q", "H": [["p"], ["p"]], "q": 1}))
    out = tmp_path / "ext.json"
    code, _, _ = run(capsys, "extend", files["ch2"], sig, "-o", out, "--embedding", tmp_path / "emb.json")
    assert code == 0 and load_base(out).poset.n == 3
    code, doc, _ = run_json(capsys, "split", files["ch2"], "--a", "1", "--b1", "p", "--b2", "0")
    assert code == 0


def test_prime_output_round_trips(capsys, files, tmp_path):
    out = tmp_path / "prime.json"
    code, doc, _ = run_json(capsys, "prime", files["ch2"], "-o", out)
    assert code == 0
    assert same_presentation(load_base(out), load_base(out))
    assert json.loads(out.read_text()) == doc


def test_seed_gives_identical_output(capsys, files):
    a = run(capsys, "axioms", files["ch2"], "--mode", "sampled", "--seed", 7, "--json")[1]
    b = run(capsys, "axioms", files["ch2"], "--mode", "sampled", "--seed", 7, "--json")[1]
    assert a == b


@pytest.mark.parametrize(
    "argv",
    [
        ["validate", "missing.json"],
        ["dim", "{ch2}", "zz"],
        ["sat", "--d", "1", "--formula", "x = "],
        ["decide", "--formula", "E x . x = 0"],
        ["sat"],
    ],
)
def test_errors_exit_one(capsys, files, argv):
    argv = [a.format(ch2=files["ch2"]) for a in argv]
    assert run(capsys, *argv)[0] == 1


def test_ill_formed_file(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"d": 0, "poset": {"elements": ["p"]}, "dimlabel": {"p": 4}}))
    code, _, err = run(capsys, "validate", bad)
    assert code == 1 and "error" in json.loads(err)

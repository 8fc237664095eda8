import json
from importlib import resources
from pathlib import Path

import pytest

from mapscat.cli import main

DATA = resources.files("mapscat").joinpath("data")
A2 = str(DATA / "a2.alg")
GOLDEN = DATA / "golden"


def golden_bytes(name: str) -> str:
    return (GOLDEN / name).read_text(encoding="utf-8")


def test_verify_example_matches_golden(tmp_path, capsys):
    out = tmp_path / "report.json"
    assert main(["verify-example", A2, "--out", str(out)]) == 0
    assert out.read_text() == golden_bytes("a2_verify.json")
    report = json.loads(out.read_text())
    assert report["results"]["pass"] is True
    assert report["results"]["primes_agree"] is True
    names = [c["name"] for c in report["results"]["runs"][0]["checks"]]
    assert names == [
        "lambda-indecomposables",
        "projective-gamma-modules",
        "sequence-a",
        "sequence-b",
        "sequence-c",
        "phi-chain",
        "auslander-presentation",
    ]
    capsys.readouterr()


def test_verify_example_bundled_default(capsys):
    assert main(["verify-example"]) == 0
    capsys.readouterr()


def test_ar_quiver_golden_outputs(tmp_path, capsys):
    for side in ("gamma", "lambda", "functors"):
        prefix = tmp_path / f"q_{side}"
        assert main(["ar-quiver", A2, "--side", side, "--out", str(prefix)]) == 0
        assert Path(f"{prefix}.json").read_text() == golden_bytes(f"a2_ar_{side}.json")
        assert Path(f"{prefix}.dot").read_text() == golden_bytes(f"a2_ar_{side}.dot")
    capsys.readouterr()


def test_ar_quiver_is_deterministic(tmp_path, capsys):
    a, b = tmp_path / "one", tmp_path / "two"
    assert main(["ar-quiver", A2, "--side", "gamma", "--out", str(a)]) == 0
    assert main(["ar-quiver", A2, "--side", "gamma", "--out", str(b)]) == 0
    assert Path(f"{a}.json").read_bytes() == Path(f"{b}.json").read_bytes()
    assert Path(f"{a}.dot").read_bytes() == Path(f"{b}.dot").read_bytes()
    capsys.readouterr()


def test_ar_quiver_bound_exceeded(tmp_path, capsys):
    prefix = tmp_path / "tiny"
    code = main(["ar-quiver", A2, "--side", "gamma", "--dim-bound", "1", "--out", str(prefix)])
    assert code == 3
    report = json.loads(Path(f"{prefix}.json").read_text())
    assert report["results"]["complete"] is False
    capsys.readouterr()


def test_check_tilting_classical_golden(tmp_path, capsys):
    out = tmp_path / "t.json"
    code = main(
        [
            "check-tilting",
            A2,
            "--names",
            "idS1,idS2,idP1,yS1,yS2,yP1",
            "--mode",
            "classical",
            "--out",
            str(out),
        ]
    )
    assert code == 0
    assert out.read_text() == golden_bytes("a2_tilting_classical.json")
    capsys.readouterr()


def test_check_tilting_generalized_golden(tmp_path, capsys):
    out = tmp_path / "t.json"
    code = main(
        [
            "check-tilting",
            A2,
            "--names",
            "idS1,idS2,idP1,yS1,yS2,yP1",
            "--mode",
            "generalized",
            "--out",
            str(out),
        ]
    )
    assert code == 0
    assert out.read_text() == golden_bytes("a2_tilting_generalized.json")
    capsys.readouterr()


def test_check_tilting_negative_verdict(tmp_path, capsys):
    # the four projective modules of the triangular algebra fail the
    # coresolution axiom
    out = tmp_path / "t.json"
    code = main(
        ["check-tilting", A2, "--names", "idS2,idP1,yS2,yP1", "--out", str(out)]
    )
    assert code == 1
    report = json.loads(out.read_text())
    assert report["results"]["checks"]["projectives-coresolved"]["status"] == "fail"
    capsys.readouterr()


def test_check_tilting_unknown_name(capsys):
    assert main(["check-tilting", A2, "--names", "nosuch"]) == 2
    capsys.readouterr()


def test_approx_golden(tmp_path, capsys):
    out = tmp_path / "a.json"
    code = main(
        ["approx", A2, "--object", "f", "--corpus", "epimaps", "--side", "right", "--out", str(out)]
    )
    assert code == 0
    assert out.read_text() == golden_bytes("a2_approx_f_right_epimaps.json")
    report = json.loads(out.read_text())
    assert report["results"]["certified"] is True
    capsys.readouterr()


def test_approx_named_corpus(tmp_path, capsys):
    out = tmp_path / "a.json"
    code = main(
        ["approx", A2, "--object", "yS1", "--corpus", "g,idP1", "--side", "left", "--out", str(out)]
    )
    assert code == 0
    report = json.loads(out.read_text())
    assert report["results"]["family"] == "epimaps"
    capsys.readouterr()


def test_approx_mixed_corpus_is_an_input_error(capsys):
    assert main(["approx", A2, "--object", "g", "--corpus", "f,g", "--side", "right"]) == 2
    capsys.readouterr()


def test_approx_unknown_object(capsys):
    assert main(["approx", A2, "--object", "nosuch"]) == 2
    capsys.readouterr()


def test_corrupted_relation_is_an_input_error(tmp_path, capsys):
    bad = tmp_path / "bad.alg"
    bad.write_text("field p=101\nvertices 2\narrow a: 1 -> 2\nrelation 1*a = 0\n")
    assert main(["verify-example", str(bad)]) == 2
    err = capsys.readouterr().err
    assert "line 4" in err


def test_missing_file_is_an_input_error(capsys):
    assert main(["ar-quiver", "/no/such/file.alg"]) == 2
    capsys.readouterr()


def test_verify_example_needs_the_two_vertex_algebra(capsys):
    assert main(["verify-example", str(DATA / "a3_linear.alg")]) == 2
    capsys.readouterr()

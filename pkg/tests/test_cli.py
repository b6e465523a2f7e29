import json

import pytest

from dedesum.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    lines = [json.loads(line) for line in out.splitlines()]
    return code, lines, err


def results(lines):
    return [r for r in lines if r["type"] == "result"]


def test_chars(capsys):
    code, lines, _ = run(capsys, "chars", "--modulus", "3", "--primitive")
    assert code == 0
    (rec,) = results(lines)
    assert rec["parity"] == -1 and rec["label"] == "3:1"
    assert lines[-1]["type"] == "report" and lines[-1]["failures"] == 0

    code, lines, _ = run(capsys, "chars", "--modulus", "9", "--primitive")
    assert len(results(lines)) == 4


def test_chars_bad_modulus(capsys):
    code, lines, err = run(capsys, "chars", "--modulus", "0")
    assert code == 2 and lines == []
    assert "--modulus" in err


def test_eval_identity_and_fixture_value(capsys):
    code, lines, _ = run(capsys, "eval", "--chi1", "3:1", "--chi2", "3:1", "--matrix", "1,0,0,1")
    assert code == 0
    assert results(lines)[0]["value"] == {"order": 2, "coeffs": ["0/1"]}

    code, lines, _ = run(capsys, "eval", "--chi1", "3:1", "--chi2", "3:1", "--bottom", "9,5")
    rec = results(lines)[0]
    assert rec["matrix"] == {"a": "2", "b": "1", "c": "9", "d": "5", "level": 9}
    assert rec["value"]["coeffs"] == ["2/3"]

    code, lines, _ = run(capsys, "eval", "--chi1", "3:1", "--chi2", "3:1", "--bottom", "9,5", "--direct")
    assert results(lines)[0]["value"]["coeffs"] == ["2/3"]


def test_eval_errors(capsys):
    code, _, err = run(capsys, "eval", "--chi1", "3:1", "--chi2", "5:2", "--bottom", "15,1")
    assert code == 2 and "chi1*chi2(-1) = 1" in err
    code, _, err = run(capsys, "eval", "--chi1", "3:1", "--chi2", "3:1", "--matrix", "2,0,9,1")
    assert code == 2 and "Gamma_0(9)" in err
    code, _, err = run(capsys, "eval", "--chi1", "3:1", "--chi2", "3:1", "--bottom", "9")
    assert code == 2


def test_verify_small_suite(capsys):
    code, lines, err = run(capsys, "verify", "--suite", "cocycle", "--max-level", "12", "--samples", "5", "--seed", "7")
    assert code == 0
    assert lines[-1]["failures"] == 0 and lines[-1]["results"] > 0
    assert "cocycle:" in err


def test_verify_unknown_suite(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--suite", "nope"])
    assert exc.value.code == 2


def _strip_timing(lines):
    return [{k: v for k, v in r.items() if k != "elapsed_ms"} for r in lines]


def test_verify_output_independent_of_worker_count(capsys):
    argv = ["verify", "--suite", "reciprocity", "--max-level", "16", "--samples", "4", "--seed", "3"]
    _, serial, _ = run(capsys, *argv, "--workers", "1")
    _, parallel, _ = run(capsys, *argv, "--workers", "3")
    assert _strip_timing(serial)[:-1] == _strip_timing(parallel)[:-1]


def test_fixture_round_trip(tmp_path, capsys):
    path = tmp_path / "fx.json"
    code, _, _ = run(capsys, "fixtures", "--write", str(path), "--max-level", "12")
    assert code == 0
    code, lines, _ = run(capsys, "fixtures", "--check", str(path))
    assert code == 0 and results(lines)[0]["checked"] > 0


def test_fixture_hand_edit_is_named(tmp_path, capsys):
    path = tmp_path / "fx.json"
    run(capsys, "fixtures", "--write", str(path), "--max-level", "12")
    entries = json.loads(path.read_text())
    target = next(i for i, e in enumerate(entries) if e["value"]["coeffs"] != ["0/1"])
    entries[target]["value"]["coeffs"][0] = "123/1"
    path.write_text(json.dumps(entries))
    code, lines, _ = run(capsys, "fixtures", "--check", str(path))
    assert code == 1
    (fail,) = [r for r in lines if r["type"] == "failure"]
    assert fail["case"]["index"] == target
    assert fail["delta"] > 0


def test_fixture_missing_file(tmp_path, capsys):
    code, _, err = run(capsys, "fixtures", "--check", str(tmp_path / "absent.json"))
    assert code == 2 and "not found" in err


def test_committed_fixtures_still_hold(capsys):
    from pathlib import Path

    path = Path(__file__).resolve().parent.parent / "fixtures" / "dedekind_sums.json"
    code, lines, _ = run(capsys, "fixtures", "--check", str(path))
    assert code == 0, [r for r in lines if r["type"] == "failure"]

from __future__ import annotations

import json

import pytest

from advice_kit.cli import (
    EXIT_DIVERGED,
    EXIT_OK,
    EXIT_PARSE,
    EXIT_REFUTED,
    EXIT_REPLAY_MISMATCH,
    EXIT_USAGE,
    main,
)


def run(capsys, *argv: str) -> tuple[int, dict]:
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else {})


def test_complexity_exact_profile(capsys):
    code, report = run(capsys, "complexity", "--machine", "identity", "--kmax", "8", "--mode", "exact")
    assert code == EXIT_OK
    assert report["payload"]["points"] == [[k, 2 * k] for k in range(1, 9)]
    assert report["payload"]["mode"] == "exact"
    assert report["command"][0] == "--fuel"


def test_complexity_bound_check(capsys):
    _, report = run(capsys, "complexity", "--machine", "identity", "--kmax", "4", "--bound", "1", "1")
    assert report["payload"]["bound"] == {"c": 1, "d": 1, "verdict": "reject", "violatingK": 1}


def test_solve_llpo(capsys, fixture_dir):
    code, report = run(capsys, "solve", "--fixture", str(fixture_dir / "llpo.txt"), "--depth", "8")
    assert code == EXIT_OK
    assert report["payload"]["problem"] == "LLPO"
    assert report["payload"]["verifier"] == "consistent"
    assert report["depth"] == 8


def test_solve_eigenvector_fixture(capsys, fixture_dir):
    code, report = run(capsys, "solve", "--fixture", str(fixture_dir / "seigen2.txt"), "--depth", "24")
    assert code == EXIT_OK
    assert "enclosure" not in report["payload"]
    assert report["payload"]["oracle"] == "least"


def test_reduce_mlpo_through_linear_equations(capsys, fixture_dir):
    code, report = run(capsys, "reduce", "--witness", "mlpo-lineq", "--fixture", str(fixture_dir / "mlpo3.txt"))
    payload = report["payload"]
    assert code == EXIT_OK
    assert payload["answer"] == "1"
    assert payload["verifier"] == "consistent"
    assert payload["target"] == "LINEQ_2_3"
    assert payload["rounds"] >= 1


def test_reduce_rejects_a_foreign_fixture(capsys, fixture_dir):
    assert main(["reduce", "--witness", "llpo-seigen2", "--fixture", str(fixture_dir / "mlpo3.txt")]) == EXIT_USAGE
    assert "reduces LLPO" in capsys.readouterr().err


def test_advice_run_with_right_and_wrong_advice(capsys, fixture_dir):
    circle = str(fixture_dir / "circle.txt")
    code, report = run(capsys, "advice-run", "--machine", "circle", "--fixture", circle, "--advice", "nat 1")
    assert code == EXIT_OK
    assert report["payload"]["adviceInSet"] is True
    code, report = run(capsys, "advice-run", "--machine", "circle", "--fixture", circle, "--advice", "nat 0")
    assert code == EXIT_REFUTED
    assert report["payload"]["verifier"] == "refuted"


def test_advice_run_that_diverges(capsys, fixture_dir):
    lpo = str(fixture_dir / "lpo3.txt")
    argv = ["--fuel", "5000", "advice-run", "--machine", "lpo-count:3", "--fixture", lpo, "--advice", "nat 0", "--depth", "3"]
    code, report = run(capsys, *argv)
    assert code == EXIT_DIVERGED
    assert "diverged" in report["payload"]


def test_estimate_on_half_the_cantor_space(capsys):
    argv = ["estimate", "--machine", "pc-cantor", "--set", "closed{complement: 1}", "--trials", "200", "--seed", "42", "--depth", "8"]
    code, report = run(capsys, *argv)
    payload = report["payload"]
    assert code == EXIT_OK
    assert payload["trials"] == 200
    assert 0.35 < payload["pointEstimate"] < 0.65
    assert payload["measureBounds"] == ["0/1", "1/2"]
    assert report["seed"] == 42


def test_estimate_is_independent_of_jobs(capsys):
    argv = ["estimate", "--machine", "pc-cantor", "--set", "closed{complement: 0,1}", "--trials", "40", "--seed", "7", "--depth", "6"]
    _, serial = run(capsys, *argv)
    _, threaded = run(capsys, "--jobs", "3", *argv)
    assert serial["payload"] == threaded["payload"]


@pytest.mark.parametrize(
    "argv",
    [
        ["solve", "--fixture", "seigen2.txt", "--oracle", "greatest-neg"],
        ["reduce", "--witness", "mlpo-lineq", "--fixture", "mlpo3.txt"],
        ["complexity", "--machine", "bit-doubling", "--kmax", "6", "--bound", "4", "1"],
        ["demo"],
    ],
    ids=["solve", "reduce", "complexity", "demo"],
)
def test_output_bytes_do_not_depend_on_jobs(capsys, fixture_dir, argv):
    argv = [str(fixture_dir / token) if token.endswith(".txt") else token for token in argv]
    outputs = []
    for jobs in ("1", "8"):
        main(["--jobs", jobs, *argv])
        outputs.append(capsys.readouterr().out)
    assert outputs[0]
    assert outputs[0] == outputs[1]


def test_replay_matches_and_detects_changes(capsys, tmp_path):
    _, report = run(capsys, "complexity", "--machine", "bitflip", "--kmax", "4")
    saved = tmp_path / "report.json"
    saved.write_text(json.dumps(report), encoding="utf-8")
    code, replayed = run(capsys, "--replay", str(saved))
    assert code == EXIT_OK
    assert replayed["payload"] == report["payload"]

    report["payload"]["points"][0] = [1, 99]
    saved.write_text(json.dumps(report), encoding="utf-8")
    code, _ = run(capsys, "--replay", str(saved))
    assert code == EXIT_REPLAY_MISMATCH


def test_demo(capsys):
    code, report = run(capsys, "demo")
    payload = report["payload"]
    assert code == EXIT_OK
    assert payload["circle"]["1/3"]["adviceSet"] == "{1}"
    assert payload["fpVersusFnp"]["directRejectsAllBounds"] is True
    assert payload["fpVersusFnp"]["gBound"]["verdict"] == "accept"


@pytest.mark.parametrize(
    "argv",
    [
        ["complexity", "--machine", "spiral", "--kmax", "3"],
        ["advice-run", "--machine", "spiral", "--fixture", "unused.txt", "--advice", "nat 0"],
        [],
    ],
)
def test_usage_errors(argv, capsys):
    assert main(argv) == EXIT_USAGE
    assert capsys.readouterr().out == ""


def test_argparse_errors_exit_with_usage_code(capsys):
    with pytest.raises(SystemExit) as excinfo:
        main(["complexity", "--machine", "identity"])
    assert excinfo.value.code == EXIT_USAGE


def test_parse_errors(capsys, fixture_dir, tmp_path):
    assert main(["solve", "--fixture", str(fixture_dir / "broken.txt")]) == EXIT_PARSE
    assert main(["solve", "--problem", "LPO", "--fixture", str(tmp_path / "absent.txt")]) == EXIT_PARSE
    assert main(["--replay", str(fixture_dir / "llpo.txt")]) == EXIT_PARSE


@pytest.mark.parametrize("key, value", [("ADVICE_KIT_FUEL", "lots"), ("ADVICE_KIT_DEPTH", "-3"), ("ADVICE_KIT_JOBS", "0")])
def test_bad_environment_overrides_are_usage_errors(key, value, monkeypatch, capsys):
    monkeypatch.setenv(key, value)
    assert main(["complexity", "--machine", "identity", "--kmax", "2"]) == EXIT_USAGE
    captured = capsys.readouterr()
    assert captured.out == ""
    assert key in captured.err


def test_environment_fuel_reaches_the_report(monkeypatch, capsys):
    monkeypatch.setenv("ADVICE_KIT_FUEL", "50_000")
    _, report = run(capsys, "complexity", "--machine", "identity", "--kmax", "2")
    assert report["fuel"] == 50000

from __future__ import annotations

from fractions import Fraction

import pytest

from advice_kit.errors import FixtureParseError
from advice_kit.fixtures import Fixture, fixture_from_values, load_fixture, parse_fixture, parse_value, rational_fixture
from advice_kit.intervals import Interval
from advice_kit.names import BINARY, Prefix
from advice_kit.problems import Verdict
from advice_kit.reports import RunReport, jsonable, load_report, same_payload
from advice_kit.spaces.reals import exact_value


def test_fixture_files_parse(fixture_dir):
    fixture = load_fixture(fixture_dir / "mlpo3.txt")
    assert fixture.problem_id == "MLPO_3"
    assert [exact_value(c) for c in fixture.components] == [0, Fraction(1, 2), Fraction(1, 4)]
    assert fixture.source.endswith("mlpo3.txt")


def test_single_component_is_the_instance(fixture_dir):
    fixture = load_fixture(fixture_dir / "circle.txt")
    assert exact_value(fixture.instance) == Fraction(1, 3)


def test_matrix_rows(fixture_dir):
    fixture = load_fixture(fixture_dir / "seigen2.txt")
    assert [exact_value(c) for c in fixture.components] == [2, 1, 1, 2]


@pytest.mark.parametrize(
    "text, symbols",
    [
        ("bits 1,0", (1, 0, 0)),
        ("nat 7", (7, 7, 7)),
        ("name alphabet:bin;prefix:1;period:0,1", (1, 0, 1)),
        ("set closed{complement: 1}", (2, 1, 0)),
    ],
)
def test_component_values(text, symbols):
    assert parse_value(text).take(3).symbols == symbols


@pytest.mark.parametrize("text", ["nat -1", "real 1/0", "colour red", "bits 0,x", "name alphabet:bin"])
def test_bad_component_values(text):
    with pytest.raises(FixtureParseError):
        parse_value(text)


@pytest.mark.parametrize(
    "text",
    [
        "problem LLPO",
        "x1: bits 1",
        "x0: bits 1\nx0: bits 0",
        "colour: red",
        "matrix: 1, 2; 3",
    ],
)
def test_bad_fixture_text(text):
    with pytest.raises(FixtureParseError):
        parse_fixture(text)


def test_broken_fixture_file_names_the_line(fixture_dir):
    with pytest.raises(FixtureParseError, match="broken.txt:2"):
        load_fixture(fixture_dir / "broken.txt")


def test_missing_fixture_file(tmp_path):
    with pytest.raises(FixtureParseError):
        load_fixture(tmp_path / "absent.txt")


def test_comments_and_blank_lines():
    fixture = parse_fixture("# header\n\nproblem: LPO  # trailing\nx0: bits 0\n")
    assert fixture.problem_id == "LPO"
    assert len(fixture.components) == 1


def test_fixture_without_components():
    with pytest.raises(FixtureParseError):
        Fixture("LPO", ()).instance


def test_fixtures_from_values():
    fixture = fixture_from_values(["real 1/2", "nat 2"], "ID_REAL")
    assert fixture.problem_id == "ID_REAL"
    assert fixture.components[1].take(2).symbols == (2, 2)
    assert exact_value(rational_fixture([Fraction(-3, 4)]).instance) == Fraction(-3, 4)


def test_jsonable_values():
    assert jsonable(Interval.of(Fraction(1, 2), 1)) == ["1/2", "1/1"]
    assert jsonable(Verdict.REFUTED) == "refuted"
    assert jsonable(Prefix(BINARY, (0, 1))) == [0, 1]
    assert jsonable({3: (Fraction(1, 3),)}) == {"3": ["1/3"]}


def test_reports_serialize_deterministically():
    first = RunReport(("solve",), None, 8, 100, {"b": 1, "a": Fraction(1, 2)})
    second = RunReport(("solve",), None, 8, 100, {"a": Fraction(1, 2), "b": 1})
    assert first.to_json() == second.to_json()
    assert '"payload":{"a":"1/2","b":1}' in first.to_json()


def test_report_round_trip(tmp_path):
    report = RunReport(("estimate", "--seed", "3"), 3, 16, 1000, {"successes": 5})
    path = tmp_path / "report.json"
    path.write_text(report.to_json(), encoding="utf-8")
    loaded = load_report(path)
    assert loaded.command == report.command
    assert (loaded.seed, loaded.depth, loaded.fuel) == (3, 16, 1000)
    assert same_payload(loaded, report)
    assert not same_payload(loaded, RunReport(report.command, 3, 16, 1000, {"successes": 6}))


@pytest.mark.parametrize("text", ["not json", "{}", '{"command": ["x"], "fuel": "many"}'])
def test_bad_reports(text):
    with pytest.raises(FixtureParseError):
        RunReport.from_json(text)


def test_missing_report(tmp_path):
    with pytest.raises(FixtureParseError):
        load_report(tmp_path / "absent.json")

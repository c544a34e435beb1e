"""Test reading and writing of the JSON file formats."""

import io
import json
from fractions import Fraction
from importlib import resources

import jsonschema
import pytest
from hamcrest import assert_that, has_entries, has_key, is_, not_

from rankdrop.classifier import classify
from rankdrop.cubic_surface import cubic_form, double_six, pencil_from_config
from rankdrop.errors import ConfigFormatError
from rankdrop.file_format import (
    ConfigFile,
    convert_class_keys,
    dumps,
    file_format_converter,
    load_config,
    parse_config,
    report_file,
    surface_file,
)
from rankdrop.projective import PointP2
from tests import TEST_DATA, load_fixture


def report_schema():
    text = (resources.files("rankdrop") / "schemas" / "report.schema.json").read_text()
    return json.loads(text)


def test_convert_class_keys() -> None:
    assert_that(convert_class_keys("deficient_subsets"), is_("deficientSubsets"))
    assert_that(convert_class_keys("rank"), is_("rank"))


def test_parse_config() -> None:
    """Rational strings are read exactly, in any reduced or unreduced form."""
    config_file = parse_config(
        {
            "version": "1",
            "points": [
                {"x": ["2/4", "0", "1"], "y": ["-3", "6", "0"]},
                {"x": ["1", "1", "1"], "y": ["0", "0", "1"]},
            ],
        }
    )
    assert_that(
        config_file.points[0].x, is_([Fraction(1, 2), Fraction(0), Fraction(1)])
    )
    c = config_file.to_config()
    assert_that(c.k, is_(2))
    assert_that(c.xs[0], is_(PointP2.of(1, 0, 2)))
    assert_that(c.ys[0], is_(PointP2.of(1, -2, 0)))


def test_version_defaults() -> None:
    config_file = parse_config(
        {"points": [{"x": ["1", "0"], "y": ["0", "1"]}] * 2}
    )
    assert_that(config_file.version, is_("1"))
    assert_that(config_file.to_config().dimension, is_(1))


@pytest.mark.parametrize(
    "document",
    [
        {"points": [{"x": ["1", "0", "1"], "y": ["0", "0", "1"]}]},
        {"points": [{"x": ["1.5", "0", "1"], "y": ["0", "0", "1"]}] * 2},
        {"points": [{"x": ["1", "0", "1"]}] * 2},
        {"points": [{"x": ["1", "0", "1"], "y": ["0", "0", "1"]}] * 7},
        {"version": "2", "points": [{"x": ["1", "0"], "y": ["0", "1"]}] * 2},
        {"points": [{"x": ["0", "0", "0"], "y": ["0", "0", "1"]}] * 2},
        {
            "points": [
                {"x": ["1", "0", "1"], "y": ["0", "1"]},
                {"x": ["1", "0", "1"], "y": ["0", "0", "1"]},
            ]
        },
    ],
)
def test_parse_config_rejects(document) -> None:
    with pytest.raises(ConfigFormatError):
        parse_config(document).to_config()


def test_load_config_zero_denominator() -> None:
    with pytest.raises(ConfigFormatError):
        load_config(TEST_DATA / "zero_denominator.json")


def test_load_config_missing_file(tmp_path) -> None:
    with pytest.raises(ConfigFormatError):
        load_config(tmp_path / "missing.json")
    broken = tmp_path / "broken.json"
    broken.write_text("{")
    with pytest.raises(ConfigFormatError):
        load_config(broken)


def test_load_config_from_stdin(monkeypatch) -> None:
    text = (TEST_DATA / "conic_five.json").read_text()
    monkeypatch.setattr("sys.stdin", io.StringIO(text))
    assert_that(load_config("-"), is_(load_fixture("conic_five")))


def test_config_file_from_config() -> None:
    c = load_fixture("frame_six")
    document = file_format_converter.unstructure(ConfigFile.from_config(c))
    assert_that(document["version"], is_("1"))
    assert_that(document["points"][5], is_({"x": ["85", "-357", "-45"], "y": ["340", "-102", "15"]}))
    assert_that(parse_config(document).to_config(), is_(c))


def test_report_file() -> None:
    """Names are camelCase and witnesses are canonical coordinates."""
    report = classify(load_fixture("conic_five"), lattice=True)
    document = json.loads(dumps(report_file(report, {"classifySeconds": "0.1"})))
    jsonschema.validate(document, report_schema())
    assert_that(
        document,
        has_entries(
            k=5,
            rank=4,
            deficient=True,
            status="consistent",
            deficientSubsets=[],
            timings={"classifySeconds": "0.1"},
        ),
    )
    assert_that(document, not_(has_key("deficient_subsets")))
    (condition,) = document["conditions"]
    assert_that(
        condition,
        has_entries(kind="K5LineAndBrackets", indices=[1, 2, 3, 4, 5], side="y"),
    )
    assert_that(condition["witness"]["line"], is_(["0", "1", "0"]))
    assert_that(condition["witness"]["residuals"], is_(["0"] * 5))


def test_report_file_with_invariants() -> None:
    report = classify(load_fixture("line_case"))
    document = json.loads(dumps(report_file(report)))
    jsonschema.validate(document, report_schema())
    assert_that(document["invariants"]["cobleY"], is_(["0"] * 6))
    assert_that(document["invariants"]["joubertX"], is_(None))


def test_report_file_of_inherited_condition() -> None:
    c = load_fixture("frame_five")
    report = classify(c.subset([0, 1, 2, 3, 1]))
    document = json.loads(dumps(report_file(report)))
    (condition,) = document["conditions"]
    assert_that(condition["kind"], is_("Inherited"))
    assert_that(condition["indices"], is_([2, 5]))
    assert_that(condition["inner"]["kind"], is_("RepeatedPair"))
    assert_that(condition["witness"], is_({"rank": 1}))


def test_surface_file() -> None:
    c = load_fixture("frame_six")
    pencil = pencil_from_config(c)
    lx, ly = double_six(c)
    document = json.loads(dumps(surface_file(pencil, cubic_form(pencil), lx + ly, True)))
    assert_that(document["doubleSixVerified"], is_(True))
    assert_that(len(document["pencil"]), is_(4))
    assert_that(len(document["cubicForm"]), is_(20))
    assert_that(len(document["lines"]), is_(12))

"""Test the CLI."""

import io
import json

import pytest
from hamcrest import assert_that, has_entries, has_length, is_

from rankdrop.cli import cli, get_version, main
from tests import TEST_DATA

X6 = {"x": ["85", "-357", "-45"], "y": ["340", "-102", "15"]}


def fixture_path(name: str) -> str:
    return str(TEST_DATA / f"{name}.json")


def run(capsys, *argv: str):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_get_version() -> None:
    """Test that the get_version function returns a string."""
    assert isinstance(get_version(), str)


def test_cli() -> None:
    """Test the basic cli behavior."""
    assert cli


def test_version(capsys) -> None:
    code, out, _ = run(capsys, "--version")
    assert_that(code, is_(0))
    assert_that(out.strip(), is_(get_version()))


def test_no_command(capsys) -> None:
    code, _, err = run(capsys)
    assert_that(code, is_(2))
    assert_that("usage" in err, is_(True))


def test_check_deficient(capsys) -> None:
    code, out, _ = run(capsys, "check", fixture_path("conic_five"))
    assert_that(code, is_(10))
    document = json.loads(out)
    assert_that(document, has_entries(k=5, rank=4, deficient=True))
    assert_that(document["conditions"][0]["kind"], is_("K5LineAndBrackets"))
    assert_that(document["timings"], has_entries(classifySeconds=is_(str)))


def test_check_full_rank(capsys) -> None:
    code, out, _ = run(capsys, "check", fixture_path("generic_four"))
    assert_that(code, is_(0))
    assert_that(json.loads(out), has_entries(rank=4, deficient=False))


def test_check_from_stdin(capsys, monkeypatch) -> None:
    text = (TEST_DATA / "frame_six.json").read_text()
    monkeypatch.setattr("sys.stdin", io.StringIO(text))
    code, out, _ = run(capsys, "check", "-")
    assert_that(code, is_(10))
    assert_that(json.loads(out)["rank"], is_(5))


def test_check_verbose_lists_subsets(capsys) -> None:
    code, out, _ = run(
        capsys, "check", "--verbose", fixture_path("frame_five")
    )
    assert_that(code, is_(0))
    assert_that(json.loads(out)["deficientSubsets"], is_([]))


def test_check_p1(capsys) -> None:
    code, out, _ = run(capsys, "check", "--p1", fixture_path("p1_four"))
    assert_that(code, is_(10))
    assert_that(json.loads(out), has_entries(k=4, rank=3, deficient=True))


@pytest.mark.parametrize(
    "argv",
    [
        ("check", "p1_four"),
        ("check", "--p1", "conic_five"),
        ("check", "zero_denominator"),
        ("invariants", "conic_five"),
        ("synth", "sixth-pair", "frame_six"),
        ("surface", "generic_four"),
    ],
)
def test_invalid_input(capsys, argv) -> None:
    *options, name = argv
    code, out, err = run(capsys, *options, fixture_path(name))
    assert_that(code, is_(2))
    assert_that(out, is_(""))
    assert_that(json.loads(err)["error"], is_("ConfigFormatError"))


def test_missing_file(capsys, tmp_path) -> None:
    code, _, err = run(capsys, "check", str(tmp_path / "missing.json"))
    assert_that(code, is_(2))
    assert_that(json.loads(err)["error"], is_("ConfigFormatError"))


@pytest.mark.parametrize("mode", ["sixth-pair", "sturm"])
def test_synth_sixth_pair(capsys, mode) -> None:
    code, out, _ = run(
        capsys, "synth", mode, fixture_path("frame_five"), "--verify"
    )
    assert_that(code, is_(0))
    points = json.loads(out)["points"]
    assert_that(points, has_length(6))
    assert_that(points[5], is_(X6))


def test_synth_completion(capsys) -> None:
    code, out, _ = run(
        capsys, "synth", "completion", fixture_path("frame_six"), "--verify"
    )
    assert_that(code, is_(0))
    points = json.loads(out)["points"]
    assert_that(points[4]["y"], is_(["8", "2", "1"]))
    assert_that(points[5], is_(X6))


def test_synth_related_pairs(capsys) -> None:
    code, out, err = run(
        capsys, "synth", "sixth-pair", fixture_path("homography_related_five")
    )
    assert_that(code, is_(3))
    assert_that(out, is_(""))
    assert_that(json.loads(err)["error"], is_("HomographyRelated"))


def test_surface(capsys) -> None:
    code, out, _ = run(capsys, "surface", fixture_path("frame_six"))
    assert_that(code, is_(0))
    document = json.loads(out)
    assert_that(document["doubleSixVerified"], is_(True))
    assert_that(document["lines"], has_length(12))


def test_surface_of_five_pairs(capsys) -> None:
    code, out, _ = run(capsys, "surface", fixture_path("frame_five"))
    assert_that(code, is_(0))
    document = json.loads(out)
    assert_that(document["doubleSixVerified"], is_(True))
    assert_that(document["lines"], has_length(10))


def test_surface_of_deficient_five(capsys) -> None:
    code, _, err = run(capsys, "surface", fixture_path("conic_five"))
    assert_that(code, is_(3))
    assert_that(json.loads(err)["error"], is_("DegenerateInput"))


def test_surface_of_full_rank_pairs(capsys) -> None:
    code, _, err = run(capsys, "surface", fixture_path("identity_six"))
    assert_that(code, is_(4))
    assert_that(json.loads(err)["error"], is_("NotDeficient"))


def test_invariants(capsys) -> None:
    code, out, _ = run(capsys, "invariants", fixture_path("line_case"))
    assert_that(code, is_(0))
    document = json.loads(out)
    assert_that(document["cobleY"], is_(["0"] * 6))
    assert_that(document["joubertY"], has_length(6))
    assert_that(document["joubertX"], is_(None))
    assert_that(document["proportional"], is_(True))


def test_fuzz(capsys, tmp_path) -> None:
    log_file = tmp_path / "fuzz.log"
    code, out, _ = run(
        capsys,
        "--log-file",
        str(log_file),
        "-v",
        "fuzz",
        "--seed",
        "7",
        "--count",
        "3",
        "--k",
        "5",
        "--regime",
        "generic",
        "--regime",
        "planted-degenerate",
    )
    assert_that(code, is_(0))
    document = json.loads(out)
    assert_that(document, has_entries(seed=7, count=3, violations=[]))
    assert_that(document["tallies"], has_length(2))
    assert_that(document["tallies"][1], has_entries(total=3, deficient=3))

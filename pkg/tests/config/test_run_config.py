"""Tests for run-configuration merging and validation"""

import json

import pytest

from config import (
    DEFAULT_CHANNEL_HEIGHT,
    DEFAULT_MAX_DIVERGENCE_RATIO,
    DEFAULT_QUAD_POINTS,
    Command,
    ProfileName,
    SolverPath,
    WallDatum,
)
from config.run_config import UsageError, parse_config

TEST_ELEMENTS = 32


@pytest.fixture
def sweep_document(tmp_path):
    """Config document for a small sweep"""
    path = tmp_path / "sweep.json"
    path.write_text(
        json.dumps(
            {
                "command": "sweep",
                "elements": 64,
                "re_list": [1000, 2000],
                "alpha_list": [0.9, 1.1],
                "workers": 2,
            }
        )
    )
    return path


@pytest.fixture
def profile_csv(tmp_path):
    path = tmp_path / "profile.csv"
    path.write_text("y,U\n0,0\n1,0.75\n2,1\n")
    return path


def test_solve_defaults():
    """Test built-in defaults for a minimal solve"""
    config = parse_config("solve", {"elements": TEST_ELEMENTS, "re": 1e4, "alpha": 1.0})

    assert config.command == Command.SOLVE
    assert config.profile == ProfileName.POISEUILLE
    assert config.a == DEFAULT_CHANNEL_HEIGHT
    assert config.quad_points == DEFAULT_QUAD_POINTS
    assert config.path == SolverPath.SCHUR_QR
    assert (config.re, config.alpha) == (1e4, 1.0)
    assert not config.plots
    assert config.wall_datum == WallDatum.CONTINUITY
    assert config.max_divergence_ratio == DEFAULT_MAX_DIVERGENCE_RATIO


def test_wall_datum_flag():
    """Test that the literal wall datum can be selected and bad names are rejected"""
    flags = {"elements": TEST_ELEMENTS, "re": 1e4, "alpha": 1.0}
    config = parse_config("solve", {**flags, "wall_datum": "second-derivative"})

    assert config.wall_datum == WallDatum.SECOND_DERIVATIVE
    with pytest.raises(UsageError):
        parse_config("solve", {**flags, "wall_datum": "neumann"})


def test_unset_flags_are_ignored():
    """Test that None flag values do not override defaults"""
    config = parse_config(
        "solve", {"elements": TEST_ELEMENTS, "re": 100.0, "alpha": 1.0, "grading": None}
    )

    assert config.grading == 1.0


def test_document_values(sweep_document):
    """Test that the document fills list fields through its aliases"""
    config = parse_config("sweep", config_path=sweep_document)

    assert config.re_values == [1000.0, 2000.0]
    assert config.alpha_values == [0.9, 1.1]
    assert config.elements == 64
    assert config.workers == 2


def test_flags_override_document(sweep_document):
    """Test that an explicit --re replaces the document's re_list"""
    config = parse_config("sweep", {"re": 500.0, "elements": 16}, config_path=sweep_document)

    assert config.re_values == [500.0]
    assert config.alpha_values == [0.9, 1.1]
    assert config.elements == 16


def test_missing_elements():
    """Test that the element count has no default"""
    with pytest.raises(UsageError, match="elements"):
        parse_config("solve", {"re": 100.0, "alpha": 1.0})


@pytest.mark.parametrize(
    "command,flags",
    [
        ("solve", {"re_list": [100.0, 200.0], "alpha": 1.0}),
        ("sweep", {"re": 100.0}),
        ("neutral", {"re": 100.0, "alpha_lo": 1.2, "alpha_hi": 0.8}),
        ("neutral", {"re": 100.0}),
        ("solve", {"re": -5.0, "alpha": 1.0}),
        ("solve", {"re": 100.0, "alpha": 1.0, "quad_points": 9}),
        ("solve", {"re": 100.0, "alpha": 1.0, "profile": "tabulated"}),
    ],
    ids=[
        "solve_two_re",
        "sweep_without_alpha",
        "reversed_bracket",
        "neutral_without_bracket",
        "negative_re",
        "too_many_quad_points",
        "tabulated_without_file",
    ],
)
def test_contradictory_settings(command, flags):
    """Test rejection of inconsistent or incomplete settings"""
    with pytest.raises(UsageError):
        parse_config(command, {"elements": TEST_ELEMENTS} | flags)


def test_alias_collision():
    """Test that re and re_list together are rejected"""
    with pytest.raises(UsageError, match="both"):
        parse_config("sweep", {"elements": 4, "re": 1.0, "re_list": [2.0], "alpha": 1.0})


def test_profile_file_implies_tabulated(profile_csv):
    """Test that a profile file selects the tabulated profile"""
    config = parse_config(
        "solve", {"elements": 4, "re": 100.0, "alpha": 1.0, "profile_file": profile_csv}
    )

    assert config.profile == ProfileName.TABULATED
    assert config.profile_file == profile_csv


def test_profile_file_with_builtin_profile(profile_csv):
    """Test that a file next to a built-in profile is contradictory"""
    with pytest.raises(UsageError, match="profile_file"):
        parse_config(
            "solve",
            {
                "elements": 4,
                "re": 100.0,
                "alpha": 1.0,
                "profile": "couette",
                "profile_file": profile_csv,
            },
        )


def test_flag_profile_replaces_document_table(tmp_path, profile_csv):
    """Test that --profile couette drops the document's tabulated file"""
    path = tmp_path / "solve.json"
    path.write_text(json.dumps({"profile_file": str(profile_csv), "re": 100, "alpha": 1}))
    config = parse_config("solve", {"elements": 4, "profile": "couette"}, config_path=path)

    assert config.profile == ProfileName.COUETTE
    assert config.profile_file is None


@pytest.mark.parametrize(
    "content", ["{not json", "[1, 2]"], ids=["malformed", "not_an_object"]
)
def test_bad_document(tmp_path, content):
    """Test malformed config documents"""
    path = tmp_path / "bad.json"
    path.write_text(content)

    with pytest.raises(UsageError):
        parse_config("solve", {"elements": 4, "re": 1.0, "alpha": 1.0}, config_path=path)


def test_missing_document(tmp_path):
    """Test a config path that does not exist"""
    with pytest.raises(UsageError, match="not found"):
        parse_config("solve", config_path=tmp_path / "absent.json")


def test_unknown_key(tmp_path):
    """Test that unknown document keys are rejected"""
    path = tmp_path / "typo.json"
    path.write_text(json.dumps({"elemnts": 4, "re": 1.0, "alpha": 1.0}))

    with pytest.raises(UsageError, match="elemnts"):
        parse_config("solve", {"elements": 4}, config_path=path)


def test_document_for_another_command(sweep_document):
    """Test that a sweep document cannot drive a solve"""
    with pytest.raises(UsageError, match="sweep"):
        parse_config("solve", config_path=sweep_document)


def test_unknown_command():
    with pytest.raises(UsageError):
        parse_config("explode", {"elements": 4})

import pytest

from svgreward.errors import MalformedPathDataError
from svgreward.svg.pathdata import count_path_commands, parse_path_data


def test_basic_commands():
    cmds = parse_path_data("M0 0 L10 10 Z")
    assert [c.letter for c in cmds] == ["M", "L", "Z"]
    assert cmds[1].params == (10.0, 10.0)


def test_implicit_lineto_repeat():
    cmds = parse_path_data("M0 0 L1 1 2 2")
    assert [c.letter for c in cmds] == ["M", "L", "L"]
    assert count_path_commands("M0 0 L1 1 2 2") == 3


def test_implicit_moveto_becomes_lineto():
    cmds = parse_path_data("M0 0 10 10 20 20")
    assert [c.letter for c in cmds] == ["M", "L", "L"]
    cmds = parse_path_data("m0 0 10 10")
    assert [c.letter for c in cmds] == ["m", "l"]


def test_all_command_letters():
    d = "M1 1 L2 2 H3 V4 C1 1 2 2 3 3 S4 4 5 5 Q6 6 7 7 T8 8 A1 1 0 0 1 9 9 Z"
    assert count_path_commands(d) == 10


def test_glued_decimals():
    cmds = parse_path_data("M1.5.5L.5.25")
    assert cmds[0].params == (1.5, 0.5)
    assert cmds[1].params == (0.5, 0.25)


def test_scientific_notation_and_signs():
    cmds = parse_path_data("M1e2-3E-1L-2,+4")
    assert cmds[0].params == (100.0, -0.3)
    assert cmds[1].params == (-2.0, 4.0)


def test_arc_flags_run_together():
    cmds = parse_path_data("M0 0 A5 5 0 011 1")
    assert cmds[1].letter == "A"
    assert cmds[1].params == (5.0, 5.0, 0.0, 0.0, 1.0, 1.0, 1.0)


def test_empty_path_is_zero_commands():
    assert parse_path_data("") == []
    assert parse_path_data("   \n ") == []


@pytest.mark.parametrize(
    "bad",
    [
        "L10 10",          # must start with moveto
        "M0 0 X9 9",       # unknown letter
        "M0 0 L1",         # incomplete parameter group
        "M0 0 Z 5 5",      # numbers after closepath
        "M0 0 A5 5 0 2 0 1 1",  # arc flag not 0/1
    ],
)
def test_malformed_path_data(bad):
    with pytest.raises(MalformedPathDataError):
        parse_path_data(bad)

import pytest
from hypothesis import given, settings, strategies as st

from ctrkit.errors import AxisConfigError, GcodeParseError, UnsupportedCommandError
from ctrkit.gcode import (
    ABSOLUTE_MODE,
    DEFAULT_FEED,
    HOME,
    LINEAR_MOVE,
    POSITION_QUERY,
    RELATIVE_MODE,
    ROTATION,
    TRANSLATION,
    AxisAssignment,
    AxisMap,
    JointLimits,
    emit_home,
    emit_move,
    emit_position_query,
    format_value,
    parse_line,
)
from ctrkit.kinematics import JointConfig


def test_emit_move_exact_bytes():
    text = emit_move(JointConfig((10.0, 20.0), (90.0, -45.0)), AxisMap.default(2))
    assert text == "G90\nG1 X10.000 A90.000 Y20.000 B-45.000 F1200\n"


def test_emit_move_feed_handling():
    joints = JointConfig((1.0,), (2.0,))
    axis_map = AxisMap.default(1)
    assert emit_move(joints, axis_map, feed=600).endswith(" F600\n")
    assert emit_move(joints, axis_map, feed=None) == "G90\nG1 X1.000 A2.000\n"
    with pytest.raises(AxisConfigError):
        emit_move(joints, axis_map, feed=0.0)
    with pytest.raises(AxisConfigError):
        emit_move(joints, axis_map, feed=-10.0)


def test_emit_simple_commands():
    assert emit_home() == "G28\n"
    assert emit_position_query() == "M114\n"


def test_format_value_fixed_point():
    assert format_value(10.0) == "10.000"
    assert format_value(-45.0) == "-45.000"
    assert format_value(-0.0001) == "0.000"
    assert format_value(0.0) == "0.000"
    assert format_value(1.23456) == "1.235"


def test_parse_simple_commands():
    assert parse_line("G90").kind == ABSOLUTE_MODE
    assert parse_line("G91").kind == RELATIVE_MODE
    assert parse_line("G28").kind == HOME
    assert parse_line("M114").kind == POSITION_QUERY
    assert parse_line("  g28  ; park the carriages").kind == HOME


def test_parse_move_words_and_feed():
    cmd = parse_line("G1 X10.000 A90.000 Y20.000 B-45.000 F1200")
    assert cmd.kind == LINEAR_MOVE
    assert cmd.axis_words == {"X": 10.0, "A": 90.0, "Y": 20.0, "B": -45.0}
    assert cmd.feed == 1200.0
    assert parse_line("g1 x1.5 a-2.25").feed is None


def test_parse_is_whitespace_and_case_tolerant():
    cmd = parse_line("\tG1   x1.5    A-2.25  f100 ")
    assert cmd.axis_words == {"X": 1.5, "A": -2.25}
    assert cmd.feed == 100.0


def test_emit_parse_round_trip():
    joints = JointConfig((12.345, 49.999), (-179.5, 0.125))
    axis_map = AxisMap.default(2)
    lines = emit_move(joints, axis_map, feed=900).splitlines()
    assert parse_line(lines[0], axis_map).kind == ABSOLUTE_MODE
    move = parse_line(lines[1], axis_map)
    recovered = axis_map.joints_from_values(move.axis_words)
    for got, want in zip(
        recovered.translations + recovered.rotations,
        joints.translations + joints.rotations,
    ):
        assert abs(got - want) <= 5e-4
    assert move.feed == 900.0


def test_parse_error_columns():
    with pytest.raises(GcodeParseError) as err:
        parse_line("G1 X")
    assert err.value.column == 5
    assert "(column 5)" in str(err.value)

    with pytest.raises(GcodeParseError) as err:
        parse_line("G90 X1")
    assert err.value.column == 5

    with pytest.raises(GcodeParseError) as err:
        parse_line("G1 X1 ?")
    assert err.value.column == 7


def test_parse_rejects_malformed_lines():
    for line in (
        "",
        "   ; only a comment",
        "X1 Y2",
        "G1.5 X1",
        "G1 X1 X2",
        "G1 F100 F200",
        "G1 F-5 X1",
        "G1 F100",
        "G1 X1 G28",
        "G1 X1 M114",
    ):
        with pytest.raises(GcodeParseError):
            parse_line(line)


def test_parse_unsupported_codes():
    with pytest.raises(UnsupportedCommandError) as err:
        parse_line("G2 X1 Y2")
    assert "G2" in str(err.value)
    with pytest.raises(UnsupportedCommandError):
        parse_line("M115")


def test_parse_axis_letters_against_map():
    axis_map = AxisMap.default(1)
    with pytest.raises(UnsupportedCommandError) as err:
        parse_line("G1 Q5", axis_map)
    assert err.value.line == "G1 Q5"
    # without a map any non-reserved letter is accepted
    assert parse_line("G1 Q5").axis_words == {"Q": 5.0}


def test_axis_assignment_validation():
    a = AxisAssignment(1, "x", "a")
    assert (a.translation_letter, a.rotation_letter) == ("X", "A")
    for bad in ("F", "G", "M", "XX", "1", ""):
        with pytest.raises(AxisConfigError):
            AxisAssignment(1, bad, "A")
    with pytest.raises(AxisConfigError):
        AxisAssignment(1, "X", "A", steps_per_mm=0.0)
    with pytest.raises(AxisConfigError):
        AxisAssignment(1, "X", "A", steps_per_degree=-1.0)


def test_axis_map_validation():
    with pytest.raises(AxisConfigError):
        AxisMap(())
    with pytest.raises(AxisConfigError):
        AxisMap((AxisAssignment(2, "X", "A"),))
    with pytest.raises(AxisConfigError):
        AxisMap((AxisAssignment(1, "X", "A"), AxisAssignment(2, "X", "B")))


def test_axis_map_default_letters():
    axis_map = AxisMap.default(3)
    assert axis_map.letters == ("X", "A", "Y", "B", "Z", "C")
    assert axis_map.axis_kind("y") == (TRANSLATION, 2, 800.0)
    assert axis_map.axis_kind("C") == (ROTATION, 3, 8.888)
    with pytest.raises(AxisConfigError):
        axis_map.axis_kind("Q")
    with pytest.raises(AxisConfigError):
        AxisMap.default(4)
    with pytest.raises(AxisConfigError):
        AxisMap.default(0)


def test_words_for_order_and_arity():
    axis_map = AxisMap.default(2)
    words = axis_map.words_for(JointConfig((1.0, 2.0), (3.0, 4.0)))
    assert words == [("X", 1.0), ("A", 3.0), ("Y", 2.0), ("B", 4.0)]
    with pytest.raises(AxisConfigError):
        axis_map.words_for(JointConfig((1.0,), (2.0,)))


def test_joints_from_values_requires_all_letters():
    axis_map = AxisMap.default(2)
    with pytest.raises(AxisConfigError):
        axis_map.joints_from_values({"X": 1.0, "A": 2.0, "Y": 3.0})


def test_joint_limits():
    limits = JointLimits()
    assert limits.bounds_for(TRANSLATION) == (0.0, 50.0)
    assert limits.bounds_for(ROTATION) == (-180.0, 180.0)
    with pytest.raises(AxisConfigError):
        JointLimits(translation=(10.0, 10.0))


joint_values = st.tuples(
    st.floats(min_value=0.0, max_value=50.0),
    st.floats(min_value=-180.0, max_value=180.0),
)


@given(values=joint_values, feed=st.floats(min_value=1.0, max_value=6000.0))
@settings(max_examples=300)
def test_round_trip_quantization_bound(values, feed):
    rho, theta = values
    axis_map = AxisMap.default(1)
    lines = emit_move(JointConfig((rho,), (theta,)), axis_map, feed=feed).splitlines()
    move = parse_line(lines[1], axis_map)
    assert abs(move.axis_words["X"] - rho) <= 5e-4
    assert abs(move.axis_words["A"] - theta) <= 5e-4
    # %g prints six significant digits
    assert move.feed == pytest.approx(feed, rel=1e-5)


@given(line=st.text(alphabet=st.characters(codec="ascii"), max_size=40))
@settings(max_examples=500)
def test_parser_totality(line):
    # arbitrary input either parses or raises a diagnosable error
    try:
        cmd = parse_line(line)
    except (GcodeParseError, UnsupportedCommandError):
        return
    assert cmd.kind in (
        ABSOLUTE_MODE,
        RELATIVE_MODE,
        LINEAR_MOVE,
        HOME,
        POSITION_QUERY,
    )
from pathlib import Path

import pytest

from ctrkit.errors import ConfigurationError
from ctrkit.robotfile import load_robot, loads_robot

ROBOTS = Path(__file__).resolve().parent.parent / "robots"

MINIMAL = """
[tube 1]
youngs_modulus_gpa = 75
outer_diameter = 2.4
inner_diameter = 2.0
precurvature = 0.005
straight_length = 120
curved_length = 40
"""


def test_minimal_file_gets_defaults():
    robot = loads_robot(MINIMAL)
    assert robot.name == "robot"
    assert len(robot.tubes) == 1
    tube = robot.tubes[0]
    assert tube.youngs_modulus == 75e3  # stored in MPa
    assert tube.precurvature == 0.005
    assert robot.axis_map.letters == ("X", "A")
    assert robot.axis_map.assignments[0].steps_per_mm == 800.0
    assert robot.limits.translation == (0.0, 50.0)
    assert robot.limits.rotation == (-180.0, 180.0)


def test_radius_of_curvature_converts():
    text = MINIMAL.replace("precurvature = 0.005", "radius_of_curvature = 180")
    robot = loads_robot(text)
    assert robot.tubes[0].precurvature == pytest.approx(1 / 180)


def test_kappa_and_radius_are_exclusive():
    text = MINIMAL.replace(
        "precurvature = 0.005",
        "precurvature = 0.005\nradius_of_curvature = 200",
    )
    with pytest.raises(ConfigurationError, match="pick one"):
        loads_robot(text)
    with pytest.raises(ConfigurationError, match="either"):
        loads_robot(MINIMAL.replace("precurvature = 0.005\n", ""))


def test_comments_and_name():
    text = "[robot]\nname = demo ; inline comment\n" + MINIMAL
    assert loads_robot(text).name == "demo"


def test_canonical2_file_loads():
    robot = load_robot(ROBOTS / "canonical2.robot")
    assert robot.name == "canonical-2"
    assert [t.tube_id for t in robot.tubes] == [1, 2]
    assert robot.tubes[0].precurvature == pytest.approx(1 / 180)
    assert robot.tubes[1].precurvature == pytest.approx(1 / 120)
    assert robot.limits.translation == (0.0, 200.0)
    assert robot.axis_map.letters == ("X", "A", "Y", "B")


def test_canonical3_file_loads():
    robot = load_robot(ROBOTS / "canonical3.robot")
    assert len(robot.tubes) == 3
    assert robot.axis_map.letters == ("X", "A", "Y", "B", "Z", "C")


def test_straight_file_loads():
    robot = load_robot(ROBOTS / "straight.robot")
    assert robot.tubes[0].precurvature == 0.0
    assert robot.limits.translation == (0.0, 100.0)


def test_missing_file():
    with pytest.raises(ConfigurationError, match="not found"):
        load_robot(ROBOTS / "nope.robot")


def test_malformed_ini():
    with pytest.raises(ConfigurationError, match="malformed"):
        loads_robot("not an ini file at all [")


def test_unknown_section_rejected():
    with pytest.raises(ConfigurationError, match="unknown section"):
        loads_robot(MINIMAL + "\n[weird]\nfoo = 1\n")


def test_unknown_tube_key_rejected():
    with pytest.raises(ConfigurationError, match="unknown keys"):
        loads_robot(MINIMAL + "wall_thickness = 1\n")


def test_missing_required_key():
    with pytest.raises(ConfigurationError, match="missing keys"):
        loads_robot(MINIMAL.replace("outer_diameter = 2.4\n", ""))


def test_non_numeric_value():
    with pytest.raises(ConfigurationError, match="must be a number"):
        loads_robot(MINIMAL.replace("= 120", "= tall"))


def test_tube_ids_must_be_consecutive():
    text = MINIMAL.replace("[tube 1]", "[tube 2]")
    with pytest.raises(ConfigurationError, match="consecutive"):
        loads_robot(text)


def test_axis_section_overrides_defaults():
    text = MINIMAL + "\n[axis 1]\ntranslation_letter = U\nsteps_per_mm = 400\n"
    robot = loads_robot(text)
    assert robot.axis_map.assignments[0].translation_letter == "U"
    assert robot.axis_map.assignments[0].rotation_letter == "A"
    assert robot.axis_map.assignments[0].steps_per_mm == 400.0
    assert robot.axis_map.assignments[0].steps_per_degree == 8.888


def test_axis_without_tube_rejected():
    with pytest.raises(ConfigurationError, match="without matching"):
        loads_robot(MINIMAL + "\n[axis 2]\ntranslation_letter = U\n")


def test_limits_section():
    robot = loads_robot(MINIMAL + "\n[limits]\ntranslation = 0, 150\n")
    assert robot.limits.translation == (0.0, 150.0)
    assert robot.limits.rotation == (-180.0, 180.0)
    with pytest.raises(ConfigurationError, match="two numbers"):
        loads_robot(MINIMAL + "\n[limits]\ntranslation = 5\n")


def test_nesting_validated():
    # inner tube wider than the outer tube's bore
    text = MINIMAL + """
[tube 2]
youngs_modulus_gpa = 75
outer_diameter = 2.2
inner_diameter = 1.8
precurvature = 0.008
straight_length = 140
curved_length = 60
"""
    with pytest.raises(ConfigurationError, match="does not fit"):
        loads_robot(text)


def test_four_tubes_need_explicit_letters():
    sections = []
    for i, (od, idi) in enumerate([(4.2, 3.8), (3.6, 3.2), (3.0, 2.6), (2.4, 2.0)]):
        sections.append(
            f"[tube {i + 1}]\nyoungs_modulus_gpa = 75\nouter_diameter = {od}\n"
            f"inner_diameter = {idi}\nprecurvature = 0.004\n"
            f"straight_length = 120\ncurved_length = 40\n"
        )
    with pytest.raises(ConfigurationError, match="beyond 3 tubes"):
        loads_robot("\n".join(sections))
    axes = "\n".join(
        f"[axis {i + 1}]\ntranslation_letter = {t}\nrotation_letter = {r}\n"
        for i, (t, r) in enumerate([("X", "A"), ("Y", "B"), ("Z", "C"), ("U", "V")])
    )
    robot = loads_robot("\n".join(sections) + "\n" + axes)
    assert robot.axis_map.letters[-2:] == ("U", "V")
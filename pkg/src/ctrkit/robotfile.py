"""Robot description files: INI text defining tubes, axis wiring and limits.

Schema (units fixed, documented in the README):

    [robot]                       ; optional
    name = canonical-2

    [tube 1]                      ; tube 1 is outermost, ids run 1..n
    youngs_modulus_gpa = 75.0     ; GPa
    outer_diameter = 2.4          ; mm
    inner_diameter = 2.0          ; mm
    precurvature = 0.00555        ; 1/mm, XOR radius_of_curvature (mm)
    straight_length = 120.0       ; mm
    curved_length = 40.0          ; mm

    [axis 1]                      ; optional, defaults X/A, Y/B, Z/C wiring
    translation_letter = X
    rotation_letter = A
    steps_per_mm = 800
    steps_per_degree = 8.888

    [limits]                      ; optional, defaults [0, 50] mm / [-180, 180] deg
    translation = 0 50
    rotation = -180 180
"""

from __future__ import annotations

import configparser
from dataclasses import dataclass
from pathlib import Path

from ctrkit.errors import ConfigurationError
from ctrkit.gcode import (
    DEFAULT_STEPS_PER_DEGREE,
    DEFAULT_STEPS_PER_MM,
    AxisAssignment,
    AxisMap,
    JointLimits,
)
from ctrkit.kinematics.tubes import TubeSpec, validate_tube_set

_TUBE_KEYS = {
    "youngs_modulus_gpa",
    "outer_diameter",
    "inner_diameter",
    "precurvature",
    "radius_of_curvature",
    "straight_length",
    "curved_length",
}
_AXIS_KEYS = {"translation_letter", "rotation_letter", "steps_per_mm", "steps_per_degree"}


@dataclass(frozen=True)
class RobotDescription:
    """Everything a robot file defines: tubes, axis map, joint limits."""

    name: str
    tubes: tuple[TubeSpec, ...]
    axis_map: AxisMap
    limits: JointLimits


def _float(section: str, key: str, raw: str) -> float:
    try:
        return float(raw)
    except ValueError:
        raise ConfigurationError(f"[{section}] {key} must be a number, got {raw!r}") from None


def _pair(section: str, key: str, raw: str) -> tuple[float, float]:
    parts = raw.replace(",", " ").split()
    if len(parts) != 2:
        raise ConfigurationError(f"[{section}] {key} must be two numbers, got {raw!r}")
    return _float(section, key, parts[0]), _float(section, key, parts[1])


def _section_index(name: str, prefix: str) -> int | None:
    parts = name.split()
    if len(parts) != 2 or parts[0].lower() != prefix:
        return None
    if not parts[1].isdigit():
        raise ConfigurationError(f"section [{name}] needs a numeric id, e.g. [{prefix} 1]")
    return int(parts[1])


def _parse_tube(section: str, values: dict[str, str]) -> TubeSpec:
    unknown = set(values) - _TUBE_KEYS
    if unknown:
        raise ConfigurationError(f"[{section}] unknown keys: {sorted(unknown)}")
    required = {"youngs_modulus_gpa", "outer_diameter", "inner_diameter", "straight_length", "curved_length"}
    missing = required - set(values)
    if missing:
        raise ConfigurationError(f"[{section}] missing keys: {sorted(missing)}")

    has_kappa = "precurvature" in values
    has_radius = "radius_of_curvature" in values
    if has_kappa and has_radius:
        raise ConfigurationError(
            f"[{section}] specifies both precurvature and radius_of_curvature; pick one"
        )
    if not has_kappa and not has_radius:
        raise ConfigurationError(
            f"[{section}] needs either precurvature or radius_of_curvature"
        )
    if has_kappa:
        kappa = _float(section, "precurvature", values["precurvature"])
    else:
        radius = _float(section, "radius_of_curvature", values["radius_of_curvature"])
        if radius <= 0:
            raise ConfigurationError(f"[{section}] radius_of_curvature must be > 0, got {radius}")
        kappa = 1.0 / radius

    tube_id = _section_index(section, "tube")
    assert tube_id is not None
    return TubeSpec(
        tube_id=tube_id,
        youngs_modulus=_float(section, "youngs_modulus_gpa", values["youngs_modulus_gpa"]) * 1e3,
        outer_diameter=_float(section, "outer_diameter", values["outer_diameter"]),
        inner_diameter=_float(section, "inner_diameter", values["inner_diameter"]),
        precurvature=kappa,
        straight_length=_float(section, "straight_length", values["straight_length"]),
        curved_length=_float(section, "curved_length", values["curved_length"]),
    )


def _parse_axis(section: str, tube_id: int, values: dict[str, str], default: AxisAssignment) -> AxisAssignment:
    unknown = set(values) - _AXIS_KEYS
    if unknown:
        raise ConfigurationError(f"[{section}] unknown keys: {sorted(unknown)}")
    return AxisAssignment(
        tube_id=tube_id,
        translation_letter=values.get("translation_letter", default.translation_letter),
        rotation_letter=values.get("rotation_letter", default.rotation_letter),
        steps_per_mm=_float(section, "steps_per_mm", values["steps_per_mm"])
        if "steps_per_mm" in values
        else DEFAULT_STEPS_PER_MM,
        steps_per_degree=_float(section, "steps_per_degree", values["steps_per_degree"])
        if "steps_per_degree" in values
        else DEFAULT_STEPS_PER_DEGREE,
    )


def loads_robot(text: str) -> RobotDescription:
    """Parse robot description text into validated tubes, axes and limits."""
    parser = configparser.ConfigParser(inline_comment_prefixes=(";", "#"))
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        raise ConfigurationError(f"malformed robot file: {exc}") from None

    tube_sections: dict[int, str] = {}
    axis_sections: dict[int, str] = {}
    name = "robot"
    for section in parser.sections():
        tube_id = _section_index(section, "tube")
        if tube_id is not None:
            if tube_id in tube_sections:
                raise ConfigurationError(f"duplicate section [tube {tube_id}]")
            tube_sections[tube_id] = section
            continue
        axis_id = _section_index(section, "axis")
        if axis_id is not None:
            if axis_id in axis_sections:
                raise ConfigurationError(f"duplicate section [axis {axis_id}]")
            axis_sections[axis_id] = section
            continue
        if section.lower() == "robot":
            name = parser.get(section, "name", fallback=name)
        elif section.lower() != "limits":
            raise ConfigurationError(f"unknown section [{section}]")

    if not tube_sections:
        raise ConfigurationError("robot file defines no [tube N] sections")
    n = len(tube_sections)
    if sorted(tube_sections) != list(range(1, n + 1)):
        raise ConfigurationError(
            f"tube ids must be consecutive from 1, got {sorted(tube_sections)}"
        )
    stray = set(axis_sections) - set(tube_sections)
    if stray:
        raise ConfigurationError(f"[axis N] sections without matching tubes: {sorted(stray)}")

    tubes = tuple(
        _parse_tube(tube_sections[i], dict(parser.items(tube_sections[i])))
        for i in range(1, n + 1)
    )
    validate_tube_set(list(tubes))

    defaults = AxisMap.default(n) if n <= 3 else None
    assignments = []
    for i in range(1, n + 1):
        default = defaults.assignments[i - 1] if defaults else None
        if i in axis_sections:
            if default is None:
                # beyond the X/Y/Z letters every axis must be spelled out
                values = dict(parser.items(axis_sections[i]))
                if "translation_letter" not in values or "rotation_letter" not in values:
                    raise ConfigurationError(
                        f"[axis {i}] must name both letters (no defaults beyond 3 tubes)"
                    )
                default = AxisAssignment(
                    tube_id=i,
                    translation_letter=values["translation_letter"],
                    rotation_letter=values["rotation_letter"],
                )
            assignments.append(
                _parse_axis(axis_sections[i], i, dict(parser.items(axis_sections[i])), default)
            )
        elif default is not None:
            assignments.append(default)
        else:
            raise ConfigurationError(f"missing [axis {i}] section (no defaults beyond 3 tubes)")
    axis_map = AxisMap(tuple(assignments))

    limits = JointLimits()
    if parser.has_section("limits"):
        values = dict(parser.items("limits"))
        unknown = set(values) - {"translation", "rotation"}
        if unknown:
            raise ConfigurationError(f"[limits] unknown keys: {sorted(unknown)}")
        limits = JointLimits(
            translation=_pair("limits", "translation", values["translation"])
            if "translation" in values
            else JointLimits().translation,
            rotation=_pair("limits", "rotation", values["rotation"])
            if "rotation" in values
            else JointLimits().rotation,
        )

    return RobotDescription(name=name, tubes=tubes, axis_map=axis_map, limits=limits)


def load_robot(path) -> RobotDescription:
    """Read and parse a robot description file from disk."""
    file = Path(path)
    if not file.exists():
        raise ConfigurationError(f"robot file not found: {file}")
    return loads_robot(file.read_text())

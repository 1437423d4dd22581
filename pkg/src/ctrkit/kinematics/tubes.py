"""Tube geometry and joint-space types.

Units are millimetres and degrees at every interface. Young's modulus is
stored in N/mm^2 (MPa); only stiffness ratios matter to the kinematics, so
any consistent pressure unit works.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from ctrkit.errors import ConfigurationError, InvalidInputError

TWO_PI = 2.0 * math.pi


def annulus_second_moment(outer_diameter: float, inner_diameter: float) -> float:
    """Second moment of area of an annular cross section, (pi/64)(OD^4 - ID^4)."""
    return math.pi / 64.0 * (outer_diameter**4 - inner_diameter**4)


@dataclass(frozen=True)
class TubeSpec:
    """Geometric and material description of one pre-curved tube.

    ``tube_id`` counts from 1 at the outermost tube. Each tube is a straight
    transmission section followed by a pre-curved distal section of constant
    precurvature.
    """

    tube_id: int
    youngs_modulus: float      # N/mm^2
    outer_diameter: float      # mm
    inner_diameter: float      # mm
    precurvature: float        # 1/mm, >= 0
    straight_length: float     # mm
    curved_length: float       # mm
    second_moment: float = field(init=False)  # mm^4, derived

    def __post_init__(self):
        if self.tube_id < 1:
            raise InvalidInputError(f"tube id must be >= 1, got {self.tube_id}")
        if self.youngs_modulus <= 0:
            raise InvalidInputError(f"tube {self.tube_id}: Young's modulus must be > 0")
        if not self.outer_diameter > self.inner_diameter > 0:
            raise InvalidInputError(
                f"tube {self.tube_id}: need outer_diameter > inner_diameter > 0, "
                f"got OD={self.outer_diameter} ID={self.inner_diameter}"
            )
        if self.precurvature < 0:
            raise InvalidInputError(f"tube {self.tube_id}: precurvature must be >= 0")
        if self.straight_length <= 0:
            raise InvalidInputError(f"tube {self.tube_id}: straight_length must be > 0")
        if self.curved_length < 0:
            raise InvalidInputError(f"tube {self.tube_id}: curved_length must be >= 0")
        if self.precurvature * self.curved_length >= TWO_PI:
            raise InvalidInputError(
                f"tube {self.tube_id}: curved section spans a full circle "
                f"(precurvature * curved_length = "
                f"{self.precurvature * self.curved_length:.4f} >= 2*pi)"
            )
        object.__setattr__(
            self,
            "second_moment",
            annulus_second_moment(self.outer_diameter, self.inner_diameter),
        )

    @property
    def bending_stiffness(self) -> float:
        """E*I in N*mm^2."""
        return self.youngs_modulus * self.second_moment

    @property
    def total_length(self) -> float:
        return self.straight_length + self.curved_length


def validate_tube_set(tubes: list[TubeSpec]) -> None:
    """Check that a tube list forms a telescoping set (id 1 outermost).

    Raises ConfigurationError naming the violated invariant.
    """
    if not tubes:
        raise ConfigurationError("tube set is empty")
    ids = [t.tube_id for t in tubes]
    if ids != list(range(1, len(tubes) + 1)):
        raise ConfigurationError(
            f"tube ids must be 1..n in nesting order (1 = outermost), got {ids}"
        )
    for outer, inner in zip(tubes, tubes[1:]):
        if outer.inner_diameter < inner.outer_diameter:
            raise ConfigurationError(
                f"tube {inner.tube_id} (OD {inner.outer_diameter} mm) does not fit "
                f"inside tube {outer.tube_id} (ID {outer.inner_diameter} mm)"
            )


@dataclass(frozen=True)
class JointConfig:
    """Per-tube joint values.

    ``translations`` is the deployed length of each tube beyond the front
    plate at s = 0, in mm. ``rotations`` is the axial angle of each tube's
    bending plane about the common axis, in degrees.
    """

    translations: tuple[float, ...]
    rotations: tuple[float, ...]

    def __init__(self, translations, rotations):
        object.__setattr__(self, "translations", tuple(float(v) for v in translations))
        object.__setattr__(self, "rotations", tuple(float(v) for v in rotations))
        if len(self.translations) != len(self.rotations):
            raise InvalidInputError(
                f"got {len(self.translations)} translations but "
                f"{len(self.rotations)} rotations"
            )

    def __len__(self):
        return len(self.translations)

    @property
    def max_deployment(self) -> float:
        return max(self.translations, default=0.0)


def validate_joints(tubes: list[TubeSpec], joints: JointConfig) -> None:
    """Check a joint configuration against a (valid) tube set.

    Raises ConfigurationError naming the violated invariant.
    """
    validate_tube_set(tubes)
    if len(joints) != len(tubes):
        raise ConfigurationError(
            f"configuration has {len(joints)} joints for {len(tubes)} tubes"
        )
    for tube, rho in zip(tubes, joints.translations):
        if rho < 0:
            raise ConfigurationError(
                f"tube {tube.tube_id}: deployed length {rho} mm is negative"
            )
        if rho > tube.total_length:
            raise ConfigurationError(
                f"tube {tube.tube_id}: deployed length {rho} mm exceeds tube "
                f"length {tube.total_length} mm"
            )
    for i, (outer_rho, inner_rho) in enumerate(
        zip(joints.translations, joints.translations[1:])
    ):
        if outer_rho > inner_rho:
            raise ConfigurationError(
                f"telescoping violated: tube {i + 1} deploys {outer_rho} mm past "
                f"tube {i + 2} at {inner_rho} mm (inner tube tip must be at or "
                f"beyond the outer tube tip)"
            )

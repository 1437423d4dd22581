"""Request bodies for the HTTP service."""

from __future__ import annotations

from pydantic import BaseModel, Field

from ctrkit.errors import InvalidInputError
from ctrkit.gcode import (
    DEFAULT_FEED,
    DEFAULT_STEPS_PER_DEGREE,
    DEFAULT_STEPS_PER_MM,
    AxisAssignment,
    AxisMap,
    JointLimits,
)
from ctrkit.kinematics.tubes import JointConfig, TubeSpec, validate_tube_set
from ctrkit.robotfile import RobotDescription, loads_robot


class TubeBody(BaseModel):
    tube_id: int
    youngs_modulus_gpa: float
    outer_diameter: float
    inner_diameter: float
    precurvature: float | None = None
    radius_of_curvature: float | None = None
    straight_length: float
    curved_length: float

    def to_spec(self) -> TubeSpec:
        if (self.precurvature is None) == (self.radius_of_curvature is None):
            raise InvalidInputError(
                f"tube {self.tube_id}: give exactly one of precurvature or radius_of_curvature"
            )
        if self.precurvature is not None:
            kappa = self.precurvature
        else:
            if self.radius_of_curvature <= 0:
                raise InvalidInputError(
                    f"tube {self.tube_id}: radius_of_curvature must be > 0"
                )
            kappa = 1.0 / self.radius_of_curvature
        return TubeSpec(
            tube_id=self.tube_id,
            youngs_modulus=self.youngs_modulus_gpa * 1e3,
            outer_diameter=self.outer_diameter,
            inner_diameter=self.inner_diameter,
            precurvature=kappa,
            straight_length=self.straight_length,
            curved_length=self.curved_length,
        )


class AxisBody(BaseModel):
    tube_id: int
    translation_letter: str
    rotation_letter: str
    steps_per_mm: float = DEFAULT_STEPS_PER_MM
    steps_per_degree: float = DEFAULT_STEPS_PER_DEGREE


class LimitsBody(BaseModel):
    translation: tuple[float, float] = (0.0, 50.0)
    rotation: tuple[float, float] = (-180.0, 180.0)


class JointsBody(BaseModel):
    translations: list[float]
    rotations: list[float]

    def to_config(self) -> JointConfig:
        return JointConfig(translations=self.translations, rotations=self.rotations)


class RobotCreateBody(BaseModel):
    """Robot description as file text or structured fields, plus initial state."""

    file: str | None = None
    name: str | None = None
    tubes: list[TubeBody] | None = None
    axes: list[AxisBody] | None = None
    limits: LimitsBody | None = None
    joints: JointsBody | None = None
    backbone_ds: float = Field(default=1.0, gt=0)
    feed: float | None = DEFAULT_FEED

    def to_description(self) -> RobotDescription:
        if (self.file is None) == (self.tubes is None):
            raise InvalidInputError("provide exactly one of 'file' or 'tubes'")
        if self.file is not None:
            desc = loads_robot(self.file)
            if self.name:
                desc = RobotDescription(
                    name=self.name, tubes=desc.tubes, axis_map=desc.axis_map, limits=desc.limits
                )
            return desc

        tubes = tuple(t.to_spec() for t in self.tubes)
        validate_tube_set(list(tubes))
        if self.axes is not None:
            axis_map = AxisMap(
                tuple(
                    AxisAssignment(
                        tube_id=a.tube_id,
                        translation_letter=a.translation_letter,
                        rotation_letter=a.rotation_letter,
                        steps_per_mm=a.steps_per_mm,
                        steps_per_degree=a.steps_per_degree,
                    )
                    for a in sorted(self.axes, key=lambda a: a.tube_id)
                )
            )
        else:
            axis_map = AxisMap.default(len(tubes))
        limits = (
            JointLimits(translation=self.limits.translation, rotation=self.limits.rotation)
            if self.limits is not None
            else JointLimits()
        )
        return RobotDescription(
            name=self.name or "robot", tubes=tubes, axis_map=axis_map, limits=limits
        )


class JointsPatchBody(BaseModel):
    translations: list[float]
    rotations: list[float]
    feed: float | None = None

    def to_config(self) -> JointConfig:
        return JointConfig(translations=self.translations, rotations=self.rotations)


class FkBody(BaseModel):
    translations: list[float]
    rotations: list[float]

    def to_config(self) -> JointConfig:
        return JointConfig(translations=self.translations, rotations=self.rotations)


class RegistrationBody(BaseModel):
    tracker_points: list[tuple[float, float, float]]
    base_points: list[tuple[float, float, float]]


class NoiseBody(BaseModel):
    kind: str = "none"
    sigma_translation: float = 0.0
    sigma_rotation: float = 0.0
    offset_translation: float = 0.0
    offset_rotation: float = 0.0


class AccuracyBody(BaseModel):
    n: int = Field(ge=1)
    seed: int = 0
    noise: NoiseBody = NoiseBody()
    include_residuals: bool = False


class InPlaneBody(BaseModel):
    delta_rho: float
    measured_after: tuple[float, float, float] | None = None


class OutOfPlaneBody(BaseModel):
    delta_theta: float
    tube_id: int = 1


class TrackingBody(BaseModel):
    measured_tracker: tuple[float, float, float]
    joints: JointsBody | None = None


class ValidateBody(BaseModel):
    file: str


class GcodeEmitBody(BaseModel):
    file: str | None = None
    n_tubes: int | None = None
    translations: list[float]
    rotations: list[float]
    feed: float | None = DEFAULT_FEED


class GcodeParseBody(BaseModel):
    line: str
    file: str | None = None

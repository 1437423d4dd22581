"""ctrkit: concentric tube robot kinematics, virtual actuation and metrology."""

__version__ = "0.1.0"

from ctrkit.errors import (
    AxisConfigError,
    ConfigurationError,
    CtrError,
    DegenerateGeometryError,
    DegeneratePlaneError,
    GcodeParseError,
    InvalidInputError,
    JointLimitError,
    MissingRegistrationError,
    NotHomedError,
    UnsupportedCommandError,
)
from ctrkit.kinematics import (
    JointConfig,
    KinematicsResult,
    Link,
    Pose,
    TubeSpec,
    forward_kinematics,
    partition_links,
    sample_backbone,
    solve_link_mechanics,
)

__all__ = [
    "AxisConfigError",
    "ConfigurationError",
    "CtrError",
    "DegenerateGeometryError",
    "DegeneratePlaneError",
    "GcodeParseError",
    "InvalidInputError",
    "JointConfig",
    "JointLimitError",
    "KinematicsResult",
    "Link",
    "MissingRegistrationError",
    "NotHomedError",
    "Pose",
    "TubeSpec",
    "UnsupportedCommandError",
    "forward_kinematics",
    "partition_links",
    "sample_backbone",
    "solve_link_mechanics",
    "__version__",
]

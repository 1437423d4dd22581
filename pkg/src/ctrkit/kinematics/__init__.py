"""Concentric tube robot kinematics: tube models, link partition, transforms."""

from ctrkit.kinematics.bending import (
    EquilibriumPlane,
    equilibrium_plane,
    in_plane_curvature,
    normalize_angle,
)
from ctrkit.kinematics.links import (
    CURVED,
    MERGE_TOLERANCE,
    STRAIGHT,
    Link,
    partition_links,
    solve_link_mechanics,
)
from ctrkit.kinematics.transforms import (
    KinematicsResult,
    Pose,
    forward_kinematics,
    link_pose,
    sample_backbone,
)
from ctrkit.kinematics.tubes import (
    JointConfig,
    TubeSpec,
    annulus_second_moment,
    validate_joints,
    validate_tube_set,
)

__all__ = [
    "CURVED",
    "EquilibriumPlane",
    "JointConfig",
    "KinematicsResult",
    "Link",
    "MERGE_TOLERANCE",
    "Pose",
    "STRAIGHT",
    "TubeSpec",
    "annulus_second_moment",
    "equilibrium_plane",
    "forward_kinematics",
    "in_plane_curvature",
    "link_pose",
    "normalize_angle",
    "partition_links",
    "sample_backbone",
    "solve_link_mechanics",
    "validate_joints",
    "validate_tube_set",
]

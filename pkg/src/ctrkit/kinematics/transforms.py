"""Rigid transforms of constant-curvature arcs and their composition.

A link with arc length l, curvature kappa and plane angle phi maps its base
frame to its tip frame by a rotation about z through phi followed by a
circular arc in the rotated x-z plane. The full robot transform is the
base-to-tip product of the per-link transforms using relative plane angles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ctrkit.errors import InvalidInputError
from ctrkit.kinematics.links import Link, partition_links, solve_link_mechanics
from ctrkit.kinematics.tubes import JointConfig, TubeSpec

# below this arc angle (radians) a link is evaluated in its straight-line limit
STRAIGHT_ARC_THRESHOLD = 1e-7


@dataclass
class Pose:
    """Rigid transform: 3x3 rotation matrix plus translation vector in mm."""

    rotation: np.ndarray
    translation: np.ndarray

    @classmethod
    def identity(cls) -> "Pose":
        return cls(np.eye(3), np.zeros(3))

    def compose(self, other: "Pose") -> "Pose":
        """This pose followed by ``other`` expressed in this pose's frame."""
        return Pose(
            self.rotation @ other.rotation,
            self.translation + self.rotation @ other.translation,
        )

    def transform_point(self, point) -> np.ndarray:
        return self.translation + self.rotation @ np.asarray(point, dtype=float)

    def matrix(self) -> np.ndarray:
        """4x4 homogeneous matrix."""
        m = np.eye(4)
        m[:3, :3] = self.rotation
        m[:3, 3] = self.translation
        return m


def _rot_z(angle_rad: float) -> np.ndarray:
    c, s = math.cos(angle_rad), math.sin(angle_rad)
    return np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])


def _arc_offset(curvature: float, arc_length: float) -> np.ndarray:
    """In-plane chord of a circular arc starting along +z, bending toward +x."""
    angle = curvature * arc_length
    if angle < STRAIGHT_ARC_THRESHOLD:
        return np.array([0.0, 0.0, arc_length])
    # 2 sin^2(x/2) = 1 - cos(x), stable for small angles
    return np.array(
        [
            2.0 * math.sin(0.5 * angle) ** 2 / curvature,
            0.0,
            math.sin(angle) / curvature,
        ]
    )


def link_pose(arc_length: float, curvature: float, plane_angle: float) -> Pose:
    """Base-to-tip transform of one constant-curvature link.

    ``plane_angle`` is in degrees, applied about the base z-axis before the
    arc. Curvatures below the straight-line threshold take the analytic
    kappa -> 0 limit instead of dividing by kappa.
    """
    if arc_length <= 0:
        raise InvalidInputError(f"arc length must be > 0, got {arc_length}")
    if curvature < 0:
        raise InvalidInputError(f"curvature must be >= 0, got {curvature}")

    phi = math.radians(plane_angle)
    rz = _rot_z(phi)
    angle = curvature * arc_length
    if angle < STRAIGHT_ARC_THRESHOLD:
        return Pose(rz, np.array([0.0, 0.0, arc_length]))

    c, s = math.cos(angle), math.sin(angle)
    ry = np.array([[c, 0.0, s], [0.0, 1.0, 0.0], [-s, 0.0, c]])
    return Pose(rz @ ry, rz @ _arc_offset(curvature, arc_length))


@dataclass
class KinematicsResult:
    """Forward kinematics output: solved links and cumulative link poses."""

    tip: Pose
    links: list[Link]
    link_poses: list[Pose]  # base frame -> tip of each link


def forward_kinematics(tubes: list[TubeSpec], joints: JointConfig) -> KinematicsResult:
    """Tip pose and per-link poses for a valid configuration.

    The tip transform is the ordered product of the link transforms, using
    each link's plane angle relative to its predecessor. A fully retracted
    robot maps to the identity.
    """
    links = solve_link_mechanics(partition_links(tubes, joints), tubes, joints)
    pose = Pose.identity()
    link_poses = []
    for link in links:
        pose = pose.compose(link_pose(link.arc_length, link.curvature, link.plane_angle))
        link_poses.append(pose)
    return KinematicsResult(tip=pose, links=links, link_poses=link_poses)


def sample_backbone(
    tubes: list[TubeSpec], joints: JointConfig, ds: float
) -> list[tuple[float, np.ndarray]]:
    """Points on the backbone centerline at arc-length steps of ``ds`` mm.

    Samples run from s = 0 (the origin) to the full deployed length; the final
    point lands exactly on the tip even when the length is not a multiple of
    ``ds``, so consecutive samples are never more than ``ds`` apart.
    """
    if ds <= 0:
        raise InvalidInputError(f"ds must be > 0, got {ds}")

    result = forward_kinematics(tubes, joints)
    length = joints.max_deployment
    s_values = [i * ds for i in range(int(math.floor(length / ds + 1e-12)) + 1)]
    if length - s_values[-1] > 1e-9:
        s_values.append(length)

    if not result.links:
        return [(0.0, np.zeros(3))]

    starts = [link.s_start for link in result.links]
    bases = [Pose.identity()] + result.link_poses[:-1]
    samples = []
    for s in s_values:
        # rightmost link whose start is <= s (tip sample uses the last link)
        idx = min(
            len(starts) - 1,
            int(np.searchsorted(starts, s, side="right")) - 1,
        )
        link = result.links[idx]
        base = bases[idx]
        offset = _rot_z(math.radians(link.plane_angle)) @ _arc_offset(
            link.curvature, max(s - link.s_start, 0.0)
        ) if s > link.s_start else np.zeros(3)
        samples.append((s, base.transform_point(offset)))
    return samples

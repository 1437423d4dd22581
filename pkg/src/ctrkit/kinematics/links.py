"""Partition of the deployed robot into constant-curvature links.

The backbone changes behavior wherever a tube tip or a straight-to-curved
transition crosses the front plate side of the workspace. Between consecutive
transition points the set of overlapping tube sections is constant, so the
segment bends as one circular arc.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from ctrkit.errors import DegeneratePlaneError
from ctrkit.kinematics.bending import equilibrium_plane, normalize_angle
from ctrkit.kinematics.tubes import JointConfig, TubeSpec, validate_joints

STRAIGHT = "straight"
CURVED = "curved"

# transition points closer than this collapse into one boundary (mm)
MERGE_TOLERANCE = 1e-6


@dataclass(frozen=True)
class Link:
    """One constant-curvature arc of the assembled robot.

    ``members`` maps tube id to the section ("straight" or "curved") that tube
    contributes over this arc. ``plane_angle`` is stored relative to the
    previous link's bending plane; ``absolute_plane_angle`` is in the robot
    base frame. Both are None until solve_link_mechanics fills them.
    """

    s_start: float
    s_end: float
    members: dict[int, str]
    curvature: float | None = None
    plane_angle: float | None = None
    absolute_plane_angle: float | None = None

    @property
    def arc_length(self) -> float:
        return self.s_end - self.s_start

    def is_solved(self) -> bool:
        return self.curvature is not None


def _merge_boundaries(values: list[float], end: float) -> list[float]:
    merged = [0.0]
    for v in sorted(values):
        if v - merged[-1] > MERGE_TOLERANCE:
            merged.append(v)
    merged[-1] = end  # the deployed length is always the final boundary
    return merged


def partition_links(tubes: list[TubeSpec], joints: JointConfig) -> list[Link]:
    """Split [0, max deployment] into links with constant member signatures.

    Returns links with lengths and memberships only; curvature and plane
    angles are filled in by solve_link_mechanics. A fully retracted robot
    yields an empty list.
    """
    validate_joints(tubes, joints)
    end = joints.max_deployment
    if end <= 0.0:
        return []

    points = [0.0]
    for tube, rho in zip(tubes, joints.translations):
        points.append(max(0.0, rho - tube.curved_length))
        points.append(rho)
    boundaries = _merge_boundaries([p for p in points if p <= end], end)

    links = []
    for a, b in zip(boundaries, boundaries[1:]):
        mid = 0.5 * (a + b)
        members = {}
        for tube, rho in zip(tubes, joints.translations):
            if rho > mid:
                section = CURVED if mid > rho - tube.curved_length else STRAIGHT
                members[tube.tube_id] = section
        links.append(Link(s_start=a, s_end=b, members=members))
    return links


def solve_link_mechanics(
    links: list[Link], tubes: list[TubeSpec], joints: JointConfig
) -> list[Link]:
    """Fill curvature and bending-plane angles for partitioned links.

    Tubes overlapping through their curved section contribute their
    precurvature at their joint rotation angle; straight sections contribute
    stiffness only. Where all contributions cancel the link stays straight and
    its absolute plane angle carries forward from the previous link (0 for the
    first), keeping the relative angle chain well-defined.
    """
    by_id = {t.tube_id: t for t in tubes}
    theta = {t.tube_id: th for t, th in zip(tubes, joints.rotations)}

    solved = []
    previous_angle = 0.0
    for link in links:
        rows = []
        for tube_id, section in link.members.items():
            tube = by_id[tube_id]
            kappa = tube.precurvature if section == CURVED else 0.0
            rows.append((tube.bending_stiffness, kappa, theta[tube_id]))
        try:
            plane = equilibrium_plane(rows)
            curvature = plane.resultant_curvature
            absolute = plane.phi
        except DegeneratePlaneError:
            curvature = 0.0
            absolute = previous_angle
        solved.append(
            replace(
                link,
                curvature=curvature,
                plane_angle=normalize_angle(absolute - previous_angle),
                absolute_plane_angle=absolute,
            )
        )
        previous_angle = absolute
    return solved

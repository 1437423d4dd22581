"""Equilibrium bending of overlapping pre-curved tubes.

A stack of concentric tubes clamped together settles at the stiffness-weighted
mean of the member curvature vectors. Angles come in and go out in degrees;
trigonometry uses degree-exact kernels so that right-angle and opposing-tube
configurations cancel without rounding residue.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy.special import cosdg, sindg

from ctrkit.errors import DegeneratePlaneError, InvalidInputError


def normalize_angle(degrees: float) -> float:
    """Reduce an angle in degrees to the interval (-180, 180]."""
    r = math.remainder(degrees, 360.0)
    return 180.0 if r == -180.0 else r + 0.0  # +0.0 folds -0.0 into 0.0


@dataclass(frozen=True)
class EquilibriumPlane:
    """Equilibrium curvature vector of one link.

    ``chi`` and ``gamma`` are the curvature components along the base-frame
    x and y bending directions (1/mm); ``phi`` is the plane angle in degrees,
    normalized to (-180, 180]; ``resultant_curvature`` is the magnitude.
    """

    chi: float
    gamma: float
    phi: float
    resultant_curvature: float


def _check_members(members) -> list[tuple[float, float, float]]:
    rows = [tuple(float(v) for v in m) for m in members]
    if not rows:
        raise InvalidInputError("no tubes overlap in this link")
    for row in rows:
        if row[0] <= 0:
            raise InvalidInputError(f"bending stiffness must be > 0, got {row[0]}")
        if row[1] < 0:
            raise InvalidInputError(f"precurvature must be >= 0, got {row[1]}")
    return rows


def in_plane_curvature(members) -> float:
    """Equilibrium curvature of tubes bending in a shared plane.

    ``members`` is a sequence of (stiffness E*I, precurvature) pairs. Returns
    the stiffness-weighted mean curvature, which lies between the smallest and
    largest member precurvature.
    """
    rows = _check_members((m[0], m[1], 0.0) for m in members)
    total = sum(ei for ei, _, _ in rows)
    kappa = sum(ei * k for ei, k, _ in rows) / total
    # weighted mean is bounded by its inputs; clamp rounding excursions
    lo = min(k for _, k, _ in rows)
    hi = max(k for _, k, _ in rows)
    return min(max(kappa, lo), hi)


def equilibrium_plane(members) -> EquilibriumPlane:
    """Equilibrium curvature vector of tubes with rotated bending planes.

    ``members`` is a sequence of (stiffness E*I, precurvature, angle) triples
    with angles in degrees. The plane angle is the two-argument arctangent of
    the weighted (sin, cos) curvature sums, so a single curved tube at angle
    theta yields phi = theta.

    Raises DegeneratePlaneError when the contributions cancel exactly (or all
    members are straight); the plane of a straight link is unobservable.
    """
    rows = _check_members(members)
    total = sum(ei for ei, _, _ in rows)

    curved = [(ei, k, normalize_angle(th)) for ei, k, th in rows if ei * k > 0]
    if not curved:
        raise DegeneratePlaneError("all member tubes are straight")

    angles = {th for _, _, th in curved}
    if len(angles) == 1:
        # coplanar stack: the in-plane weighted mean, exactly at the shared angle
        phi = angles.pop()
        kappa = sum(ei * k for ei, k, _ in rows) / total
        return EquilibriumPlane(
            chi=kappa * float(cosdg(phi)),
            gamma=kappa * float(sindg(phi)),
            phi=phi,
            resultant_curvature=kappa,
        )

    chi = sum(ei * k * float(cosdg(th)) for ei, k, th in curved) / total
    gamma = sum(ei * k * float(sindg(th)) for ei, k, th in curved) / total
    if chi == 0.0 and gamma == 0.0:
        raise DegeneratePlaneError("member tube curvatures cancel")
    return EquilibriumPlane(
        chi=chi,
        gamma=gamma,
        phi=normalize_angle(math.degrees(math.atan2(gamma, chi))),
        resultant_curvature=math.hypot(chi, gamma),
    )

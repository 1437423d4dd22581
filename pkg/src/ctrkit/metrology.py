"""Frame registration and model-verification experiments.

Registration estimates the rigid transform from a tracker frame to the robot
base frame from corresponding points. The experiment routines compare
forward-kinematics predictions against measured tips, where "measured" data
comes either from simulation or from a CSV of real tracker readings.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, replace

import numpy as np
from scipy.special import cosdg, sindg

from ctrkit.errors import (
    DegenerateGeometryError,
    InvalidInputError,
    MissingRegistrationError,
)
from ctrkit.kinematics.bending import normalize_angle
from ctrkit.kinematics.transforms import Pose, forward_kinematics
from ctrkit.kinematics.tubes import JointConfig, TubeSpec, validate_joints

IN_PLANE = "in-plane"
OUT_OF_PLANE = "out-of-plane"
TIP_TRACKING = "tip-tracking"

# centered point clouds flatter than this are treated as collinear
_COLLINEAR_RATIO = 1e-8


@dataclass(frozen=True)
class FrameRegistration:
    """Rigid transform tracker frame -> robot base frame, with fit quality."""

    pose: Pose
    fit_rmse: float
    n_pairs: int

    def to_base(self, point) -> np.ndarray:
        """Map a tracker-frame point into the robot base frame."""
        return self.pose.transform_point(point)


def register_frames(tracker_points, base_points) -> FrameRegistration:
    """Least-squares rigid transform (rotation + translation, no scale).

    Solves min over (R, t) of the sum of ||R q_i + t - p_i||^2 for tracker
    points q and base points p via SVD of the cross-covariance, with the
    determinant correction that excludes reflections. Needs at least three
    non-collinear pairs.
    """
    q = np.asarray(tracker_points, dtype=float)
    p = np.asarray(base_points, dtype=float)
    if q.ndim != 2 or q.shape[1] != 3 or p.shape != q.shape:
        raise InvalidInputError(
            f"point sets must both be (n, 3), got {q.shape} and {p.shape}"
        )
    if len(q) < 3:
        raise DegenerateGeometryError(f"need at least 3 point pairs, got {len(q)}")

    q_centroid = q.mean(axis=0)
    p_centroid = p.mean(axis=0)
    qc = q - q_centroid
    pc = p - p_centroid
    for label, cloud in (("tracker", qc), ("base", pc)):
        s = np.linalg.svd(cloud, compute_uv=False)
        if s[1] <= _COLLINEAR_RATIO * max(s[0], 1.0):
            raise DegenerateGeometryError(
                f"{label} points are collinear; the rotation is not determined"
            )

    h = qc.T @ pc
    u, _, vt = np.linalg.svd(h)
    d = np.sign(np.linalg.det(vt.T @ u.T))
    rotation = vt.T @ np.diag([1.0, 1.0, d]) @ u.T
    translation = p_centroid - rotation @ q_centroid
    residuals = (rotation @ q.T).T + translation - p
    fit_rmse = float(np.sqrt((residuals**2).sum(axis=1).mean()))
    return FrameRegistration(
        pose=Pose(rotation, translation), fit_rmse=fit_rmse, n_pairs=len(q)
    )


@dataclass
class ExperimentRecord:
    """Prediction-vs-measurement record for one verification experiment."""

    kind: str
    joints_before: JointConfig
    joints_after: JointConfig
    predicted_before: np.ndarray
    predicted_after: np.ndarray
    measured_before: np.ndarray | None = None
    measured_after: np.ndarray | None = None
    error_vector: np.ndarray | None = None
    error_norm: float | None = None
    # in-plane experiment: (r, z) coordinates in the common bending plane
    in_plane_before: tuple[float, float] | None = None
    in_plane_after: tuple[float, float] | None = None
    # out-of-plane experiment: distal link plane angles (degrees)
    plane_angle_before: float | None = None
    plane_angle_after: float | None = None
    plane_angle_change: float | None = None

    def with_measurement(self, measured_after, measured_before=None) -> "ExperimentRecord":
        """Attach measured tip(s) in the base frame and compute the error."""
        measured_after = np.asarray(measured_after, dtype=float)
        error = self.predicted_after - measured_after
        return replace(
            self,
            measured_before=None
            if measured_before is None
            else np.asarray(measured_before, dtype=float),
            measured_after=measured_after,
            error_vector=error,
            error_norm=float(np.linalg.norm(error)),
        )


def _tip(tubes: list[TubeSpec], joints: JointConfig) -> np.ndarray:
    return forward_kinematics(tubes, joints).tip.translation


def in_plane_experiment(
    tubes: list[TubeSpec], joints: JointConfig, delta_rho_inner: float
) -> ExperimentRecord:
    """Translate the innermost tube by delta_rho with all tubes coplanar.

    Requires every tube at the same rotation angle so the whole backbone
    stays in one bending plane; the record carries (r, z) coordinates in
    that plane for before and after.
    """
    validate_joints(tubes, joints)
    angles = {normalize_angle(theta) for theta in joints.rotations}
    if len(angles) > 1:
        raise InvalidInputError(
            f"in-plane experiment needs all rotations equal, got {joints.rotations}"
        )
    plane_angle = angles.pop()

    after = JointConfig(
        translations=joints.translations[:-1] + (joints.translations[-1] + delta_rho_inner,),
        rotations=joints.rotations,
    )
    validate_joints(tubes, after)

    tip_before = _tip(tubes, joints)
    tip_after = _tip(tubes, after)

    def in_plane(p) -> tuple[float, float]:
        # radial coordinate along the bending plane through the z-axis
        return (
            float(p[0] * cosdg(plane_angle) + p[1] * sindg(plane_angle)),
            float(p[2]),
        )

    return ExperimentRecord(
        kind=IN_PLANE,
        joints_before=joints,
        joints_after=after,
        predicted_before=tip_before,
        predicted_after=tip_after,
        in_plane_before=in_plane(tip_before),
        in_plane_after=in_plane(tip_after),
    )


def out_of_plane_experiment(
    tubes: list[TubeSpec],
    joints: JointConfig,
    delta_theta: float,
    tube_id: int = 1,
) -> ExperimentRecord:
    """Rotate one tube by delta_theta and record the bending-plane change.

    The record carries the distal link's absolute plane angle before and
    after plus the normalized change, the quantity measured against a
    digitized top-view image in the bench version of this experiment.
    """
    validate_joints(tubes, joints)
    if not 1 <= tube_id <= len(tubes):
        raise InvalidInputError(f"tube_id must be in 1..{len(tubes)}, got {tube_id}")
    idx = tube_id - 1
    rotations = list(joints.rotations)
    rotations[idx] = rotations[idx] + delta_theta
    after = JointConfig(translations=joints.translations, rotations=tuple(rotations))

    result_before = forward_kinematics(tubes, joints)
    result_after = forward_kinematics(tubes, after)

    def distal_angle(links) -> float | None:
        return links[-1].absolute_plane_angle if links else None

    angle_before = distal_angle(result_before.links)
    angle_after = distal_angle(result_after.links)
    change = None
    if angle_before is not None and angle_after is not None:
        change = normalize_angle(angle_after - angle_before)

    return ExperimentRecord(
        kind=OUT_OF_PLANE,
        joints_before=joints,
        joints_after=after,
        predicted_before=result_before.tip.translation,
        predicted_after=result_after.tip.translation,
        plane_angle_before=angle_before,
        plane_angle_after=angle_after,
        plane_angle_change=change,
    )


def tip_tracking_comparison(
    tubes: list[TubeSpec],
    joints: JointConfig,
    registration: FrameRegistration | None,
    measured_tip_tracker_frame,
) -> ExperimentRecord:
    """Compare the FK tip against a tracker measurement.

    The measurement is given in the tracker frame and mapped into the base
    frame through the registration before differencing.
    """
    if registration is None:
        raise MissingRegistrationError(
            "tip tracking needs a tracker-to-base registration; register frames first"
        )
    validate_joints(tubes, joints)
    predicted = _tip(tubes, joints)
    measured = registration.to_base(measured_tip_tracker_frame)
    record = ExperimentRecord(
        kind=TIP_TRACKING,
        joints_before=joints,
        joints_after=joints,
        predicted_before=predicted,
        predicted_after=predicted,
    )
    return record.with_measurement(measured)


def read_points_csv(source) -> list[tuple[str, np.ndarray]]:
    """Measured points from CSV with required header frame_label,x,y,z."""
    if isinstance(source, (str, bytes)):
        handle = io.StringIO(source if isinstance(source, str) else source.decode())
    else:
        handle = source
    reader = csv.reader(handle)
    try:
        header = next(reader)
    except StopIteration:
        raise InvalidInputError("CSV is empty; expected header frame_label,x,y,z") from None
    if [h.strip().lower() for h in header] != ["frame_label", "x", "y", "z"]:
        raise InvalidInputError(
            f"CSV header must be frame_label,x,y,z, got {','.join(header)}"
        )
    points = []
    for row_number, row in enumerate(reader, start=2):
        if not row or all(not cell.strip() for cell in row):
            continue
        if len(row) != 4:
            raise InvalidInputError(f"CSV row {row_number} must have 4 columns, got {len(row)}")
        try:
            vec = np.array([float(row[1]), float(row[2]), float(row[3])])
        except ValueError:
            raise InvalidInputError(f"CSV row {row_number} has a non-numeric coordinate") from None
        points.append((row[0].strip(), vec))
    return points


def load_points_csv(path) -> list[tuple[str, np.ndarray]]:
    with open(path, newline="") as handle:
        return read_points_csv(handle)


def _vector_cell(value) -> list:
    if value is None:
        return ["", "", ""]
    return [repr(float(v)) for v in np.asarray(value).ravel()[:3]]


def export_record_csv(record: ExperimentRecord, destination=None) -> str:
    """ExperimentRecord as CSV rows quantity,x,y,z (scalars use only x)."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    def joints_cell(values) -> str:
        return ";".join(repr(float(v)) for v in values)

    writer.writerow(["quantity", "x", "y", "z"])
    writer.writerow(["kind", record.kind, "", ""])
    writer.writerow(["translations_before", joints_cell(record.joints_before.translations), "", ""])
    writer.writerow(["rotations_before", joints_cell(record.joints_before.rotations), "", ""])
    writer.writerow(["translations_after", joints_cell(record.joints_after.translations), "", ""])
    writer.writerow(["rotations_after", joints_cell(record.joints_after.rotations), "", ""])
    writer.writerow(["predicted_before", *_vector_cell(record.predicted_before)])
    writer.writerow(["predicted_after", *_vector_cell(record.predicted_after)])
    if record.measured_after is not None:
        writer.writerow(["measured_after", *_vector_cell(record.measured_after)])
    if record.error_vector is not None:
        writer.writerow(["error_vector", *_vector_cell(record.error_vector)])
        writer.writerow(["error_norm", repr(record.error_norm), "", ""])
    if record.in_plane_before is not None:
        writer.writerow(["in_plane_before_rz", *map(repr, record.in_plane_before), ""])
        writer.writerow(["in_plane_after_rz", *map(repr, record.in_plane_after), ""])
    if record.plane_angle_change is not None:
        writer.writerow(["plane_angle_before", repr(record.plane_angle_before), "", ""])
        writer.writerow(["plane_angle_after", repr(record.plane_angle_after), "", ""])
        writer.writerow(["plane_angle_change", repr(record.plane_angle_change), "", ""])
    text = buffer.getvalue()
    if destination is not None:
        destination.write(text)
    return text

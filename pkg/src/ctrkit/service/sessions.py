"""In-memory robot sessions with per-session locking and event fan-out."""

from __future__ import annotations

import asyncio
import json
import uuid
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ctrkit.actuation import ControllerState
from ctrkit.errors import InvalidInputError
from ctrkit.gcode import emit_move, parse_line
from ctrkit.kinematics.transforms import forward_kinematics, sample_backbone
from ctrkit.kinematics.tubes import JointConfig, validate_joints
from ctrkit.metrology import FrameRegistration
from ctrkit.robotfile import RobotDescription


def _tube_payload(tube) -> dict:
    return {
        "tube_id": tube.tube_id,
        "youngs_modulus_gpa": tube.youngs_modulus / 1e3,
        "outer_diameter": tube.outer_diameter,
        "inner_diameter": tube.inner_diameter,
        "precurvature": tube.precurvature,
        "straight_length": tube.straight_length,
        "curved_length": tube.curved_length,
        "bending_stiffness": tube.bending_stiffness,
    }


def _link_payload(link) -> dict:
    return {
        "s_start": link.s_start,
        "s_end": link.s_end,
        "arc_length": link.arc_length,
        "members": {str(tube_id): role for tube_id, role in sorted(link.members.items())},
        "curvature": link.curvature,
        "plane_angle": link.plane_angle,
        "absolute_plane_angle": link.absolute_plane_angle,
    }


def kinematics_payload(tubes, joints: JointConfig, ds: float) -> dict:
    """links/tip/backbone fields shared by state payloads and FK queries."""
    result = forward_kinematics(list(tubes), joints)
    samples = sample_backbone(list(tubes), joints, ds)
    return {
        "links": [_link_payload(link) for link in result.links],
        "tip": {
            "position": [float(v) for v in result.tip.translation],
            "rotation": [[float(v) for v in row] for row in result.tip.rotation],
        },
        "backbone": {
            "ds": ds,
            "samples": [
                {"s": float(s), "p": [float(v) for v in p]} for s, p in samples
            ],
        },
    }


@dataclass
class RobotSession:
    """One virtual robot: description, controller, registration, event seq."""

    session_id: str
    description: RobotDescription
    controller: ControllerState
    feed: float | None
    backbone_ds: float
    registration: FrameRegistration | None = None
    seq: int = 0
    lock: asyncio.Lock = field(default_factory=asyncio.Lock)
    subscribers: list[asyncio.Queue] = field(default_factory=list)

    @property
    def tubes(self):
        return list(self.description.tubes)

    def joints(self) -> JointConfig:
        return self.controller.joints()

    def state_payload(self) -> dict:
        joints = self.joints()
        actual = self.controller.actual_joints()
        payload = {
            "session_id": self.session_id,
            "name": self.description.name,
            "seq": self.seq,
            "homed": self.controller.homed,
            "joints": {
                "translations": list(joints.translations),
                "rotations": list(joints.rotations),
            },
            "actual_joints": {
                "translations": list(actual.translations),
                "rotations": list(actual.rotations),
            },
            "limits": {
                "translation": list(self.description.limits.translation),
                "rotation": list(self.description.limits.rotation),
            },
            "tubes": [_tube_payload(t) for t in self.description.tubes],
            "axes": [
                {
                    "tube_id": a.tube_id,
                    "translation_letter": a.translation_letter,
                    "rotation_letter": a.rotation_letter,
                    "steps_per_mm": a.steps_per_mm,
                    "steps_per_degree": a.steps_per_degree,
                }
                for a in self.description.axis_map.assignments
            ],
            "registration": None
            if self.registration is None
            else registration_payload(self.registration),
        }
        payload.update(kinematics_payload(self.tubes, joints, self.backbone_ds))
        return payload

    def drive_to(self, target: JointConfig, feed: float | None = None) -> None:
        """Move the controller to a validated target through the G-code path."""
        validate_joints(self.tubes, target)
        text = emit_move(target, self.description.axis_map, feed or self.feed)
        for line in text.splitlines():
            self.controller.apply(parse_line(line, self.description.axis_map))

    def broadcast(self) -> dict:
        """Bump seq, push the new state to every subscriber, return it."""
        self.seq += 1
        payload = self.state_payload()
        for queue in list(self.subscribers):
            queue.put_nowait(payload)
        return payload


def registration_payload(registration: FrameRegistration) -> dict:
    return {
        "rotation": [[float(v) for v in row] for row in registration.pose.rotation],
        "translation": [float(v) for v in registration.pose.translation],
        "fit_rmse": registration.fit_rmse,
        "n_pairs": registration.n_pairs,
    }


class SessionStore:
    """Session registry with optional JSON snapshot persistence."""

    def __init__(self, snapshot_path: str | None = None):
        self.sessions: dict[str, RobotSession] = {}
        self.snapshot_path = Path(snapshot_path) if snapshot_path else None
        self._loading = False
        if self.snapshot_path and self.snapshot_path.exists():
            self._loading = True
            try:
                self._load_snapshot()
            finally:
                self._loading = False

    def create(
        self,
        description: RobotDescription,
        joints: JointConfig | None = None,
        backbone_ds: float = 1.0,
        feed: float | None = None,
        session_id: str | None = None,
    ) -> RobotSession:
        controller = ControllerState(description.axis_map, limits=description.limits)
        controller.handle_line("G28")
        session = RobotSession(
            session_id=session_id or uuid.uuid4().hex[:12],
            description=description,
            controller=controller,
            feed=feed,
            backbone_ds=backbone_ds,
        )
        if joints is not None and any(v != 0 for v in (*joints.translations, *joints.rotations)):
            session.drive_to(joints)
        else:
            validate_joints(session.tubes, session.joints())
        self.sessions[session.session_id] = session
        self.save_snapshot()
        return session

    def get(self, session_id: str) -> RobotSession:
        session = self.sessions.get(session_id)
        if session is None:
            raise KeyError(session_id)
        return session

    def delete(self, session_id: str) -> None:
        del self.sessions[session_id]
        self.save_snapshot()

    def save_snapshot(self) -> None:
        if self.snapshot_path is None or self._loading:
            return
        data = {"sessions": [self._session_snapshot(s) for s in self.sessions.values()]}
        self.snapshot_path.write_text(json.dumps(data, indent=2))

    @staticmethod
    def _session_snapshot(session: RobotSession) -> dict:
        joints = session.joints()
        desc = session.description
        return {
            "session_id": session.session_id,
            "name": desc.name,
            "seq": session.seq,
            "backbone_ds": session.backbone_ds,
            "feed": session.feed,
            "tubes": [_tube_payload(t) for t in desc.tubes],
            "axes": [
                {
                    "tube_id": a.tube_id,
                    "translation_letter": a.translation_letter,
                    "rotation_letter": a.rotation_letter,
                    "steps_per_mm": a.steps_per_mm,
                    "steps_per_degree": a.steps_per_degree,
                }
                for a in desc.axis_map.assignments
            ],
            "limits": {
                "translation": list(desc.limits.translation),
                "rotation": list(desc.limits.rotation),
            },
            "joints": {
                "translations": list(joints.translations),
                "rotations": list(joints.rotations),
            },
            "registration": None
            if session.registration is None
            else registration_payload(session.registration),
        }

    def _load_snapshot(self) -> None:
        from ctrkit.gcode import AxisAssignment, AxisMap, JointLimits
        from ctrkit.kinematics.tubes import TubeSpec
        from ctrkit.kinematics.transforms import Pose

        try:
            data = json.loads(self.snapshot_path.read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise InvalidInputError(f"unreadable snapshot {self.snapshot_path}: {exc}") from None
        for entry in data.get("sessions", []):
            tubes = tuple(
                TubeSpec(
                    tube_id=t["tube_id"],
                    youngs_modulus=t["youngs_modulus_gpa"] * 1e3,
                    outer_diameter=t["outer_diameter"],
                    inner_diameter=t["inner_diameter"],
                    precurvature=t["precurvature"],
                    straight_length=t["straight_length"],
                    curved_length=t["curved_length"],
                )
                for t in entry["tubes"]
            )
            axis_map = AxisMap(
                tuple(
                    AxisAssignment(
                        tube_id=a["tube_id"],
                        translation_letter=a["translation_letter"],
                        rotation_letter=a["rotation_letter"],
                        steps_per_mm=a["steps_per_mm"],
                        steps_per_degree=a["steps_per_degree"],
                    )
                    for a in entry["axes"]
                )
            )
            limits = JointLimits(
                translation=tuple(entry["limits"]["translation"]),
                rotation=tuple(entry["limits"]["rotation"]),
            )
            description = RobotDescription(
                name=entry["name"], tubes=tubes, axis_map=axis_map, limits=limits
            )
            session = self.create(
                description,
                joints=JointConfig(
                    translations=entry["joints"]["translations"],
                    rotations=entry["joints"]["rotations"],
                ),
                backbone_ds=entry["backbone_ds"],
                feed=entry["feed"],
                session_id=entry["session_id"],
            )
            session.seq = entry.get("seq", 0)
            reg = entry.get("registration")
            if reg is not None:
                session.registration = FrameRegistration(
                    pose=Pose(np.array(reg["rotation"]), np.array(reg["translation"])),
                    fit_rmse=reg["fit_rmse"],
                    n_pairs=reg["n_pairs"],
                )

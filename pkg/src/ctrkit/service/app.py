"""HTTP and WebSocket service around the kinematics and actuation modules.

Every kinematic number in a response comes from a direct call into the core
package; the service adds session bookkeeping, the G-code drive path for
joint updates, and an ordered per-session event stream.
"""

from __future__ import annotations

import asyncio
import os

from fastapi import FastAPI, HTTPException, Response, WebSocket, WebSocketDisconnect
from fastapi.responses import JSONResponse

import ctrkit
from ctrkit.actuation import NoiseModel, run_accuracy_experiment
from ctrkit.errors import (
    AxisConfigError,
    ConfigurationError,
    CtrError,
    DegenerateGeometryError,
    GcodeParseError,
    InvalidInputError,
    JointLimitError,
    MissingRegistrationError,
    NotHomedError,
    UnsupportedCommandError,
)
from ctrkit.gcode import LINEAR_MOVE, AxisMap, emit_move, parse_line
from ctrkit.kinematics.tubes import JointConfig, validate_joints
from ctrkit.metrology import (
    register_frames,
    in_plane_experiment,
    out_of_plane_experiment,
    tip_tracking_comparison,
)
from ctrkit.robotfile import loads_robot
from ctrkit.service.models import (
    AccuracyBody,
    FkBody,
    GcodeEmitBody,
    GcodeParseBody,
    InPlaneBody,
    JointsPatchBody,
    OutOfPlaneBody,
    RegistrationBody,
    RobotCreateBody,
    TrackingBody,
    ValidateBody,
)
from ctrkit.service.sessions import (
    RobotSession,
    SessionStore,
    kinematics_payload,
    registration_payload,
)

DEFAULT_HOST = "127.0.0.1"
DEFAULT_PORT = 8642

_BAD_REQUEST = (
    InvalidInputError,
    ConfigurationError,
    AxisConfigError,
    GcodeParseError,
    UnsupportedCommandError,
    DegenerateGeometryError,
    MissingRegistrationError,
)
_CONFLICT = (JointLimitError, NotHomedError)


def _error_detail(exc: CtrError) -> dict:
    detail = {"error": type(exc).__name__, "message": str(exc)}
    if isinstance(exc, GcodeParseError):
        detail["column"] = exc.column
    if isinstance(exc, UnsupportedCommandError) and exc.line:
        detail["line"] = exc.line
    if isinstance(exc, JointLimitError):
        detail.update(
            axis=exc.axis, value=exc.value, low=exc.limits[0], high=exc.limits[1]
        )
    return detail


def _record_payload(record) -> dict:
    payload = {
        "kind": record.kind,
        "joints_before": {
            "translations": list(record.joints_before.translations),
            "rotations": list(record.joints_before.rotations),
        },
        "joints_after": {
            "translations": list(record.joints_after.translations),
            "rotations": list(record.joints_after.rotations),
        },
        "predicted_before": [float(v) for v in record.predicted_before],
        "predicted_after": [float(v) for v in record.predicted_after],
    }
    if record.measured_after is not None:
        payload["measured_after"] = [float(v) for v in record.measured_after]
    if record.error_vector is not None:
        payload["error_vector"] = [float(v) for v in record.error_vector]
        payload["error_norm"] = record.error_norm
    if record.in_plane_before is not None:
        payload["in_plane_before"] = list(record.in_plane_before)
        payload["in_plane_after"] = list(record.in_plane_after)
    if record.plane_angle_change is not None:
        payload["plane_angle_before"] = record.plane_angle_before
        payload["plane_angle_after"] = record.plane_angle_after
        payload["plane_angle_change"] = record.plane_angle_change
    return payload


def create_app(snapshot_path: str | None = None) -> FastAPI:
    """Build the service; snapshot path comes from the arg or CTRKIT_SNAPSHOT."""
    app = FastAPI(
        title="ctrkit service",
        version=ctrkit.__version__,
        openapi_url="/spec",
    )
    store = SessionStore(snapshot_path or os.environ.get("CTRKIT_SNAPSHOT"))
    app.state.store = store

    @app.exception_handler(CtrError)
    async def ctr_error_handler(request, exc: CtrError):
        status = 409 if isinstance(exc, _CONFLICT) else 400
        return JSONResponse(status_code=status, content={"detail": _error_detail(exc)})

    def get_session(session_id: str) -> RobotSession:
        try:
            return store.get(session_id)
        except KeyError:
            raise HTTPException(status_code=404, detail=f"unknown session {session_id}") from None

    @app.get("/healthz")
    async def healthz():
        return {"status": "ok", "version": ctrkit.__version__}

    @app.post("/robots", status_code=201)
    async def create_robot(body: RobotCreateBody):
        description = body.to_description()
        session = store.create(
            description,
            joints=body.joints.to_config() if body.joints else None,
            backbone_ds=body.backbone_ds,
            feed=body.feed,
        )
        return session.state_payload()

    @app.get("/robots/{session_id}")
    async def get_robot(session_id: str):
        return get_session(session_id).state_payload()

    @app.delete("/robots/{session_id}", status_code=204)
    async def delete_robot(session_id: str):
        get_session(session_id)
        store.delete(session_id)
        return Response(status_code=204)

    @app.patch("/robots/{session_id}/joints")
    async def patch_joints(session_id: str, body: JointsPatchBody):
        session = get_session(session_id)
        async with session.lock:
            session.drive_to(body.to_config(), feed=body.feed)
            payload = session.broadcast()
            store.save_snapshot()
        return payload

    @app.post("/robots/{session_id}/fk")
    async def query_fk(session_id: str, body: FkBody):
        session = get_session(session_id)
        joints = body.to_config()
        validate_joints(session.tubes, joints)
        payload = {"joints": {"translations": list(joints.translations), "rotations": list(joints.rotations)}}
        payload.update(kinematics_payload(session.tubes, joints, session.backbone_ds))
        return payload

    @app.get("/robots/{session_id}/backbone")
    async def get_backbone(session_id: str, ds: float | None = None):
        session = get_session(session_id)
        step = session.backbone_ds if ds is None else ds
        payload = kinematics_payload(session.tubes, session.joints(), step)
        return payload["backbone"]

    @app.post("/robots/{session_id}/registration")
    async def set_registration(session_id: str, body: RegistrationBody):
        session = get_session(session_id)
        registration = register_frames(body.tracker_points, body.base_points)
        async with session.lock:
            session.registration = registration
            store.save_snapshot()
        return registration_payload(registration)

    @app.post("/robots/{session_id}/experiments/in-plane")
    async def experiment_in_plane(session_id: str, body: InPlaneBody):
        session = get_session(session_id)
        record = in_plane_experiment(session.tubes, session.joints(), body.delta_rho)
        if body.measured_after is not None:
            record = record.with_measurement(body.measured_after)
        return _record_payload(record)

    @app.post("/robots/{session_id}/experiments/out-of-plane")
    async def experiment_out_of_plane(session_id: str, body: OutOfPlaneBody):
        session = get_session(session_id)
        record = out_of_plane_experiment(
            session.tubes, session.joints(), body.delta_theta, tube_id=body.tube_id
        )
        return _record_payload(record)

    @app.post("/robots/{session_id}/experiments/accuracy")
    async def experiment_accuracy(session_id: str, body: AccuracyBody):
        session = get_session(session_id)
        noise = NoiseModel(
            kind=body.noise.kind,
            sigma_translation=body.noise.sigma_translation,
            sigma_rotation=body.noise.sigma_rotation,
            offset_translation=body.noise.offset_translation,
            offset_rotation=body.noise.offset_rotation,
        )
        report = run_accuracy_experiment(
            body.n, body.seed, noise, axis_map=session.description.axis_map
        )
        payload = {
            "n_trials": report.n_trials,
            "rmse_translation": report.rmse_translation,
            "rmse_rotation": report.rmse_rotation,
            "command_rmse_translation": report.command_rmse_translation,
            "command_rmse_rotation": report.command_rmse_rotation,
        }
        if body.include_residuals:
            payload["translation_residuals"] = list(report.translation_residuals)
            payload["rotation_residuals"] = list(report.rotation_residuals)
        return payload

    @app.post("/robots/{session_id}/experiments/tracking")
    async def experiment_tracking(session_id: str, body: TrackingBody):
        session = get_session(session_id)
        joints = body.joints.to_config() if body.joints else session.joints()
        record = tip_tracking_comparison(
            session.tubes, joints, session.registration, body.measured_tracker
        )
        return _record_payload(record)

    @app.websocket("/robots/{session_id}/stream")
    async def stream(websocket: WebSocket, session_id: str):
        await websocket.accept()
        try:
            session = store.get(session_id)
        except KeyError:
            await websocket.close(code=4404, reason=f"unknown session {session_id}")
            return
        queue: asyncio.Queue = asyncio.Queue()
        session.subscribers.append(queue)
        try:
            await websocket.send_json(session.state_payload())
            while True:
                payload = await queue.get()
                await websocket.send_json(payload)
        except WebSocketDisconnect:
            pass
        finally:
            if queue in session.subscribers:
                session.subscribers.remove(queue)

    # stateless helpers used by the command-line client

    @app.post("/validate")
    async def validate_robot(body: ValidateBody):
        description = loads_robot(body.file)
        return {
            "valid": True,
            "name": description.name,
            "n_tubes": len(description.tubes),
            "tubes": [
                {
                    "tube_id": t.tube_id,
                    "youngs_modulus_gpa": t.youngs_modulus / 1e3,
                    "outer_diameter": t.outer_diameter,
                    "inner_diameter": t.inner_diameter,
                    "precurvature": t.precurvature,
                    "straight_length": t.straight_length,
                    "curved_length": t.curved_length,
                }
                for t in description.tubes
            ],
            "limits": {
                "translation": list(description.limits.translation),
                "rotation": list(description.limits.rotation),
            },
        }

    @app.post("/gcode/emit")
    async def gcode_emit(body: GcodeEmitBody):
        if body.file is not None:
            axis_map = loads_robot(body.file).axis_map
        else:
            axis_map = AxisMap.default(body.n_tubes or len(body.translations))
        joints = JointConfig(translations=body.translations, rotations=body.rotations)
        return {"text": emit_move(joints, axis_map, body.feed)}

    @app.post("/gcode/parse")
    async def gcode_parse(body: GcodeParseBody):
        axis_map = loads_robot(body.file).axis_map if body.file is not None else None
        command = parse_line(body.line, axis_map)
        payload = {"kind": command.kind}
        if command.kind == LINEAR_MOVE:
            payload["axis_words"] = command.axis_words
            payload["feed"] = command.feed
        return payload

    return app

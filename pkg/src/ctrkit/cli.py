"""Command-line front door; every subcommand talks to the HTTP service.

Without ``--url`` the CLI runs the service in-process over an ASGI transport,
so the same request/response path is exercised whether or not a server is
running. Exit codes: 0 success, 1 validation/service error, 2 usage error.
"""

from __future__ import annotations

import argparse
import asyncio
import json
import os
import sys
from pathlib import Path

import httpx

from ctrkit.service import DEFAULT_HOST, DEFAULT_PORT, create_app

_USAGE_JOINTS = 'expected "r=<mm,...>;t=<deg,...>" or "zero", e.g. "r=100,160;t=0,90"'


def parse_joints(
    text: str, n_tubes: int, full_lengths: list[float] | None = None
) -> tuple[list[float], list[float]]:
    """Joint mini-grammar: r=translations (mm); t=rotations (degrees).

    The keyword ``zero`` is the neutral demo pose: every tube fully deployed
    (carts at their home position) with all rotations at 0 degrees.
    """
    if text.strip().lower() == "zero":
        if full_lengths is None:
            full_lengths = [0.0] * n_tubes
        return list(full_lengths), [0.0] * n_tubes
    parts: dict[str, list[float]] = {}
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        key, _, values = chunk.partition("=")
        key = key.strip().lower()
        if key not in ("r", "t") or not values:
            raise ValueError(_USAGE_JOINTS)
        try:
            parts[key] = [float(v) for v in values.split(",")]
        except ValueError:
            raise ValueError(_USAGE_JOINTS) from None
    if set(parts) != {"r", "t"}:
        raise ValueError(_USAGE_JOINTS)
    if len(parts["r"]) != n_tubes or len(parts["t"]) != n_tubes:
        raise ValueError(
            f"robot has {n_tubes} tubes; got {len(parts['r'])} translations "
            f"and {len(parts['t'])} rotations"
        )
    return parts["r"], parts["t"]


class ServiceClient:
    """Thin HTTP wrapper: in-process ASGI by default, remote with --url."""

    def __init__(self, url: str | None):
        if url:
            self.client = httpx.AsyncClient(base_url=url, timeout=60.0)
        else:
            transport = httpx.ASGITransport(app=create_app())
            self.client = httpx.AsyncClient(
                transport=transport, base_url="http://ctrkit.internal", timeout=60.0
            )

    async def request(self, method: str, path: str, body: dict | None = None, params=None) -> dict:
        response = await self.client.request(method, path, json=body, params=params)
        if response.status_code >= 400:
            raise CommandError(_describe_error(response))
        if response.status_code == 204 or not response.content:
            return {}
        return response.json()

    async def close(self):
        await self.client.aclose()


class CommandError(Exception):
    """Service-reported failure; message goes to stderr, exit code 1."""


def _describe_error(response: httpx.Response) -> str:
    try:
        detail = response.json().get("detail")
    except ValueError:
        detail = response.text
    if isinstance(detail, dict):
        return detail.get("message", json.dumps(detail))
    if isinstance(detail, list):  # pydantic 422 reports
        issues = "; ".join(
            f"{'.'.join(str(p) for p in item.get('loc', []))}: {item.get('msg', '')}"
            for item in detail
        )
        return f"malformed request: {issues}"
    return str(detail)


def _read_robot_file(path: str) -> str:
    file = Path(path)
    if not file.exists():
        raise CommandError(f"robot file not found: {path}")
    return file.read_text()


def _load_points_csv(path: str) -> list[tuple[str, list[float]]]:
    from ctrkit.metrology import load_points_csv

    try:
        return [(label, [float(v) for v in vec]) for label, vec in load_points_csv(path)]
    except FileNotFoundError:
        raise CommandError(f"points file not found: {path}") from None
    except Exception as exc:
        raise CommandError(str(exc)) from None


async def _ephemeral_session(client: ServiceClient, file_text: str, backbone_ds: float = 1.0) -> str:
    state = await client.request(
        "POST", "/robots", {"file": file_text, "backbone_ds": backbone_ds}
    )
    return state["session_id"]


def _full_lengths(summary: dict) -> list[float]:
    return [t["straight_length"] + t["curved_length"] for t in summary["tubes"]]


async def _fk_payload(client: ServiceClient, args, ds: float = 1.0) -> dict:
    """Session-less FK query: create, query, delete."""
    text = _read_robot_file(args.robot)
    summary = await client.request("POST", "/validate", {"file": text})
    translations, rotations = parse_joints(
        args.joints, summary["n_tubes"], _full_lengths(summary)
    )
    session_id = await _ephemeral_session(client, text, backbone_ds=ds)
    try:
        return await client.request(
            "POST",
            f"/robots/{session_id}/fk",
            {"translations": translations, "rotations": rotations},
        )
    finally:
        await client.request("DELETE", f"/robots/{session_id}")


def _print_links(links: list[dict]) -> None:
    print(f"{'link':>4}  {'s_start':>9}  {'s_end':>9}  {'length':>9}  "
          f"{'curvature':>11}  {'phi_rel':>9}  {'phi_abs':>9}  members")
    for i, link in enumerate(links, start=1):
        members = ", ".join(f"{tid}:{role}" for tid, role in link["members"].items())
        print(
            f"{i:>4}  {link['s_start']:>9.3f}  {link['s_end']:>9.3f}  "
            f"{link['arc_length']:>9.3f}  {link['curvature']:>11.6f}  "
            f"{link['plane_angle']:>9.3f}  {link['absolute_plane_angle']:>9.3f}  {members}"
        )


async def cmd_validate(client: ServiceClient, args) -> None:
    payload = await client.request("POST", "/validate", {"file": _read_robot_file(args.robot)})
    if args.json:
        print(json.dumps(payload))
        return
    print(f"ok: {payload['name']} ({payload['n_tubes']} tubes)")
    for tube in payload["tubes"]:
        print(
            f"  tube {tube['tube_id']}: OD {tube['outer_diameter']} mm, "
            f"ID {tube['inner_diameter']} mm, curvature {tube['precurvature']:.6g} 1/mm, "
            f"straight {tube['straight_length']} mm, curved {tube['curved_length']} mm"
        )


async def cmd_links(client: ServiceClient, args) -> None:
    payload = await _fk_payload(client, args)
    if args.json:
        print(json.dumps(payload["links"]))
        return
    _print_links(payload["links"])


async def cmd_fk(client: ServiceClient, args) -> None:
    payload = await _fk_payload(client, args)
    if args.json:
        print(json.dumps(payload))
        return
    tip = payload["tip"]
    x, y, z = tip["position"]
    print(f"tip position: [{x:.6f}, {y:.6f}, {z:.6f}] mm")
    print("tip rotation:")
    for row in tip["rotation"]:
        print("  [" + ", ".join(f"{v: .9f}" for v in row) + "]")
    _print_links(payload["links"])


async def cmd_backbone(client: ServiceClient, args) -> None:
    payload = await _fk_payload(client, args, ds=args.ds)
    samples = payload["backbone"]["samples"]
    if args.json:
        print(json.dumps(payload["backbone"]))
        return
    print("s,x,y,z")
    for sample in samples:
        x, y, z = sample["p"]
        print(f"{sample['s']!r},{x!r},{y!r},{z!r}")


async def cmd_gcode_emit(client: ServiceClient, args) -> None:
    text = _read_robot_file(args.robot)
    summary = await client.request("POST", "/validate", {"file": text})
    translations, rotations = parse_joints(
        args.joints, summary["n_tubes"], _full_lengths(summary)
    )
    payload = await client.request(
        "POST",
        "/gcode/emit",
        {"file": text, "translations": translations, "rotations": rotations, "feed": args.feed},
    )
    if args.json:
        print(json.dumps(payload))
        return
    sys.stdout.write(payload["text"])


async def cmd_gcode_parse(client: ServiceClient, args) -> None:
    body = {"line": args.line}
    if args.robot:
        body["file"] = _read_robot_file(args.robot)
    payload = await client.request("POST", "/gcode/parse", body)
    if args.json:
        print(json.dumps(payload))
        return
    print(f"kind: {payload['kind']}")
    if "axis_words" in payload:
        for letter, value in payload["axis_words"].items():
            print(f"  {letter} = {value!r}")
        if payload.get("feed") is not None:
            print(f"  feed = {payload['feed']!r}")


def _noise_body(args) -> dict:
    if args.sigma > 0 or args.sigma_rot > 0:
        return {
            "kind": "gaussian",
            "sigma_translation": args.sigma,
            "sigma_rotation": args.sigma_rot,
        }
    if args.offset != 0 or args.offset_rot != 0:
        return {
            "kind": "offset",
            "offset_translation": args.offset,
            "offset_rotation": args.offset_rot,
        }
    return {"kind": "none"}


_DEFAULT_ACCURACY_ROBOT = """\
[tube 1]
youngs_modulus_gpa = 75
outer_diameter = 2.4
inner_diameter = 2.0
precurvature = 0
straight_length = 100
curved_length = 0
"""


async def cmd_experiment_accuracy(client: ServiceClient, args) -> None:
    text = _read_robot_file(args.robot) if args.robot else _DEFAULT_ACCURACY_ROBOT
    session_id = await _ephemeral_session(client, text)
    try:
        payload = await client.request(
            "POST",
            f"/robots/{session_id}/experiments/accuracy",
            {"n": args.n, "seed": args.seed, "noise": _noise_body(args)},
        )
    finally:
        await client.request("DELETE", f"/robots/{session_id}")
    if args.json:
        print(json.dumps(payload))
        return
    print(f"trials: {payload['n_trials']}")
    print(f"tracker RMSE: {payload['rmse_translation']:.6f} mm, "
          f"{payload['rmse_rotation']:.6f} deg")
    print(f"quantization RMSE: {payload['command_rmse_translation']:.6f} mm, "
          f"{payload['command_rmse_rotation']:.6f} deg")


async def _session_with_joints(client: ServiceClient, args) -> str:
    text = _read_robot_file(args.robot)
    summary = await client.request("POST", "/validate", {"file": text})
    translations, rotations = parse_joints(
        args.joints, summary["n_tubes"], _full_lengths(summary)
    )
    state = await client.request(
        "POST",
        "/robots",
        {"file": text, "joints": {"translations": translations, "rotations": rotations}},
    )
    return state["session_id"]


async def cmd_experiment_in_plane(client: ServiceClient, args) -> None:
    session_id = await _session_with_joints(client, args)
    try:
        payload = await client.request(
            "POST",
            f"/robots/{session_id}/experiments/in-plane",
            {"delta_rho": args.delta_rho},
        )
    finally:
        await client.request("DELETE", f"/robots/{session_id}")
    if args.json:
        print(json.dumps(payload))
        return
    r0, z0 = payload["in_plane_before"]
    r1, z1 = payload["in_plane_after"]
    print(f"predicted tip before: {payload['predicted_before']}")
    print(f"predicted tip after:  {payload['predicted_after']}")
    print(f"in-plane (r, z) before: ({r0:.6f}, {z0:.6f}) mm")
    print(f"in-plane (r, z) after:  ({r1:.6f}, {z1:.6f}) mm")


async def cmd_experiment_out_of_plane(client: ServiceClient, args) -> None:
    session_id = await _session_with_joints(client, args)
    try:
        payload = await client.request(
            "POST",
            f"/robots/{session_id}/experiments/out-of-plane",
            {"delta_theta": args.delta_theta, "tube_id": args.tube},
        )
    finally:
        await client.request("DELETE", f"/robots/{session_id}")
    if args.json:
        print(json.dumps(payload))
        return
    print(f"predicted tip before: {payload['predicted_before']}")
    print(f"predicted tip after:  {payload['predicted_after']}")
    print(f"distal plane angle: {payload['plane_angle_before']:.6f} deg -> "
          f"{payload['plane_angle_after']:.6f} deg "
          f"(change {payload['plane_angle_change']:.6f} deg)")


async def cmd_experiment_tracking(client: ServiceClient, args) -> None:
    tracker = _load_points_csv(args.tracker_points)
    base = _load_points_csv(args.base_points)
    if [label for label, _ in tracker] != [label for label, _ in base]:
        raise CommandError("tracker and base CSVs must list the same frame labels in order")
    try:
        measured = [float(v) for v in args.measured.split(",")]
        if len(measured) != 3:
            raise ValueError
    except ValueError:
        raise CommandError('--measured expects "x,y,z" in tracker-frame mm') from None

    session_id = await _session_with_joints(client, args)
    try:
        registration = await client.request(
            "POST",
            f"/robots/{session_id}/registration",
            {
                "tracker_points": [vec for _, vec in tracker],
                "base_points": [vec for _, vec in base],
            },
        )
        payload = await client.request(
            "POST",
            f"/robots/{session_id}/experiments/tracking",
            {"measured_tracker": measured},
        )
    finally:
        await client.request("DELETE", f"/robots/{session_id}")
    if args.json:
        print(json.dumps({"registration": registration, "record": payload}))
        return
    print(f"registration fit RMSE: {registration['fit_rmse']:.9f} mm "
          f"({registration['n_pairs']} pairs)")
    print(f"predicted tip: {payload['predicted_after']}")
    print(f"measured tip (base frame): {payload['measured_after']}")
    print(f"error: {payload['error_vector']} ({payload['error_norm']:.6f} mm)")


def cmd_serve(args) -> None:
    import uvicorn

    host = args.host or os.environ.get("CTRKIT_HOST", DEFAULT_HOST)
    port = args.port or int(os.environ.get("CTRKIT_PORT", DEFAULT_PORT))
    uvicorn.run(create_app(args.snapshot), host=host, port=port)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--url", help="service URL (default: run the service in-process)")

    parser = argparse.ArgumentParser(prog="ctr", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="check a robot description file")
    p.add_argument("robot")
    p.set_defaults(func=cmd_validate)

    for name, func, help_text in (
        ("links", cmd_links, "print the link partition for a configuration"),
        ("fk", cmd_fk, "print tip pose and per-link table"),
    ):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("robot")
        p.add_argument("--joints", required=True, help=_USAGE_JOINTS)
        p.set_defaults(func=func)

    p = sub.add_parser("backbone", parents=[common], help="sampled centerline as CSV")
    p.add_argument("robot")
    p.add_argument("--joints", required=True, help=_USAGE_JOINTS)
    p.add_argument("--ds", type=float, default=1.0, help="arc-length step in mm")
    p.set_defaults(func=cmd_backbone)

    gcode = sub.add_parser("gcode", help="emit or parse controller G-code")
    gsub = gcode.add_subparsers(dest="gcode_command", required=True)
    p = gsub.add_parser("emit", parents=[common], help="emit a move for a joint target")
    p.add_argument("robot")
    p.add_argument("--joints", required=True, help=_USAGE_JOINTS)
    p.add_argument("--feed", type=float, default=1200.0)
    p.set_defaults(func=cmd_gcode_emit)
    p = gsub.add_parser("parse", parents=[common], help="parse one G-code line")
    p.add_argument("line")
    p.add_argument("--robot", help="robot file providing the axis map")
    p.set_defaults(func=cmd_gcode_parse)

    experiment = sub.add_parser("experiment", help="run a verification experiment")
    esub = experiment.add_subparsers(dest="experiment_command", required=True)
    p = esub.add_parser("accuracy", parents=[common], help="motion accuracy experiment")
    p.add_argument("--robot", help="robot file (default: single-tube test rig)")
    p.add_argument("--n", type=int, default=90)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--sigma", type=float, default=0.0, help="gaussian sigma, mm")
    p.add_argument("--sigma-rot", type=float, default=0.0, help="gaussian sigma, degrees")
    p.add_argument("--offset", type=float, default=0.0, help="fixed offset, mm")
    p.add_argument("--offset-rot", type=float, default=0.0, help="fixed offset, degrees")
    p.set_defaults(func=cmd_experiment_accuracy)
    p = esub.add_parser("in-plane", parents=[common], help="in-plane translation experiment")
    p.add_argument("robot")
    p.add_argument("--joints", required=True, help=_USAGE_JOINTS)
    p.add_argument("--delta-rho", type=float, required=True, help="innermost-tube advance, mm")
    p.set_defaults(func=cmd_experiment_in_plane)
    p = esub.add_parser("out-of-plane", parents=[common], help="out-of-plane rotation experiment")
    p.add_argument("robot")
    p.add_argument("--joints", required=True, help=_USAGE_JOINTS)
    p.add_argument("--delta-theta", type=float, required=True, help="tube rotation, degrees")
    p.add_argument("--tube", type=int, default=1, help="tube to rotate (1 = outermost)")
    p.set_defaults(func=cmd_experiment_out_of_plane)
    p = esub.add_parser("tracking", parents=[common], help="tip-tracking comparison")
    p.add_argument("robot")
    p.add_argument("--joints", required=True, help=_USAGE_JOINTS)
    p.add_argument("--tracker-points", required=True, help="CSV frame_label,x,y,z")
    p.add_argument("--base-points", required=True, help="CSV frame_label,x,y,z")
    p.add_argument("--measured", required=True, help='measured tip "x,y,z" in tracker frame')
    p.set_defaults(func=cmd_experiment_tracking)

    p = sub.add_parser("serve", help="run the HTTP/WebSocket service")
    p.add_argument("--host", default=None)
    p.add_argument("--port", type=int, default=None)
    p.add_argument("--snapshot", default=None, help="session snapshot file")
    p.set_defaults(func=cmd_serve, serve=True)

    return parser


async def _dispatch(args) -> int:
    client = ServiceClient(getattr(args, "url", None))
    try:
        await args.func(client, args)
        return 0
    except (CommandError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except httpx.HTTPError as exc:
        print(f"error: cannot reach service: {exc}", file=sys.stderr)
        return 1
    finally:
        await client.close()


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "serve", False):
        cmd_serve(args)
        return 0
    return asyncio.run(_dispatch(args))


if __name__ == "__main__":
    sys.exit(main())

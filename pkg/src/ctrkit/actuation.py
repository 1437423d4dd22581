"""Virtual actuation unit: quantized axis state driven by parsed G-code.

Motion is instantaneous; each accepted move snaps the commanded target to
whole motor steps. An optional noise model perturbs what a tracker "measures"
without touching the motion itself, mirroring how a real optical tracker sees
the robot.
"""

from __future__ import annotations

import math
import socketserver
import threading
from dataclasses import dataclass, field

import numpy as np

from ctrkit.errors import (
    AxisConfigError,
    CtrError,
    InvalidInputError,
    JointLimitError,
    NotHomedError,
)
from ctrkit.gcode import (
    ABSOLUTE_MODE,
    HOME,
    LINEAR_MOVE,
    POSITION_QUERY,
    RELATIVE_MODE,
    ROTATION,
    TRANSLATION,
    AxisMap,
    GcodeCommand,
    JointLimits,
    format_value,
    parse_line,
)
from ctrkit.kinematics.tubes import JointConfig

NOISE_NONE = "none"
NOISE_GAUSSIAN = "gaussian"
NOISE_OFFSET = "offset"


@dataclass(frozen=True)
class NoiseModel:
    """Measurement perturbation: none, zero-mean gaussian, or fixed offset."""

    kind: str = NOISE_NONE
    sigma_translation: float = 0.0
    sigma_rotation: float = 0.0
    offset_translation: float = 0.0
    offset_rotation: float = 0.0

    def __post_init__(self):
        if self.kind not in (NOISE_NONE, NOISE_GAUSSIAN, NOISE_OFFSET):
            raise InvalidInputError(f"unknown noise kind {self.kind!r}")
        if self.sigma_translation < 0 or self.sigma_rotation < 0:
            raise InvalidInputError("noise sigma must be >= 0")

    @classmethod
    def none(cls) -> "NoiseModel":
        return cls()

    @classmethod
    def gaussian(cls, sigma_translation: float, sigma_rotation: float) -> "NoiseModel":
        return cls(
            kind=NOISE_GAUSSIAN,
            sigma_translation=sigma_translation,
            sigma_rotation=sigma_rotation,
        )

    @classmethod
    def offset(cls, offset_translation: float, offset_rotation: float) -> "NoiseModel":
        return cls(
            kind=NOISE_OFFSET,
            offset_translation=offset_translation,
            offset_rotation=offset_rotation,
        )

    def sample(self, kind: str, rng: np.random.Generator) -> float:
        if self.kind == NOISE_GAUSSIAN:
            sigma = self.sigma_translation if kind == TRANSLATION else self.sigma_rotation
            return float(rng.normal(0.0, sigma)) if sigma > 0 else 0.0
        if self.kind == NOISE_OFFSET:
            return self.offset_translation if kind == TRANSLATION else self.offset_rotation
        return 0.0


@dataclass
class AxisState:
    """One motor axis: commanded target, whole-step position, tracker offset."""

    letter: str
    kind: str  # translation | rotation
    steps_ratio: float  # steps per mm or per degree
    low: float
    high: float
    commanded: float = 0.0
    steps: int = 0
    measured_offset: float = 0.0

    @property
    def actual(self) -> float:
        """Physical position: always a whole-step multiple."""
        return self.steps / self.steps_ratio

    @property
    def measured(self) -> float:
        """What the tracker reads for this axis."""
        return self.actual + self.measured_offset


class ControllerState:
    """Virtual motion controller for one robot; single-writer mutation."""

    def __init__(
        self,
        axis_map: AxisMap,
        limits: JointLimits | None = None,
        noise: NoiseModel | None = None,
        rng: np.random.Generator | None = None,
    ):
        self.axis_map = axis_map
        self.limits = limits if limits is not None else JointLimits()
        self.noise = noise if noise is not None else NoiseModel.none()
        self.rng = rng if rng is not None else np.random.default_rng(0)
        self.mode = ABSOLUTE_MODE
        self.homed = False
        self.axes: dict[str, AxisState] = {}
        for letter in axis_map.letters:
            kind, _, ratio = axis_map.axis_kind(letter)
            low, high = self.limits.bounds_for(kind)
            self.axes[letter] = AxisState(
                letter=letter, kind=kind, steps_ratio=ratio, low=low, high=high
            )

    def joints(self) -> JointConfig:
        """Commanded joint targets as a JointConfig."""
        return self.axis_map.joints_from_values(
            {letter: axis.commanded for letter, axis in self.axes.items()}
        )

    def actual_joints(self) -> JointConfig:
        """Step-quantized joint positions as a JointConfig."""
        return self.axis_map.joints_from_values(
            {letter: axis.actual for letter, axis in self.axes.items()}
        )

    def position_reply(self) -> str:
        """Actual positions, formatted exactly like emitted axis words."""
        return " ".join(
            f"{letter}{format_value(self.axes[letter].actual)}"
            for letter in self.axis_map.letters
        )

    def apply(self, command: GcodeCommand) -> str:
        """Apply one parsed command; returns the reply text.

        Limit or homing violations raise before any state changes, so a
        rejected command leaves every axis untouched.
        """
        if command.kind == ABSOLUTE_MODE:
            self.mode = ABSOLUTE_MODE
            return "ok"
        if command.kind == RELATIVE_MODE:
            self.mode = RELATIVE_MODE
            return "ok"
        if command.kind == HOME:
            for axis in self.axes.values():
                axis.commanded = 0.0
                axis.steps = 0
                axis.measured_offset = 0.0
            self.homed = True
            return "ok"
        if command.kind == POSITION_QUERY:
            return self.position_reply()
        if command.kind != LINEAR_MOVE:
            raise InvalidInputError(f"unknown command kind {command.kind!r}")

        if not self.homed:
            raise NotHomedError("move rejected: axes are not homed (send G28 first)")
        targets = []
        for letter, value in command.axis_words.items():
            axis = self.axes.get(letter.upper())
            if axis is None:
                raise AxisConfigError(f"axis letter {letter} is not configured")
            target = value if self.mode == ABSOLUTE_MODE else axis.commanded + value
            if not axis.low <= target <= axis.high:
                raise JointLimitError(axis=axis.letter, value=target, low=axis.low, high=axis.high)
            targets.append((axis, target))
        # all words validated; commit
        for axis, target in targets:
            axis.commanded = target
            axis.steps = round(target * axis.steps_ratio)
            axis.measured_offset = self.noise.sample(axis.kind, self.rng)
        return "ok"

    def handle_line(self, line: str) -> str:
        """Parse and apply one text line; errors become 'error:' replies."""
        try:
            return self.apply(parse_line(line, self.axis_map))
        except CtrError as exc:
            return f"error: {exc}"


@dataclass(frozen=True)
class AccuracyReport:
    """Motion-accuracy experiment result with per-trial residuals.

    ``rmse_translation``/``rmse_rotation`` measure the tracker channel
    (measured minus actual position); the command channel (actual minus
    commanded, pure step quantization) is reported separately.
    """

    n_trials: int
    rmse_translation: float
    rmse_rotation: float
    command_rmse_translation: float
    command_rmse_rotation: float
    translation_residuals: tuple[float, ...] = field(repr=False)
    rotation_residuals: tuple[float, ...] = field(repr=False)

    def recomputed_rmse(self) -> tuple[float, float]:
        """RMSEs recomputed from the stored residuals."""
        return (
            math.sqrt(sum(r * r for r in self.translation_residuals) / self.n_trials),
            math.sqrt(sum(r * r for r in self.rotation_residuals) / self.n_trials),
        )


def run_accuracy_experiment(
    n: int,
    seed: int,
    noise: NoiseModel,
    axis_map: AxisMap | None = None,
) -> AccuracyReport:
    """Command n random targets and report tracker-residual RMSEs.

    The controller homes once; every trial then commands one translation in
    [0, 50] mm and one rotation in [-180, 180] degrees on the first tube's
    axes and reads the simulated tracker. Identical (n, seed, noise) inputs
    reproduce the report bit for bit.
    """
    if n < 1:
        raise InvalidInputError(f"need at least one trial, got {n}")
    if axis_map is None:
        axis_map = AxisMap.default(1)
    rng = np.random.default_rng(seed)
    controller = ControllerState(axis_map, rng=rng, noise=noise)
    controller.apply(GcodeCommand(kind=HOME))

    trans_letter = axis_map.assignments[0].translation_letter
    rot_letter = axis_map.assignments[0].rotation_letter
    t_low, t_high = controller.limits.translation
    r_low, r_high = controller.limits.rotation

    trans_residuals = []
    rot_residuals = []
    command_trans = []
    command_rot = []
    for _ in range(n):
        rho = float(rng.uniform(t_low, t_high))
        theta = float(rng.uniform(r_low, r_high))
        controller.apply(
            GcodeCommand(kind=LINEAR_MOVE, axis_words={trans_letter: rho, rot_letter: theta})
        )
        t_axis = controller.axes[trans_letter]
        r_axis = controller.axes[rot_letter]
        # measured - actual is the injected offset by construction; using it
        # directly keeps a constant offset's RMSE exact
        trans_residuals.append(t_axis.measured_offset)
        rot_residuals.append(r_axis.measured_offset)
        command_trans.append(t_axis.actual - t_axis.commanded)
        command_rot.append(r_axis.actual - r_axis.commanded)

    def rmse(values: list[float]) -> float:
        # scale by the peak so a constant residual r gives exactly |r|
        peak = max(abs(v) for v in values)
        if peak == 0.0:
            return 0.0
        return peak * math.sqrt(sum((v / peak) ** 2 for v in values) / len(values))

    return AccuracyReport(
        n_trials=n,
        rmse_translation=rmse(trans_residuals),
        rmse_rotation=rmse(rot_residuals),
        command_rmse_translation=rmse(command_trans),
        command_rmse_rotation=rmse(command_rot),
        translation_residuals=tuple(trans_residuals),
        rotation_residuals=tuple(rot_residuals),
    )


class _LineHandler(socketserver.StreamRequestHandler):
    def handle(self):
        controller = self.server.controller  # type: ignore[attr-defined]
        lock = self.server.controller_lock  # type: ignore[attr-defined]
        for raw in self.rfile:
            line = raw.decode("ascii", errors="replace")
            with lock:
                reply = controller.handle_line(line)
            self.wfile.write(reply.encode("ascii") + b"\n")


class FirmwareServer(socketserver.ThreadingTCPServer):
    """Newline-delimited G-code over TCP, same replies as handle_line."""

    allow_reuse_address = True
    daemon_threads = True

    def __init__(self, controller: ControllerState, host: str = "127.0.0.1", port: int = 0):
        super().__init__((host, port), _LineHandler)
        self.controller = controller
        self.controller_lock = threading.Lock()

    @property
    def address(self) -> tuple[str, int]:
        return self.server_address[0], self.server_address[1]


def serve_firmware(
    controller: ControllerState, host: str = "127.0.0.1", port: int = 0
) -> FirmwareServer:
    """Start the TCP firmware endpoint on a background thread."""
    server = FirmwareServer(controller, host, port)
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    return server

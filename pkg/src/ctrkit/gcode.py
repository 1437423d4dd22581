"""G-code emitter and parser for the motion control board.

The supported dialect is frozen to five commands: G90 (absolute mode), G91
(relative mode), G1 (linear move with axis words), G28 (home) and M114
(position query). Values print with exactly three decimals so emitted bytes
are deterministic and round-trip through the parser at 0.001 resolution.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ctrkit.errors import AxisConfigError, GcodeParseError, UnsupportedCommandError
from ctrkit.kinematics.tubes import JointConfig

ABSOLUTE_MODE = "absolute-mode"
RELATIVE_MODE = "relative-mode"
LINEAR_MOVE = "linear-move"
HOME = "home"
POSITION_QUERY = "position-query"

TRANSLATION = "translation"
ROTATION = "rotation"

DEFAULT_STEPS_PER_MM = 800.0
DEFAULT_STEPS_PER_DEGREE = 8.888
DEFAULT_FEED = 1200.0

# default board wiring: translation axes then rotation axes by tube order
_DEFAULT_TRANSLATION_LETTERS = "XYZ"
_DEFAULT_ROTATION_LETTERS = "ABC"

# F is the feed word; G and M start commands
_RESERVED_LETTERS = frozenset("FGM")


@dataclass(frozen=True)
class AxisAssignment:
    """Board axis letters and step ratios for one tube."""

    tube_id: int
    translation_letter: str
    rotation_letter: str
    steps_per_mm: float = DEFAULT_STEPS_PER_MM
    steps_per_degree: float = DEFAULT_STEPS_PER_DEGREE

    def __post_init__(self):
        object.__setattr__(self, "translation_letter", self.translation_letter.upper())
        object.__setattr__(self, "rotation_letter", self.rotation_letter.upper())
        for letter in (self.translation_letter, self.rotation_letter):
            if len(letter) != 1 or not letter.isalpha():
                raise AxisConfigError(f"axis letter must be a single letter, got {letter!r}")
            if letter in _RESERVED_LETTERS:
                raise AxisConfigError(f"axis letter {letter} is reserved")
        if self.steps_per_mm <= 0 or self.steps_per_degree <= 0:
            raise AxisConfigError(
                f"steps ratios must be > 0, got {self.steps_per_mm}/{self.steps_per_degree}"
            )


@dataclass(frozen=True)
class AxisMap:
    """Immutable tube-to-axis wiring; emit order is tube-major."""

    assignments: tuple[AxisAssignment, ...]

    def __post_init__(self):
        object.__setattr__(self, "assignments", tuple(self.assignments))
        if not self.assignments:
            raise AxisConfigError("axis map needs at least one tube")
        ids = [a.tube_id for a in self.assignments]
        if ids != list(range(1, len(ids) + 1)):
            raise AxisConfigError(f"tube ids must be consecutive from 1, got {ids}")
        letters = [l for a in self.assignments for l in (a.translation_letter, a.rotation_letter)]
        if len(set(letters)) != len(letters):
            raise AxisConfigError(f"axis letters must be distinct, got {letters}")

    @classmethod
    def default(cls, n_tubes: int) -> "AxisMap":
        """X/Y/Z translation and A/B/C rotation letters, default step ratios."""
        if not 1 <= n_tubes <= len(_DEFAULT_TRANSLATION_LETTERS):
            raise AxisConfigError(
                f"default letters cover 1..{len(_DEFAULT_TRANSLATION_LETTERS)} tubes, "
                f"got {n_tubes}; configure axes explicitly"
            )
        return cls(
            tuple(
                AxisAssignment(
                    tube_id=i + 1,
                    translation_letter=_DEFAULT_TRANSLATION_LETTERS[i],
                    rotation_letter=_DEFAULT_ROTATION_LETTERS[i],
                )
                for i in range(n_tubes)
            )
        )

    @property
    def n_tubes(self) -> int:
        return len(self.assignments)

    @property
    def letters(self) -> tuple[str, ...]:
        """All axis letters in emit order."""
        return tuple(
            l for a in self.assignments for l in (a.translation_letter, a.rotation_letter)
        )

    def axis_kind(self, letter: str) -> tuple[str, int, float]:
        """(kind, tube_id, steps ratio) for an axis letter."""
        letter = letter.upper()
        for a in self.assignments:
            if letter == a.translation_letter:
                return TRANSLATION, a.tube_id, a.steps_per_mm
            if letter == a.rotation_letter:
                return ROTATION, a.tube_id, a.steps_per_degree
        raise AxisConfigError(f"axis letter {letter} is not configured")

    def words_for(self, target: JointConfig) -> list[tuple[str, float]]:
        """(letter, value) pairs in emit order for a joint target."""
        if len(target) != self.n_tubes:
            raise AxisConfigError(
                f"joint config has {len(target)} tubes, axis map has {self.n_tubes}"
            )
        words = []
        for a, rho, theta in zip(self.assignments, target.translations, target.rotations):
            words.append((a.translation_letter, rho))
            words.append((a.rotation_letter, theta))
        return words

    def joints_from_values(self, values: dict[str, float]) -> JointConfig:
        """JointConfig from a complete letter -> value map."""
        missing = set(self.letters) - set(values)
        if missing:
            raise AxisConfigError(f"missing axis values for {sorted(missing)}")
        return JointConfig(
            translations=tuple(values[a.translation_letter] for a in self.assignments),
            rotations=tuple(values[a.rotation_letter] for a in self.assignments),
        )


@dataclass(frozen=True)
class JointLimits:
    """Per-axis travel limits shared by every tube, in mm and degrees."""

    translation: tuple[float, float] = (0.0, 50.0)
    rotation: tuple[float, float] = (-180.0, 180.0)

    def __post_init__(self):
        object.__setattr__(self, "translation", tuple(float(v) for v in self.translation))
        object.__setattr__(self, "rotation", tuple(float(v) for v in self.rotation))
        for low, high in (self.translation, self.rotation):
            if not low < high:
                raise AxisConfigError(f"limit range must satisfy low < high, got [{low}, {high}]")

    def bounds_for(self, kind: str) -> tuple[float, float]:
        return self.translation if kind == TRANSLATION else self.rotation


@dataclass(frozen=True)
class GcodeCommand:
    """One parsed command: kind, axis words in source order, optional feed."""

    kind: str
    axis_words: dict[str, float] = field(default_factory=dict)
    feed: float | None = None


def format_value(value: float) -> str:
    """Fixed three-decimal print; negative zero normalizes to 0.000."""
    text = f"{value:.3f}"
    return "0.000" if text == "-0.000" else text


def emit_move(
    target: JointConfig, axis_map: AxisMap, feed: float | None = DEFAULT_FEED
) -> str:
    """Absolute move as two lines: G90 then one G1 with all axis words.

    Output is deterministic byte-for-byte: axis words follow axis-map order,
    values print with exactly three decimals, lines end with newline.
    """
    words = " ".join(f"{letter}{format_value(v)}" for letter, v in axis_map.words_for(target))
    line = f"G1 {words}"
    if feed is not None:
        if feed <= 0:
            raise AxisConfigError(f"feed must be > 0, got {feed}")
        line += f" F{feed:g}"
    return f"G90\n{line}\n"


def emit_home() -> str:
    return "G28\n"


def emit_position_query() -> str:
    return "M114\n"


def _strip_comment(line: str) -> str:
    cut = line.find(";")
    return line if cut < 0 else line[:cut]


def _scan_number(line: str, start: int) -> tuple[float, int]:
    """Parse a decimal number at ``start``; returns (value, end index)."""
    i = start
    n = len(line)
    if i < n and line[i] in "+-":
        i += 1
    digits = 0
    while i < n and line[i].isdigit():
        i += 1
        digits += 1
    if i < n and line[i] == ".":
        i += 1
        while i < n and line[i].isdigit():
            i += 1
            digits += 1
    if digits == 0:
        raise GcodeParseError("expected a number", column=start + 1)
    return float(line[start:i]), i


def _scan_words(line: str) -> list[tuple[str, float, int]]:
    """(letter, value, column) triples; column is 1-based at the letter."""
    words = []
    i = 0
    n = len(line)
    while i < n:
        ch = line[i]
        if ch in " \t":
            i += 1
            continue
        if not ch.isalpha():
            raise GcodeParseError(f"unexpected character {ch!r}", column=i + 1)
        value, end = _scan_number(line, i + 1)
        words.append((ch.upper(), value, i + 1))
        i = end
    return words


def parse_line(text: str, axis_map: AxisMap | None = None) -> GcodeCommand:
    """Parse one G-code line into a command.

    Letters are case-insensitive; anything after ';' is a comment. When an
    ``axis_map`` is supplied, move lines may only use its letters (plus F for
    feed); unknown letters raise an unsupported-command error echoing the
    line. Malformed input raises a parse error with a 1-based column index.
    """
    line = _strip_comment(text).rstrip("\r\n")
    words = _scan_words(line)
    if not words:
        raise GcodeParseError("empty line", column=1)

    letter, code, column = words[0]
    if letter not in "GM":
        raise GcodeParseError(f"line must start with a G or M command, got {letter}", column=column)
    if code != int(code):
        raise GcodeParseError("command code must be an integer", column=column + 1)
    code = int(code)

    simple = {("G", 90): ABSOLUTE_MODE, ("G", 91): RELATIVE_MODE, ("G", 28): HOME, ("M", 114): POSITION_QUERY}
    if (letter, code) in simple:
        if len(words) > 1:
            raise GcodeParseError(
                f"unexpected word after {letter}{code}", column=words[1][2]
            )
        return GcodeCommand(kind=simple[(letter, code)])

    if (letter, code) != ("G", 1):
        raise UnsupportedCommandError(f"unsupported command {letter}{code}", line=text)

    axis_words: dict[str, float] = {}
    feed = None
    for wl, value, col in words[1:]:
        if wl in "GM":
            raise GcodeParseError("unexpected command word inside a move", column=col)
        if wl == "F":
            if feed is not None:
                raise GcodeParseError("duplicate feed word", column=col)
            if value <= 0:
                raise GcodeParseError(f"feed must be > 0, got {value:g}", column=col)
            feed = value
            continue
        if axis_map is not None and wl not in axis_map.letters:
            raise UnsupportedCommandError(f"axis {wl} is not configured", line=text)
        if wl in axis_words:
            raise GcodeParseError(f"duplicate axis word {wl}", column=col)
        axis_words[wl] = value
    if not axis_words:
        raise GcodeParseError("linear move needs at least one axis word", column=1)
    return GcodeCommand(kind=LINEAR_MOVE, axis_words=axis_words, feed=feed)

"""Tokenizer for SVG path `d` attributes.

Follows the SVG 1.1 path grammar closely enough for counting and
rasterization: numbers may be glued ("1.5.5" reads as 1.5 then .5),
arc flags are single characters that may be run together, and implicit
command repetitions are emitted as separate commands (a moveto's extra
coordinate pairs become linetos, as SVG 1.1 defines).
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..errors import MalformedPathDataError

_NUMBER_RE = re.compile(r"[+-]?(?:\d*\.\d+|\d+\.?)(?:[eE][+-]?\d+)?")
_SEPARATORS = " \t\r\n\f,"

# Parameters consumed per command letter (case-insensitive).
PARAM_COUNTS = {
    "M": 2, "L": 2, "H": 1, "V": 1,
    "C": 6, "S": 4, "Q": 4, "T": 2,
    "A": 7, "Z": 0,
}

# Within an arc's 7 params, these positions are one-character flags.
_ARC_FLAG_POSITIONS = (3, 4)


@dataclass(frozen=True)
class PathCommand:
    """One drawing command: effective letter plus its numeric parameters."""

    letter: str
    params: tuple[float, ...]


def parse_path_data(d: str) -> list[PathCommand]:
    """Parse a `d` attribute into a flat command list.

    Implicit repetitions are expanded: ``M0 0 L1 1 2 2`` yields three
    commands (M, L, L) and ``M0 0 10 10`` yields two (M, L). The returned
    length is therefore exactly the structural command count.

    Raises MalformedPathDataError on anything the grammar rejects.
    """
    pos = 0
    n = len(d)
    commands: list[PathCommand] = []
    current: str | None = None

    def skip_separators() -> None:
        nonlocal pos
        while pos < n and d[pos] in _SEPARATORS:
            pos += 1

    def read_number() -> float:
        nonlocal pos
        m = _NUMBER_RE.match(d, pos)
        if m is None or m.end() == pos:
            raise MalformedPathDataError(
                f"expected number at offset {pos} in path data: {d[pos:pos + 12]!r}"
            )
        pos = m.end()
        return float(m.group())

    def read_flag() -> float:
        nonlocal pos
        if pos < n and d[pos] in "01":
            pos += 1
            return float(d[pos - 1])
        raise MalformedPathDataError(f"expected arc flag 0/1 at offset {pos}")

    def read_params(letter: str) -> tuple[float, ...]:
        count = PARAM_COUNTS[letter.upper()]
        values = []
        for i in range(count):
            skip_separators()
            if letter.upper() == "A" and i in _ARC_FLAG_POSITIONS:
                values.append(read_flag())
            else:
                values.append(read_number())
        return tuple(values)

    skip_separators()
    if pos >= n:
        return []
    if d[pos] not in "Mm":
        raise MalformedPathDataError(
            f"path data must start with a moveto, got {d[pos]!r}"
        )

    while pos < n:
        skip_separators()
        if pos >= n:
            break
        ch = d[pos]
        if ch.upper() in PARAM_COUNTS:
            pos += 1
            current = ch
            commands.append(PathCommand(current, read_params(current)))
        elif _NUMBER_RE.match(d, pos):
            # Implicit repeat of the previous command.
            if current is None or current.upper() == "Z":
                raise MalformedPathDataError(
                    f"number at offset {pos} without a preceding repeatable command"
                )
            if current == "M":
                current = "L"
            elif current == "m":
                current = "l"
            commands.append(PathCommand(current, read_params(current)))
        else:
            raise MalformedPathDataError(
                f"unexpected character {ch!r} at offset {pos} in path data"
            )
    return commands


def count_path_commands(d: str) -> int:
    """Number of commands in a `d` attribute, implicit repeats included."""
    return len(parse_path_data(d))

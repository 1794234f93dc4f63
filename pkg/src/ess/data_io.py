"""Reading pmfs, counts, joint tables and grid densities; formatting results."""

from __future__ import annotations

import csv
import enum
import io
import math
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Sequence

import numpy as np

from .conditional import JointPmf, make_joint
from .continuous import Grid
from .core import TABLE1_ALPHAS, AlphaParam, EssProfile, Pmf, ess, make_pmf
from .errors import ParseError

__all__ = [
    "InputKind",
    "InputRecord",
    "TABLE1_PMFS",
    "format_number",
    "format_pmf",
    "load_record",
    "parse_alpha_list",
    "parse_counts_text",
    "parse_grid_csv",
    "parse_joint_csv",
    "parse_pmf_text",
    "parse_table1",
    "profile_to_json",
    "render_profile",
    "render_table1",
    "table1_values",
]

TABLE1_PMFS = (
    (0.5, 0.5),
    (0.6, 0.4),
    (0.7, 0.3),
    (0.8, 0.2),
    (0.9, 0.1),
    (1.0, 0.0),
)

_TOKEN_SEP = re.compile(r"[,\s;]+")


def format_number(x: float) -> str:
    return f"{x:.6f}"


def _content_lines(text: str) -> list[str]:
    return [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]


def _to_float(token: str) -> float:
    try:
        value = float(token)
    except ValueError:
        raise ParseError(f"not a number: {token!r}") from None
    if math.isnan(value):
        raise ParseError(f"not a number: {token!r}")
    return value


def _tokens(text: str) -> list[float]:
    body = " ".join(_content_lines(text))
    tokens = [t for t in _TOKEN_SEP.split(body) if t]
    if not tokens:
        raise ParseError("no values found")
    return [_to_float(t) for t in tokens]


def parse_pmf_text(text: str, normalize: bool = False) -> Pmf:
    """Parse a pmf from comma/whitespace separated values or one value per line.

    >>> parse_pmf_text("3 1", normalize=True)
    Pmf([0.75, 0.25])
    """
    return make_pmf(_tokens(text), normalize=normalize)


def parse_counts_text(text: str) -> Pmf:
    """Plug-in pmf from observed counts (nonnegative integers), no bias correction."""
    values = _tokens(text)
    if any(v != int(v) for v in values if math.isfinite(v)):
        raise ParseError("counts must be integers")
    return make_pmf(values, normalize=True)


def _csv_rows(text: str) -> list[list[float]]:
    lines = _content_lines(text)
    if not lines:
        raise ParseError("empty table")
    rows = []
    for row in csv.reader(io.StringIO("\n".join(lines))):
        cells = [c.strip() for c in row]
        if not cells or any(c == "" for c in cells):
            raise ParseError(f"empty cell in row {len(rows) + 1}")
        rows.append([_to_float(c) for c in cells])
    return rows


def parse_joint_csv(text: str, normalize: bool = False) -> JointPmf:
    """Parse a rectangular CSV of joint probabilities, rows indexed by X."""
    rows = _csv_rows(text)
    width = len(rows[0])
    for k, row in enumerate(rows, 1):
        if len(row) != width:
            raise ParseError(f"ragged table: row {k} has {len(row)} cells, expected {width}")
    return make_joint(rows, normalize=normalize)


def parse_grid_csv(text: str) -> Grid:
    """Parse a two-column CSV ``x, f(x)`` into a tabulated density."""
    rows = _csv_rows(text)
    if any(len(row) != 2 for row in rows):
        raise ParseError("grid density needs exactly two columns: x, f(x)")
    data = np.array(rows)
    return Grid(data[:, 0], data[:, 1])


class InputKind(enum.Enum):
    PMF = "pmf"
    COUNTS = "counts"
    JOINT = "joint"
    GRID_DENSITY = "grid"


_PARSERS = {
    InputKind.PMF: parse_pmf_text,
    InputKind.COUNTS: lambda text, normalize=False: parse_counts_text(text),
    InputKind.JOINT: parse_joint_csv,
    InputKind.GRID_DENSITY: lambda text, normalize=False: parse_grid_csv(text),
}


@dataclass(frozen=True)
class InputRecord:
    """Raw input text, where it came from, and what it should parse into."""

    kind: InputKind
    text: str
    source: str

    def parse(self, normalize: bool = False):
        return _PARSERS[self.kind](self.text, normalize=normalize)


def load_record(arg: str, kind: InputKind) -> InputRecord:
    """``@path`` reads a UTF-8 file; anything else is taken as an inline literal."""
    if arg.startswith("@"):
        path = Path(arg[1:])
        return InputRecord(kind, path.read_text(encoding="utf-8"), str(path))
    return InputRecord(kind, arg, "<inline>")


def parse_alpha_list(text: str) -> tuple[AlphaParam, ...]:
    if text.strip().lower() == "table1":
        return TABLE1_ALPHAS
    items = [t for t in re.split(r"[,\s]+", text.strip()) if t]
    if not items:
        raise ParseError("no alpha values given")
    return tuple(AlphaParam.coerce(t) for t in items)


def format_pmf(p: Pmf) -> str:
    return ",".join(format_number(x) for x in p)


def render_profile(p: Pmf, profile: EssProfile) -> str:
    lines = [f"pmf: {format_pmf(p)}", f"{'alpha':>10}  {'ess':>12}"]
    for a, v in profile.items():
        lines.append(f"{a.label:>10}  {format_number(v):>12}")
    return "\n".join(lines)


def _alpha_json(a: AlphaParam) -> Any:
    return "inf" if a.is_inf else a.value


def profile_to_json(p: Pmf, profile: EssProfile) -> dict:
    return {
        "pmf": p.tolist(),
        "alphas": [_alpha_json(a) for a in profile.alphas],
        "ess": list(profile.values),
    }


def table1_values(
    alphas: Sequence[AlphaParam] = TABLE1_ALPHAS, pmfs=TABLE1_PMFS
) -> np.ndarray:
    """Effective support sizes, one row per order and one column per pmf."""
    dists = [make_pmf(p) for p in pmfs]
    return np.array([[ess(p, a) for p in dists] for a in alphas])


def _alpha_row_label(a: AlphaParam) -> str:
    return "inf" if a.is_inf else f"{a.value:.1f}" if a.value >= 0.5 else f"{a.value:g}"


def render_table1() -> str:
    """Fixed-width table of S(p, alpha) for the two-outcome pmfs, six decimals."""
    values = table1_values()
    heads = [f"[{p[0]:.1f}, {p[1]:.1f}]" for p in TABLE1_PMFS]
    lines = ["alpha    " + "  ".join(f"{h:>10}" for h in heads)]
    for a, row in zip(TABLE1_ALPHAS, values):
        cells = "  ".join(f"{format_number(v):>10}" for v in row)
        lines.append(f"{_alpha_row_label(a):<9}{cells}")
    return "\n".join(lines)


def parse_table1(text: str) -> tuple[list[AlphaParam], list[tuple[float, ...]], np.ndarray]:
    """Read back the output of :func:`render_table1`."""
    lines = _content_lines(text)
    if len(lines) < 2:
        raise ParseError("table needs a header and at least one row")
    pmfs = [
        tuple(_to_float(x) for x in m.split(","))
        for m in re.findall(r"\[([^\]]*)\]", lines[0])
    ]
    alphas, rows = [], []
    for ln in lines[1:]:
        head, *cells = ln.split()
        if len(cells) != len(pmfs):
            raise ParseError(f"row {head!r} has {len(cells)} cells, expected {len(pmfs)}")
        alphas.append(AlphaParam.coerce(head))
        rows.append([_to_float(c) for c in cells])
    return alphas, pmfs, np.array(rows)

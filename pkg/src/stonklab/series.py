"""Date-indexed daily series, alignment, and the shifted/stationary transforms.

All types are frozen dataclasses; every operation returns a new object, so
values can be shared freely across threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from datetime import date
from typing import Iterable, Sequence

from .errors import AlignmentError, SeriesTooShortError

INNER_JOIN = "inner-join"
FORWARD_FILL = "forward-fill"


@dataclass(frozen=True)
class DailySeries:
    """Real values indexed by strictly increasing calendar dates (UTC days)."""

    dates: tuple[date, ...]
    values: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "dates", tuple(self.dates))
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        if len(self.dates) != len(self.values):
            raise ValueError(
                f"dates/values length mismatch: {len(self.dates)} != {len(self.values)}"
            )
        for prev, cur in zip(self.dates, self.dates[1:]):
            if cur <= prev:
                raise ValueError(f"dates not strictly increasing at {cur}")
        for d, v in zip(self.dates, self.values):
            if not math.isfinite(v):
                raise ValueError(f"non-finite value {v!r} at {d}")

    @classmethod
    def from_items(cls, items: Iterable[tuple[date, float]]) -> "DailySeries":
        """Build from (date, value) pairs in any order."""
        pairs = sorted(items, key=lambda it: it[0])
        return cls(tuple(d for d, _ in pairs), tuple(v for _, v in pairs))

    def __len__(self) -> int:
        return len(self.dates)

    def as_dict(self) -> dict[date, float]:
        return dict(zip(self.dates, self.values))

    def clip(self, start: date | None, end: date | None) -> "DailySeries":
        """Restrict to dates within [start, end] (either bound optional)."""
        kept = [
            (d, v)
            for d, v in zip(self.dates, self.values)
            if (start is None or d >= start) and (end is None or d <= end)
        ]
        return DailySeries(tuple(d for d, _ in kept), tuple(v for _, v in kept))


@dataclass(frozen=True)
class AlignedPair:
    """Two value vectors over one shared, strictly increasing date index."""

    dates: tuple[date, ...]
    x: tuple[float, ...]
    y: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "dates", tuple(self.dates))
        object.__setattr__(self, "x", tuple(float(v) for v in self.x))
        object.__setattr__(self, "y", tuple(float(v) for v in self.y))
        if not (len(self.dates) == len(self.x) == len(self.y)):
            raise ValueError("dates, x and y must have equal length")
        for prev, cur in zip(self.dates, self.dates[1:]):
            if cur <= prev:
                raise ValueError(f"dates not strictly increasing at {cur}")

    def __len__(self) -> int:
        return len(self.dates)


@dataclass(frozen=True)
class Variant:
    """One cell of the experiment grid: shift and/or difference the data."""

    shifted: bool
    stationary: bool

    @property
    def label(self) -> str:
        names = {
            (False, False): "plain",
            (True, False): "shifted",
            (False, True): "stationary",
            (True, True): "shifted-stationary",
        }
        return names[(self.shifted, self.stationary)]

    @classmethod
    def from_label(cls, label: str) -> "Variant":
        table = {
            "plain": cls(False, False),
            "shifted": cls(True, False),
            "stationary": cls(False, True),
            "shifted-stationary": cls(True, True),
        }
        try:
            return table[label.strip().lower()]
        except KeyError:
            raise ValueError(f"unknown variant {label!r}") from None


PLAIN = Variant(False, False)
SHIFTED = Variant(True, False)
STATIONARY = Variant(False, True)
SHIFTED_STATIONARY = Variant(True, True)
ALL_VARIANTS = (PLAIN, SHIFTED, STATIONARY, SHIFTED_STATIONARY)


def align(a: DailySeries, b: DailySeries, policy: str = INNER_JOIN) -> AlignedPair:
    """Pair two daily series onto one date index.

    inner-join keeps only dates present in both series. forward-fill uses
    the union of dates starting at the later first date, carrying each
    series' last known value onto dates it lacks.
    """
    if len(a) == 0 or len(b) == 0:
        raise AlignmentError("cannot align an empty series")
    if policy == INNER_JOIN:
        bmap = b.as_dict()
        amap = a.as_dict()
        shared = [d for d in a.dates if d in bmap]
        if not shared:
            raise AlignmentError("no overlapping dates")
        return AlignedPair(
            tuple(shared),
            tuple(amap[d] for d in shared),
            tuple(bmap[d] for d in shared),
        )
    if policy == FORWARD_FILL:
        start = max(a.dates[0], b.dates[0])
        index = sorted(d for d in set(a.dates) | set(b.dates) if d >= start)
        if not index:
            raise AlignmentError("no overlapping dates")
        return AlignedPair(
            tuple(index), _fill_onto(a, index), _fill_onto(b, index)
        )
    raise ValueError(f"unknown alignment policy {policy!r}")


def _fill_onto(s: DailySeries, index: Sequence[date]) -> tuple[float, ...]:
    # index never precedes s.dates[0], so `last` is set before first use
    out: list[float] = []
    last = s.values[0]
    pos = 0
    for d in index:
        while pos < len(s.dates) and s.dates[pos] <= d:
            last = s.values[pos]
            pos += 1
        out.append(last)
    return tuple(out)


def shift_target(p: AlignedPair, k: int = 1) -> AlignedPair:
    """Re-pair so x at day t predicts y at day t+k.

    Positive k makes the predictor lead the target (the canonical shifted
    variant); negative k flips the direction for sensitivity checks.
    """
    if k == 0:
        raise ValueError("shift of 0 days is the identity; use k != 0")
    n = len(p)
    if n < abs(k) + 1:
        raise SeriesTooShortError(f"series too short to shift by {k} (length {n})")
    if k > 0:
        return AlignedPair(p.dates[: n - k], p.x[: n - k], p.y[k:])
    j = -k
    return AlignedPair(p.dates[j:], p.x[j:], p.y[: n - j])


def difference(s: DailySeries) -> DailySeries:
    """First difference: output[i] = values[i+1] - values[i], dated at i+1."""
    if len(s) < 2:
        raise SeriesTooShortError("series too short to difference")
    vals = tuple(b - a for a, b in zip(s.values, s.values[1:]))
    return DailySeries(s.dates[1:], vals)


def _difference_pair(p: AlignedPair, side: str) -> AlignedPair:
    if len(p) < 2:
        raise SeriesTooShortError("series too short to difference")
    dy = tuple(b - a for a, b in zip(p.y, p.y[1:]))
    if side == "both":
        dx = tuple(b - a for a, b in zip(p.x, p.x[1:]))
    elif side == "target-only":
        dx = p.x[1:]
    else:
        raise ValueError(f"unknown side {side!r}")
    return AlignedPair(p.dates[1:], dx, dy)


def apply_variant(
    p: AlignedPair, v: Variant, side: str = "both", k: int = 1
) -> AlignedPair:
    """Apply a variant's transforms: difference first, then shift."""
    out = p
    if v.stationary:
        out = _difference_pair(out, side)
    if v.shifted:
        out = shift_target(out, k)
    return out

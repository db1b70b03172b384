"""Closed real intervals and their endpoint arithmetic.

Intervals are immutable ``[lo, hi]`` pairs of floats.  The five operations
below work directly on the endpoints:

* ``add``       [a, b] + [c, d] = [a + c, b + d]
* ``opposite``  -[a, b] = [-b, -a]
* ``sub``       [a, b] - [c, d] = [a - d, b - c]
* ``mul_pos``   [a, b] * [c, d] = [a*c, b*d]   (nonnegative operands only)
* ``scale``     t * [a, b], endpoints swapped when t < 0

No outward rounding is done.  Note that ``X - X`` is not ``[0, 0]`` unless
``X`` is degenerate.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Sequence, Tuple

from .errors import ConstructionError, DomainError

EPS_FP = 1e-12


@dataclass(frozen=True, slots=True)
class Interval:
    lo: float
    hi: float

    def __post_init__(self):
        if not self.lo <= self.hi:  # also false when either endpoint is NaN
            if math.isnan(self.lo) or math.isnan(self.hi):
                raise ConstructionError(f"NaN endpoint in [{self.lo}, {self.hi}]")
            raise ConstructionError(f"lower endpoint {self.lo} exceeds upper endpoint {self.hi}")

    @classmethod
    def point(cls, x: float) -> Interval:
        return cls(x, x)

    @property
    def width(self) -> float:
        return self.hi - self.lo

    @property
    def mid(self) -> float:
        return (self.lo + self.hi) / 2

    def is_degenerate(self) -> bool:
        return self.lo == self.hi

    def in_unit(self) -> bool:
        return 0.0 <= self.lo and self.hi <= 1.0

    def is_positive(self) -> bool:
        return self.lo > 0.0

    def is_negative(self) -> bool:
        return self.hi < 0.0

    def __add__(self, other: Interval) -> Interval:
        return add(self, other)

    def __sub__(self, other: Interval) -> Interval:
        return sub(self, other)

    def __neg__(self) -> Interval:
        return opposite(self)

    def __rmul__(self, alpha: float) -> Interval:
        return scale(alpha, self)

    def __str__(self):
        return format_interval(self)


IntervalVector = Tuple[Interval, ...]

ZERO = Interval(0.0, 0.0)
ONE = Interval(1.0, 1.0)


def add(x: Interval, y: Interval) -> Interval:
    return Interval(x.lo + y.lo, x.hi + y.hi)


def opposite(x: Interval) -> Interval:
    return Interval(-x.hi, -x.lo)


def sub(x: Interval, y: Interval) -> Interval:
    return Interval(x.lo - y.hi, x.hi - y.lo)


def mul_pos(x: Interval, y: Interval) -> Interval:
    """Endpoint product, defined for operands with nonnegative lower endpoints.

    Zero lower endpoints are accepted so that products of unit intervals
    stay total.
    """
    if x.lo < 0 or y.lo < 0:
        raise DomainError(f"product needs nonnegative operands, got {x} and {y}")
    return Interval(x.lo * y.lo, x.hi * y.hi)


def scale(alpha: float, x: Interval) -> Interval:
    if alpha >= 0:
        return Interval(alpha * x.lo, alpha * x.hi)
    return Interval(alpha * x.hi, alpha * x.lo)


def in_unit_box(xs: Sequence[Interval]) -> bool:
    return all(x.in_unit() for x in xs)


def _fmt(v: float) -> str:
    if v == 0:
        v = 0.0  # drop negative zero
    return repr(float(v))


def format_interval(x: Interval) -> str:
    return f"[{_fmt(x.lo)},{_fmt(x.hi)}]"


_INTERVAL_RE = re.compile(r"^\s*\[\s*([^,\]]+?)\s*,\s*([^,\]]+?)\s*\]\s*$")


def parse_interval(text: str) -> Interval:
    """Read the ``[lo,hi]`` literal form; a bare number gives a degenerate interval."""
    m = _INTERVAL_RE.match(text)
    try:
        if m:
            return Interval(float(m.group(1)), float(m.group(2)))
        v = float(text)
    except ValueError:
        raise ConstructionError(f"not an interval literal: {text!r}") from None
    return Interval(v, v)


def snap_unit(lo: float, hi: float, eps: float = EPS_FP) -> Interval:
    """Build ``[lo, hi]`` after pulling endpoints that overshoot [0, 1] by at most ``eps``.

    Used where a computed shift lands a rounding error outside the unit box.
    """
    if -eps <= lo < 0.0:
        lo = 0.0
    if 1.0 < hi <= 1.0 + eps:
        hi = 1.0
    if lo > hi and lo - hi <= eps:
        hi = lo
    return Interval(lo, hi)

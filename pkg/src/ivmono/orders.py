"""Orders on subintervals of [0, 1].

The Kulisch-Miranker order compares endpoints separately and is only
partial.  The total orders here are generated by two key functions: X comes
before Y when its first key is smaller, or the first keys tie and its second
key is smaller.  A pair of keys gives an admissible order (total, and
refining the KM order) only if the keys jointly separate intervals and
respect KM dominance; ``is_admissible`` checks that empirically.
"""

from __future__ import annotations

import enum
import itertools
import random
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .interval import EPS_FP, Interval, format_interval


class OrderRelation(enum.Enum):
    LESS = "less"
    EQUAL = "equal"
    GREATER = "greater"
    INCOMPARABLE = "incomparable"

    def converse(self) -> OrderRelation:
        return _CONVERSE[self]


_CONVERSE = {
    OrderRelation.LESS: OrderRelation.GREATER,
    OrderRelation.GREATER: OrderRelation.LESS,
    OrderRelation.EQUAL: OrderRelation.EQUAL,
    OrderRelation.INCOMPARABLE: OrderRelation.INCOMPARABLE,
}

LESS = OrderRelation.LESS
EQUAL = OrderRelation.EQUAL
GREATER = OrderRelation.GREATER
INCOMPARABLE = OrderRelation.INCOMPARABLE

KeyFunction = Callable[[float, float], float]

KEYS: Dict[str, KeyFunction] = {
    "lower": lambda lo, hi: lo,
    "upper": lambda lo, hi: hi,
    "mid": lambda lo, hi: (lo + hi) / 2,
    "width": lambda lo, hi: hi - lo,
}

_NAMED_KEYS = {
    "lex-lower": ("lower", "upper"),
    "lex-upper": ("upper", "lower"),
    "xu-yager": ("mid", "upper"),
}

ADMISSIBLE_ORDER_NAMES = ("lex-lower", "lex-upper", "xu-yager")
ORDER_NAMES = ("km",) + ADMISSIBLE_ORDER_NAMES


@dataclass(frozen=True)
class OrderSpec:
    """An order on intervals.

    ``keys`` is empty for the Kulisch-Miranker order and holds two key names
    from ``KEYS`` otherwise.  ``tolerance`` is the width within which two key
    values count as tied.
    """

    name: str
    keys: Tuple[str, ...] = ()
    tolerance: float = 0.0
    _fns: Tuple[KeyFunction, ...] = field(default=(), init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.tolerance < 0:
            raise ValueError("order tolerance must be nonnegative")
        if self.keys:
            if len(self.keys) != 2:
                raise ValueError("two-key orders need exactly two keys")
            unknown = [k for k in self.keys if k not in KEYS]
            if unknown:
                raise ValueError(f"unknown key(s) {unknown}; known: {sorted(KEYS)}")
            object.__setattr__(self, "_fns", tuple(KEYS[k] for k in self.keys))

    @property
    def is_total(self) -> bool:
        return bool(self.keys)

    def key(self, x: Interval) -> Tuple[float, ...]:
        return tuple(f(x.lo, x.hi) for f in self._fns)

    def compare(self, x: Interval, y: Interval, eps: Optional[float] = None) -> OrderRelation:
        return cmp(self, x, y, eps)

    def maximum(self, x: Interval, y: Interval, eps: float = EPS_FP) -> Interval:
        """Larger of the two; ``y`` on ties.  Endpointwise max for KM.

        Keys within ``eps`` tie, so rounding in a midpoint key cannot pick
        the smaller interval.
        """
        if not self.is_total:
            return Interval(max(x.lo, y.lo), max(x.hi, y.hi))
        return x if cmp(self, x, y, max(eps, self.tolerance)) is GREATER else y

    def minimum(self, x: Interval, y: Interval, eps: float = EPS_FP) -> Interval:
        if not self.is_total:
            return Interval(min(x.lo, y.lo), min(x.hi, y.hi))
        return x if cmp(self, x, y, max(eps, self.tolerance)) is LESS else y

    def __str__(self):
        return self.name


KM = OrderSpec("km")


def km_compare(x: Interval, y: Interval, eps: float = 0.0) -> OrderRelation:
    lo_le = x.lo <= y.lo + eps
    hi_le = x.hi <= y.hi + eps
    lo_ge = y.lo <= x.lo + eps
    hi_ge = y.hi <= x.hi + eps
    if lo_le and hi_le:
        return EQUAL if (lo_ge and hi_ge) else LESS
    if lo_ge and hi_ge:
        return GREATER
    return INCOMPARABLE


def cmp(order: OrderSpec, x: Interval, y: Interval, eps: Optional[float] = None) -> OrderRelation:
    """Compare ``x`` with ``y``; ``eps`` overrides the order's own tie tolerance."""
    tol = order.tolerance if eps is None else eps
    if not order._fns:
        return km_compare(x, y, tol)
    for f in order._fns:
        a = f(x.lo, x.hi)
        b = f(y.lo, y.hi)
        if a < b - tol:
            return LESS
        if a > b + tol:
            return GREATER
    return EQUAL


def get_order(name: str, tolerance: float = 0.0) -> OrderSpec:
    """Look up an order by its command-line name.

    Accepts ``km``, ``lex-lower``, ``lex-upper``, ``xu-yager`` and
    ``two-key:<k1>,<k2>``.
    """
    name = name.strip()
    if name == "km":
        return OrderSpec("km", (), tolerance)
    if name in _NAMED_KEYS:
        return OrderSpec(name, _NAMED_KEYS[name], tolerance)
    if name.startswith("two-key:"):
        parts = tuple(p.strip() for p in name[len("two-key:"):].split(","))
        return OrderSpec(f"two-key:{','.join(parts)}", parts, tolerance)
    raise ValueError(f"unknown order {name!r}; expected one of {', '.join(ORDER_NAMES)} or two-key:<k1>,<k2>")


def unit_grid(step: float) -> List[Interval]:
    """All subintervals of [0, 1] whose endpoints are multiples of ``step``."""
    m = round(1.0 / step)
    if m < 1 or abs(m * step - 1.0) > 1e-9:
        raise ValueError(f"grid step {step} does not divide 1")
    pts = [i / m for i in range(m + 1)]
    return [Interval(a, b) for i, a in enumerate(pts) for b in pts[i:]]


def random_interval(rng: random.Random) -> Interval:
    a, b = rng.random(), rng.random()
    return Interval(min(a, b), max(a, b))


@dataclass
class AdmissibilityReport:
    order: str
    intervals_checked: int = 0
    pairs_checked: int = 0
    triples_checked: int = 0
    violations: Dict[str, int] = field(default_factory=lambda: dict.fromkeys(VIOLATION_KINDS, 0))
    witnesses: Dict[str, list] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not any(self.violations.values())

    def record(self, kind: str, witness: Sequence[Interval]):
        self.violations[kind] += 1
        self.witnesses.setdefault(kind, list(witness))

    def to_dict(self) -> dict:
        return {
            "order": self.order,
            "passed": self.passed,
            "intervals_checked": self.intervals_checked,
            "pairs_checked": self.pairs_checked,
            "triples_checked": self.triples_checked,
            "violations": dict(self.violations),
            "witnesses": {k: [format_interval(x) for x in w] for k, w in sorted(self.witnesses.items())},
        }


VIOLATION_KINDS = ("totality", "antisymmetry", "separation", "transitivity", "km_refinement")


def is_admissible(order: OrderSpec, grid_step: float = 0.125, random_count: int = 0,
                  seed: int = 0) -> AdmissibilityReport:
    """Empirically test that ``order`` is a total order refining KM.

    Pairs are enumerated exhaustively over the grid plus ``random_count``
    random intervals.  Triples are exhaustive over the grid; with random
    intervals present, ``random_count`` extra triples are drawn from the
    whole pool.
    """
    grid = unit_grid(grid_step)
    rng = random.Random(seed)
    pool = grid + [random_interval(rng) for _ in range(random_count)]
    n = len(pool)
    report = AdmissibilityReport(order.name, intervals_checked=n)

    rel = [[cmp(order, x, y) for y in pool] for x in pool]
    for i, x in enumerate(pool):
        row = rel[i]
        for j, y in enumerate(pool):
            r = row[j]
            report.pairs_checked += 1
            if r is INCOMPARABLE:
                report.record("totality", (x, y))
            if rel[j][i] is not r.converse():
                report.record("antisymmetry", (x, y))
            if r is EQUAL and x != y:
                report.record("separation", (x, y))
            if x != y and km_compare(x, y) is LESS and r is not LESS:
                report.record("km_refinement", (x, y))

    le = [[r is LESS or r is EQUAL for r in row] for row in rel]

    def triple(i, j, k):
        report.triples_checked += 1
        if le[i][j] and le[j][k] and not le[i][k]:
            report.record("transitivity", (pool[i], pool[j], pool[k]))

    g = len(grid)
    for i, j, k in itertools.product(range(g), repeat=3):
        triple(i, j, k)
    for _ in range(random_count):
        triple(rng.randrange(n), rng.randrange(n), rng.randrange(n))
    return report

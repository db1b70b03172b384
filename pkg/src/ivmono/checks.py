"""Sampling-based checkers for monotonicity notions of IV-functions.

Every checker quantifies "for all points and all admissible shifts" over a
finite sample: all grid points of the unit box (endpoints on a regular grid)
followed by seeded random points.  Samples are visited in that fixed order,
so the reported witness is always the first violation found and results are
reproducible from the config alone.

A verdict of ``VERIFIED`` means no sampled comparison failed.  ``VACUOUS``
means no sampled point admitted a feasible positive shift; it is never
folded into ``VERIFIED``.

Notions covered:

* ``check_increasing``       F(X) <= F(Y) whenever X <= Y componentwise
* ``check_directional_km``   F(X) <=_KM F(X + cV) for a real-pair direction V
* ``check_weak_km``          the same with V = ((a, b), ..., (a, b))
* ``check_weak_adm``         F(X1 + C, ..., Xn + C) >= F(X) for intervals C
* ``check_directional_adm``  F(X1 + k V1, ..., Xn + k Vn) >= F(X), V degenerate
* ``check_g_weak``           F(G(L, X1), ..., G(L, Xn)) >= F(X)
* ``check_g_weak_scalar``    the real-valued version, used as a cross-oracle
"""

from __future__ import annotations

import enum
import itertools
import math
import random
from dataclasses import asdict, dataclass
from typing import Callable, Iterable, List, Optional, Sequence, Tuple, Union

from .errors import ArityError, DirectionError, GContractError
from .functions import IVFunction, eval_function
from .interval import EPS_FP, ZERO, Interval, format_interval, snap_unit
from .orders import (EQUAL, GREATER, INCOMPARABLE, KM, LESS, OrderRelation, OrderSpec, cmp,
                     random_interval, unit_grid)

Point = Tuple[Interval, ...]

SENSES = ("inc", "dec")


class Status(enum.Enum):
    VERIFIED = "VerifiedUpToSampling"
    COUNTEREXAMPLE = "Counterexample"
    VACUOUS = "Vacuous"


@dataclass(frozen=True)
class SamplingConfig:
    grid_step: float = 0.1
    random_count: int = 0
    shift_count: int = 8
    seed: int = 0xC0FFEE
    eps_cmp: float = 1e-9
    # restrict weak-monotonicity shifts C and G-weak parameters to degenerate intervals
    degenerate_shifts: bool = False
    # leave the zero interval out of the G-weak parameter sample
    exclude_zero_lambda: bool = False

    def __post_init__(self):
        if not 0 < self.grid_step <= 1:
            raise ValueError(f"grid_step must lie in (0, 1], got {self.grid_step}")
        m = round(1.0 / self.grid_step)
        if abs(m * self.grid_step - 1.0) > EPS_FP * max(1, m):
            raise ValueError(f"grid_step {self.grid_step} does not divide 1")
        if self.random_count < 0:
            raise ValueError("random_count must be >= 0")
        if self.shift_count < 1:
            raise ValueError("shift_count must be >= 1")
        if self.eps_cmp < 0:
            raise ValueError("eps_cmp must be >= 0")

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class RealPairs:
    """Direction ((a1, b1), ..., (an, bn)); component i moves as [lo + c*ai, hi + c*bi]."""

    pairs: Tuple[Tuple[float, float], ...]

    def __post_init__(self):
        pairs = tuple((float(a), float(b)) for a, b in self.pairs)
        if not pairs:
            raise DirectionError("direction needs at least one component")
        if all(a == 0 and b == 0 for a, b in pairs):
            raise DirectionError("direction must have some component (a, b) != (0, 0)")
        object.__setattr__(self, "pairs", pairs)

    @property
    def arity(self) -> int:
        return len(self.pairs)

    def __str__(self):
        return ";".join(f"{a!r},{b!r}" for a, b in self.pairs)


@dataclass(frozen=True)
class DegenerateVec:
    """Direction of degenerate intervals (V1, ..., Vn), not all equal to [0, 0]."""

    values: Tuple[Interval, ...]

    def __post_init__(self):
        vals = tuple(v if isinstance(v, Interval) else Interval(float(v), float(v)) for v in self.values)
        if not vals:
            raise DirectionError("direction needs at least one component")
        if any(not v.is_degenerate() for v in vals):
            raise DirectionError("every direction component must be a degenerate interval")
        if all(v.lo == 0 for v in vals):
            raise DirectionError("direction must not be the zero vector")
        object.__setattr__(self, "values", vals)

    @property
    def arity(self) -> int:
        return len(self.values)

    @property
    def pairs(self) -> Tuple[Tuple[float, float], ...]:
        return tuple((v.lo, v.lo) for v in self.values)

    def __str__(self):
        return ",".join(repr(v.lo) for v in self.values)


class UniformShift:
    """Marker for the weak (uniform interval shift) notion; the shift is sampled, not stored."""

    def __repr__(self):
        return "UniformShift()"


Direction = Union[RealPairs, DegenerateVec, UniformShift]


@dataclass(frozen=True)
class Witness:
    base: Point
    shift: object  # shift size c/k (float), shift interval C or parameter L (Interval), or the larger point
    shifted: Point
    before: Interval
    after: Interval
    relation: OrderRelation

    def to_dict(self) -> dict:
        return {
            "base": [format_interval(x) for x in self.base],
            "shift": _shift_repr(self.shift),
            "shifted": [format_interval(x) for x in self.shifted],
            "before": format_interval(self.before),
            "after": format_interval(self.after),
            "relation": self.relation.value,
        }


def _shift_repr(shift):
    if isinstance(shift, Interval):
        return format_interval(shift)
    if isinstance(shift, tuple):
        return [format_interval(x) for x in shift]
    return shift


@dataclass
class CheckResult:
    notion: str
    sense: str
    order: str
    status: Status
    witness: Optional[Witness]
    points_checked: int
    comparisons_failed: int
    shifts_skipped: int
    config: SamplingConfig

    @property
    def verified(self) -> bool:
        return self.status is Status.VERIFIED

    @property
    def failed(self) -> bool:
        return self.status is Status.COUNTEREXAMPLE


def violation(order: OrderSpec, before: Interval, after: Interval, sense: str,
              eps: float) -> Optional[OrderRelation]:
    """Relation of ``after`` to ``before`` if it breaks the required sense, else None.

    Increasing needs ``after >= before``; a strict drop or incomparability is a
    violation.  Key differences up to ``eps`` count as ties.
    """
    rel = cmp(order, after, before, eps)
    if rel is INCOMPARABLE:
        return rel
    if rel is (LESS if sense == "inc" else GREATER):
        return rel
    return None


class _Tally:
    def __init__(self, notion, sense, order, cfg):
        if sense not in SENSES:
            raise ValueError(f"sense must be 'inc' or 'dec', got {sense!r}")
        self.notion, self.sense, self.order, self.cfg = notion, sense, order, cfg
        self.checked = 0
        self.failed = 0
        self.skipped = 0
        self.witness = None
        self.eps = cfg.eps_cmp
        # the one non-equal relation that satisfies the sense; see ``violation``
        self.fine = GREATER if sense == "inc" else LESS

    def compare(self, base, shift, shifted, before, after):
        self.checked += 1
        rel = cmp(self.order, after, before, self.eps)
        if rel is EQUAL or rel is self.fine:
            return
        self.failed += 1
        if self.witness is None:
            self.witness = Witness(tuple(base), shift, tuple(shifted), before, after, rel)

    def result(self) -> CheckResult:
        if self.witness is not None:
            status = Status.COUNTEREXAMPLE
        elif self.checked == 0:
            status = Status.VACUOUS
        else:
            status = Status.VERIFIED
        return CheckResult(self.notion, self.sense, self.order.name, status, self.witness,
                           self.checked, self.failed, self.skipped, self.cfg)


def sample_points(arity: int, cfg: SamplingConfig) -> List[Point]:
    """Grid points of the unit box in lexicographic order, then ``random_count`` random points."""
    grid = unit_grid(cfg.grid_step)
    pts = list(itertools.product(grid, repeat=arity))
    rng = random.Random(cfg.seed)
    pts.extend(tuple(random_interval(rng) for _ in range(arity)) for _ in range(cfg.random_count))
    return pts


def _points(F, cfg, points):
    if points is None:
        return sample_points(F.arity, cfg)
    pts = [tuple(p) for p in points]
    if any(len(p) != F.arity for p in pts):
        raise ArityError(f"sample point arity differs from {F.arity}")
    return pts


def feasible_max_shift(x: Sequence[Interval], direction: Direction) -> float:
    """Largest k such that every shift 0 < c <= k keeps ``x`` inside the unit box.

    Each component must stay a valid interval within [0, 1]; every constraint
    is linear in c, so the answer is the smallest binding ratio.  Returns 0
    when no positive shift is feasible.
    """
    if isinstance(direction, UniformShift):
        raise DirectionError("uniform shifts have no scalar step size")
    pairs = direction.pairs
    if len(pairs) != len(x):
        raise ArityError(f"direction arity {len(pairs)} differs from point arity {len(x)}")
    k = math.inf
    for xi, (a, b) in zip(x, pairs):
        # each constraint reads slack + c * rate >= 0
        for slack, rate in ((xi.lo, a), (1.0 - xi.hi, -b), (xi.hi - xi.lo, b - a)):
            if rate < 0:
                k = min(k, max(slack, 0.0) / -rate)
    return 0.0 if math.isinf(k) else k


def _shift_pairs(x: Point, pairs, c: float) -> Point:
    return tuple(snap_unit(xi.lo + c * a, xi.hi + c * b) for xi, (a, b) in zip(x, pairs))


def _shift_degenerate(x: Point, values, k: float) -> Point:
    # X + k*[v,v] is [lo + k*v, hi + k*v] whatever the sign of k*v
    return tuple(snap_unit(xi.lo + k * v.lo, xi.hi + k * v.lo) for xi, v in zip(x, values))


def _step_sizes(kmax: float, count: int) -> List[float]:
    return [kmax * j / count for j in range(1, count + 1)]


def _successors(order: OrderSpec, x: Interval, universe: Sequence[Interval], eps: float) -> List[Interval]:
    """Immediate successors of ``x`` within ``universe`` (minimal elements strictly above it)."""
    ups = [y for y in universe if cmp(order, y, x, eps) is GREATER]
    return [y for y in ups if not any(cmp(order, y, z, eps) is GREATER for z in ups)]


def check_increasing(F: IVFunction, order: OrderSpec = KM, cfg: SamplingConfig = SamplingConfig(),
                     sense: str = "inc", points: Optional[Iterable[Point]] = None) -> CheckResult:
    """Standard monotonicity w.r.t. the componentwise extension of ``order``.

    Comparable pairs X <= Y are built by raising one coordinate of a sample
    point to each of its immediate successors on the grid.  Any comparable
    pair of grid points is joined by a chain of such steps through grid
    points, so for a transitive order this settles every comparable grid
    pair.  Random points additionally get ``shift_count`` random KM-upward
    perturbations per coordinate.  Each point is also compared with itself.
    """
    tally = _Tally("increasing", sense, order, cfg)
    pts = _points(F, cfg, points)
    if points is None:
        universe = unit_grid(cfg.grid_step)
        n_grid = len(pts) - cfg.random_count
    else:
        universe = sorted({x for p in pts for x in p}, key=lambda x: (x.lo, x.hi))
        n_grid = len(pts)
    # inputs are ordered with the same tie slack as outputs, so decimal grid noise cannot reorder them
    covers = {x: _successors(order, x, universe, cfg.eps_cmp) for x in universe}
    rng = random.Random(cfg.seed ^ 0x5EED)

    def successors(x):
        if x not in covers:
            covers[x] = _successors(order, x, universe, cfg.eps_cmp)
        return covers[x]

    for idx, p in enumerate(pts):
        before = eval_function(F, p)
        tally.compare(p, p, p, before, before)
        for i, xi in enumerate(p):
            cands = list(successors(xi))
            if idx >= n_grid:
                for _ in range(cfg.shift_count):
                    hi = xi.hi + rng.random() * (1.0 - xi.hi)
                    lo = xi.lo + rng.random() * (hi - xi.lo)
                    y = Interval(lo, hi)
                    if y != xi:
                        cands.append(y)
            for y in cands:
                q = p[:i] + (y,) + p[i + 1:]
                tally.compare(p, q, q, before, F.evaluate(q))
    return tally.result()


def _directional(notion, F, pairs, shift_fn, order, cfg, sense, points):
    if len(pairs) != F.arity:
        raise ArityError(f"direction arity {len(pairs)} differs from function arity {F.arity}")
    tally = _Tally(notion, sense, order, cfg)
    probe = RealPairs(pairs)
    for p in _points(F, cfg, points):
        kmax = feasible_max_shift(p, probe)
        if kmax <= 0:
            tally.skipped += 1
            continue
        before = eval_function(F, p)
        for c in _step_sizes(kmax, cfg.shift_count):
            q = shift_fn(p, c)
            tally.compare(p, c, q, before, eval_function(F, q))
    return tally.result()


def check_directional_km(F: IVFunction, direction: RealPairs, cfg: SamplingConfig = SamplingConfig(),
                         sense: str = "inc", points: Optional[Iterable[Point]] = None) -> CheckResult:
    """Directional monotonicity along real pairs, compared in the KM order.

    For every sample point, ``shift_count`` step sizes evenly spaced in
    (0, kmax] are tried, kmax included.  An incomparable pair violates
    both senses.
    """
    pairs = direction.pairs
    return _directional("directional-km", F, pairs, lambda p, c: _shift_pairs(p, pairs, c),
                        KM, cfg, sense, points)


def check_weak_km(F: IVFunction, pair: Tuple[float, float], cfg: SamplingConfig = SamplingConfig(),
                  sense: str = "inc", points: Optional[Iterable[Point]] = None) -> CheckResult:
    direction = RealPairs((tuple(pair),) * F.arity)
    result = check_directional_km(F, direction, cfg, sense, points)
    result.notion = "weak-km"
    return result


def check_directional_adm(F: IVFunction, direction: DegenerateVec, order: OrderSpec,
                          cfg: SamplingConfig = SamplingConfig(), sense: str = "inc",
                          points: Optional[Iterable[Point]] = None) -> CheckResult:
    values = direction.values
    return _directional("directional", F, direction.pairs,
                        lambda p, k: _shift_degenerate(p, values, k), order, cfg, sense, points)


def weak_shifts(cfg: SamplingConfig) -> List[Interval]:
    grid = unit_grid(cfg.grid_step)
    return [c for c in grid if c != ZERO and (c.is_degenerate() or not cfg.degenerate_shifts)]


def check_weak_adm(F: IVFunction, order: OrderSpec, cfg: SamplingConfig = SamplingConfig(),
                   sense: str = "inc", points: Optional[Iterable[Point]] = None) -> CheckResult:
    """Weak monotonicity: every argument shifted by the same interval C != [0, 0].

    C runs over the grid (degenerate grid intervals only when
    ``cfg.degenerate_shifts``), plus the largest feasible shifts
    ``[c, c]`` and ``[0, c]`` for each point.  Infeasible shifts are
    counted in ``shifts_skipped``.
    """
    tally = _Tally("weak", sense, order, cfg)
    shifts = weak_shifts(cfg)
    grid_set = set(shifts)
    for p in _points(F, cfg, points):
        room = 1.0 - max(x.hi for x in p)
        extra = []
        if room > 0:
            extra.append(Interval(room, room))
            if not cfg.degenerate_shifts:
                extra.append(Interval(0.0, room))
        before = None
        for c in itertools.chain(shifts, (e for e in extra if e not in grid_set)):
            if c.hi > room + EPS_FP:
                tally.skipped += 1
                continue
            if before is None:
                before = eval_function(F, p)
            q = tuple(snap_unit(x.lo + c.lo, x.hi + c.hi) for x in p)
            tally.compare(p, c, q, before, eval_function(F, q))
    return tally.result()


def _check_g_contract(G, order, cfg, universe):
    bad = []
    for lam in unit_grid(cfg.grid_step):
        for y in universe:
            g = eval_function(G, (lam, y))
            rel = cmp(order, g, y, cfg.eps_cmp)
            if rel is LESS or rel is INCOMPARABLE:
                bad.append((lam, y, g))
    if bad:
        lam, y, g = bad[0]
        raise GContractError(
            f"{getattr(G, 'name', G)} violates G(X, Y) >= Y under {order.name} on {len(bad)} sampled pair(s); "
            f"first: G({format_interval(lam)}, {format_interval(y)}) = {format_interval(g)}",
            bad)


def g_parameters(cfg: SamplingConfig) -> List[Interval]:
    lams = unit_grid(cfg.grid_step)
    if cfg.degenerate_shifts:
        lams = [x for x in lams if x.is_degenerate()]
    if cfg.exclude_zero_lambda:
        lams = [x for x in lams if x != ZERO]
    return lams


def check_g_weak(F: IVFunction, G: IVFunction, order: OrderSpec, cfg: SamplingConfig = SamplingConfig(),
                 sense: str = "inc", points: Optional[Iterable[Point]] = None) -> CheckResult:
    """G-weak monotonicity: F(G(L, X1), ..., G(L, Xn)) compared against F(X).

    Before sampling, ``G(L, Y) >= Y`` is checked for every grid L and every
    interval occurring in the sample; a failure raises GContractError.
    """
    if G.arity != 2:
        raise ArityError(f"G must be binary, {G.name} has arity {G.arity}")
    pts = _points(F, cfg, points)
    universe = sorted({x for p in pts for x in p} | set(unit_grid(cfg.grid_step)),
                      key=lambda x: (x.lo, x.hi))
    _check_g_contract(G, order, cfg, universe)

    tally = _Tally("g-weak", sense, order, cfg)
    lams = g_parameters(cfg)
    index = {x: i for i, x in enumerate(universe)}
    table = [[G.evaluate((lam, x)) for x in universe] for lam in lams]
    for p in pts:
        before = eval_function(F, p)
        idx = [index[x] for x in p]
        for lam, row in zip(lams, table):
            q = tuple(row[i] for i in idx)
            tally.compare(p, lam, q, before, F.evaluate(q))
    return tally.result()


def check_g_weak_scalar(f: Callable[..., float], g: Callable[[float, float], float], arity: int,
                        cfg: SamplingConfig = SamplingConfig(), sense: str = "inc") -> CheckResult:
    """Real-valued G-weak check: f(g(l, x1), ..., g(l, xn)) against f(x) for l in (0, 1].

    First checks ``g(x, y) >= y`` on all grid pairs (GContractError
    otherwise).  Witness intervals are degenerate.
    """
    m = round(1.0 / cfg.grid_step)
    grid = [i / m for i in range(m + 1)]
    eps = cfg.eps_cmp
    bad = [(x, y, g(x, y)) for x in grid for y in grid if g(x, y) < y - eps]
    if bad:
        x, y, v = bad[0]
        raise GContractError(f"g violates g(x, y) >= y on {len(bad)} grid pair(s); first: g({x}, {y}) = {v}",
                             [(Interval(x, x), Interval(y, y), Interval(v, v)) for x, y, v in bad])

    tally = _Tally("g-weak-scalar", sense, KM, cfg)
    rng = random.Random(cfg.seed)
    pts = list(itertools.product(grid, repeat=arity))
    pts.extend(tuple(rng.random() for _ in range(arity)) for _ in range(cfg.random_count))
    lams = grid[1:]
    for p in pts:
        before = f(*p)
        for lam in lams:
            q = tuple(g(lam, x) for x in p)
            after = f(*q)
            tally.compare(tuple(Interval(x, x) for x in p), Interval(lam, lam),
                          tuple(Interval(x, x) for x in q), Interval(before, before), Interval(after, after))
    return tally.result()


def replay(F: IVFunction, order: OrderSpec, result: CheckResult, eps: Optional[float] = None) -> bool:
    """Re-evaluate a counterexample from scratch; True iff it is still a violation."""
    w = result.witness
    if w is None:
        return False
    before = eval_function(F, w.base)
    after = eval_function(F, w.shifted)
    if before != w.before or after != w.after:
        return False
    e = result.config.eps_cmp if eps is None else eps
    return violation(order, before, after, result.sense, e) is not None

"""Interval-valued functions on the unit box and the builtin registry.

An ``IVFunction`` maps ``n`` subintervals of [0, 1] to a subinterval of
[0, 1].  Three kinds exist:

* ``Builtin``: a named family from ``BUILTINS`` (means, products, lattice
  operations, implications, G-functions).
* ``ScalarLift``: the best interval representation of a scalar function,
  i.e. ``[min f, max f]`` over the argument box.
* ``ExprFunction`` (see ``ivmono.dsl``): a parsed arithmetic expression.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence, Tuple

from .errors import ArityError, BadParams, RangeError, UnknownBuiltin
from .interval import EPS_FP, Interval, format_interval
from .orders import OrderSpec, get_order

ScalarFunction = Callable[..., float]


class IVFunction:
    arity: int
    name: str

    def evaluate(self, args: Sequence[Interval]) -> Interval:
        raise NotImplementedError

    def __call__(self, *args: Interval) -> Interval:
        return eval_function(self, args)

    def __repr__(self):
        return f"<{type(self).__name__} {self.name} arity={self.arity}>"


def eval_function(F: IVFunction, args: Sequence[Interval]) -> Interval:
    """Evaluate ``F`` at a point of the unit box, checking arity and domain."""
    if len(args) != F.arity:
        raise ArityError(f"{F.name} takes {F.arity} argument(s), got {len(args)}")
    for x in args:
        if not (0.0 <= x.lo and x.hi <= 1.0):
            raise RangeError(f"argument {format_interval(x)} is outside [0,1]", point=tuple(args))
    return F.evaluate(args)


def _unit(lo: float, hi: float, name: str, args) -> Interval:
    # absorb float noise from formulas that are exact in real arithmetic
    if -EPS_FP <= lo < 0.0:
        lo = 0.0
    if 1.0 < hi <= 1.0 + EPS_FP:
        hi = 1.0
    if hi < lo <= hi + EPS_FP:
        lo, hi = hi, lo
    if lo < 0.0 or hi > 1.0:
        raise RangeError(f"{name} left [0,1]: [{lo},{hi}]", point=tuple(args))
    return Interval(lo, hi)


@dataclass(frozen=True, repr=False)
class Builtin(IVFunction):
    name: str
    arity: int
    params: Tuple = ()
    impl: Callable = field(default=None, compare=False)

    def evaluate(self, args):
        lo, hi = self.impl(args, *self.params)
        return _unit(lo, hi, self.name, args)

    def describe(self) -> str:
        if not self.params:
            return self.name
        return f"{self.name}({','.join(str(p) for p in self.params)})"


class ScalarLift(IVFunction):
    """Best interval representation of a scalar function on [0, 1]^n.

    With a monotonicity hint (+1 increasing, -1 decreasing) for every
    argument the extrema sit at box corners and the result is exact.
    Otherwise the box is sampled on ``resolution`` points per axis and
    ``approximate`` is set.
    """

    def __init__(self, f: ScalarFunction, arity: int, hints: Optional[Sequence[int]] = None,
                 name: str = "lift", resolution: int = 17):
        if arity < 1:
            raise ArityError("arity must be at least 1")
        if hints is not None and len(hints) != arity:
            raise ArityError(f"{len(hints)} hints for arity {arity}")
        self.f = f
        self.arity = arity
        self.hints = tuple(hints) if hints is not None else None
        self.name = name
        self.resolution = resolution
        self.approximate = self.hints is None or any(h not in (1, -1) for h in self.hints)

    def evaluate(self, args):
        f = self.f
        if not self.approximate:
            low = [x.lo if h > 0 else x.hi for x, h in zip(args, self.hints)]
            high = [x.hi if h > 0 else x.lo for x, h in zip(args, self.hints)]
            return _unit(f(*low), f(*high), self.name, args)
        values = [f(*p) for p in box_samples(args, self.resolution)]
        return _unit(min(values), max(values), self.name, args)


def box_samples(args: Sequence[Interval], resolution: int):
    """Points of the box ``args[0] x ... x args[n-1]`` on a regular lattice (corners included)."""
    axes = []
    for x in args:
        if x.is_degenerate():
            axes.append((x.lo,))
        else:
            axes.append(tuple(x.lo + (x.hi - x.lo) * i / (resolution - 1) for i in range(resolution)))
    return itertools.product(*axes)


def scalar_lift(f: ScalarFunction, arity: int, hints: Optional[Sequence[int]] = None,
                name: str = "lift", resolution: int = 17) -> ScalarLift:
    return ScalarLift(f, arity, hints, name, resolution)


# scalar connectives

def lukasiewicz_implication(x, y):
    return min(1.0, 1.0 - (x - y))


def reichenbach_implication(x, y):
    return 1.0 - x + x * y


def truncated_difference(x, y):
    return max(0.0, x - y)


def probabilistic_sum(x, y):
    return x + y - x * y


def _corners(f, dec_first: bool, inc_second: bool):
    """Exact lift of a binary scalar function with known monotonicity per argument."""
    def impl(args):
        x, y = args
        xl, xh = (x.hi, x.lo) if dec_first else (x.lo, x.hi)
        yl, yh = (y.lo, y.hi) if inc_second else (y.hi, y.lo)
        return f(xl, yl), f(xh, yh)
    return impl


def _mean(args):
    n = len(args)
    return sum(x.lo for x in args) / n, sum(x.hi for x in args) / n


def _wmean(args, *weights):
    return (sum(w * x.lo for w, x in zip(weights, args)),
            sum(w * x.hi for w, x in zip(weights, args)))


def _prod(args):
    return math.prod(x.lo for x in args), math.prod(x.hi for x in args)


def _min_km(args):
    return min(x.lo for x in args), min(x.hi for x in args)


def _max_km(args):
    return max(x.lo for x in args), max(x.hi for x in args)


def _g_max(args, order):
    r = order.maximum(args[0], args[1])
    return r.lo, r.hi


# name -> (implementation, fixed arity or None for n-ary)
BUILTINS = {
    "mean": (_mean, None),
    "wmean": (_wmean, None),
    "prod": (_prod, None),
    "min-km": (_min_km, None),
    "max-km": (_max_km, None),
    "luk-impl": (_corners(lukasiewicz_implication, True, True), 2),
    "rb-impl": (_corners(reichenbach_implication, True, True), 2),
    "trunc-diff": (_corners(truncated_difference, False, False), 2),
    "g-probsum": (_corners(probabilistic_sum, False, True), 2),
    "g-max": (_g_max, 2),
}

# scalar counterpart and per-argument monotonicity of the lifted builtins
SCALAR_FORMS = {
    "luk-impl": (lukasiewicz_implication, (-1, 1)),
    "rb-impl": (reichenbach_implication, (-1, 1)),
    "trunc-diff": (truncated_difference, (1, -1)),
    "g-probsum": (probabilistic_sum, (1, 1)),
}


def builtin(name: str, params: Sequence = (), arity: Optional[int] = None) -> Builtin:
    """Instantiate a registered builtin.

    ``wmean`` takes its weights as params (arity follows from them);
    ``g-max`` takes one order (an ``OrderSpec`` or its name).  n-ary
    builtins default to arity 2.
    """
    name = name.strip().replace("_", "-")
    if name not in BUILTINS:
        raise UnknownBuiltin(f"unknown builtin {name!r}; known: {', '.join(BUILTINS)}")
    impl, fixed = BUILTINS[name]
    params = tuple(params)

    if name == "wmean":
        try:
            weights = tuple(float(w) for w in params)
        except (TypeError, ValueError):
            raise BadParams("wmean weights must be numbers") from None
        if not weights:
            raise BadParams("wmean needs at least one weight")
        if any(w < 0 for w in weights):
            raise BadParams(f"wmean weights must be nonnegative: {weights}")
        if abs(sum(weights) - 1.0) > EPS_FP:
            raise BadParams(f"wmean weights must sum to 1, got {sum(weights)}")
        if arity is not None and arity != len(weights):
            raise ArityError(f"wmean with {len(weights)} weights has arity {len(weights)}, not {arity}")
        return Builtin(name, len(weights), weights, impl)

    if name == "g-max":
        if len(params) != 1:
            raise BadParams("g-max takes exactly one order parameter")
        order = params[0]
        if not isinstance(order, OrderSpec):
            try:
                order = get_order(str(order))
            except ValueError as exc:
                raise BadParams(str(exc)) from None
        params = (order,)
    elif params:
        raise BadParams(f"{name} takes no parameters")

    if fixed is not None:
        if arity is not None and arity != fixed:
            raise ArityError(f"{name} has arity {fixed}, not {arity}")
        arity = fixed
    elif arity is None:
        arity = 2
    if arity < 1:
        raise ArityError("arity must be at least 1")
    return Builtin(name, arity, params, impl)


_SPEC_RE = re.compile(r"^\s*([A-Za-z][A-Za-z0-9_-]*)\s*(?:\(\s*([^()]*)\))?\s*$")


def parse_builtin_spec(text: str, arity: Optional[int] = None) -> Optional[Builtin]:
    """Parse ``name`` or ``name(p1,...)`` into a builtin, or return None if it is not one."""
    m = _SPEC_RE.match(text)
    if not m or m.group(1).replace("_", "-") not in BUILTINS:
        return None
    raw = [p.strip() for p in m.group(2).split(",")] if m.group(2) else []
    name = m.group(1).replace("_", "-")
    if name == "g-max":
        # the order name may itself contain a comma (two-key:a,b)
        params = [",".join(raw)] if raw else []
    else:
        try:
            params = [float(p) for p in raw]
        except ValueError:
            return None
    return builtin(name, params, arity)


def resolve_function(text: str, arity: int) -> IVFunction:
    """Turn a command-line ``--function`` value into an IVFunction (builtin first, then expression)."""
    f = parse_builtin_spec(text, arity)
    if f is not None:
        return f
    from .dsl import parse

    return parse(text, arity)


def describe(F: IVFunction) -> str:
    if isinstance(F, Builtin):
        return F.describe()
    return F.name

"""Command-line front end.

    ivmono check --function mean --arity 2 --order lex-lower --property weak-inc
    ivmono verify-paper --grid-step 0.1 --json suite.json
    ivmono orders validate --order xu-yager

Exit codes: ``check`` returns 0 for a verified or vacuous result, 1 for a
counterexample and 2 for usage or contract errors.  ``verify-paper`` and
``orders validate`` return 0 on pass and 1 on failure.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict, dataclass
from typing import List, Optional, Sequence, Tuple

from . import __version__
from .checks import (CheckResult, DegenerateVec, RealPairs, SamplingConfig, Status, check_directional_adm,
                     check_directional_km, check_g_weak, check_increasing, check_weak_adm, check_weak_km)
from .errors import GContractError, IntervalError, RangeError
from .functions import Builtin, describe, resolve_function
from .interval import format_interval
from .orders import get_order, is_admissible
from .suite import IMPLICATIONS, run_suite

PROPERTIES = ("increasing", "decreasing", "weak-inc", "weak-dec", "dir-inc", "dir-dec",
              "g-weak-inc", "g-weak-dec")

DEFAULT_SEED = 0xC0FFEE


@dataclass
class Report:
    version: str
    command: List[str]
    function: str
    order: str
    property: str
    status: str
    witness: Optional[dict]
    points_checked: int
    comparisons_failed: int
    shifts_skipped: int
    config: dict
    timing_ms: float
    direction: Optional[str] = None
    g: Optional[str] = None

    @classmethod
    def from_result(cls, result: CheckResult, command, function, prop, timing_ms,
                    direction=None, g=None) -> Report:
        return cls(
            version=__version__,
            command=list(command),
            function=function,
            order=result.order,
            property=prop,
            status=result.status.value,
            witness=result.witness.to_dict() if result.witness else None,
            points_checked=result.points_checked,
            comparisons_failed=result.comparisons_failed,
            shifts_skipped=result.shifts_skipped,
            config=result.config.to_dict(),
            timing_ms=round(timing_ms, 3),
            direction=direction,
            g=g,
        )

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> Report:
        return cls(**d)


def dumps(doc) -> str:
    """Canonical JSON text used for every report written by the CLI."""
    if hasattr(doc, "to_dict"):
        doc = doc.to_dict()
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def mask_timing(doc):
    """Copy of a report document with every ``timing_ms`` field removed."""
    if hasattr(doc, "to_dict"):
        doc = doc.to_dict()
    if isinstance(doc, dict):
        return {k: mask_timing(v) for k, v in doc.items() if k != "timing_ms"}
    if isinstance(doc, list):
        return [mask_timing(v) for v in doc]
    return doc


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


class UsageError(Exception):
    pass


def _sampling_args(p, shifts=True):
    p.add_argument("--grid-step", type=float, default=0.1, help="endpoint grid pitch (must divide 1)")
    p.add_argument("--random", type=int, default=0, help="number of extra random sample points")
    if shifts:
        p.add_argument("--shifts", type=int, default=8, help="shift sizes tried per sample point")
    p.add_argument("--seed", type=lambda s: int(s, 0), default=DEFAULT_SEED)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ivmono", description="Monotonicity checks for interval-valued functions.")
    parser.add_argument("--version", action="version", version=f"ivmono {__version__}")
    sub = parser.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    c = sub.add_parser("check", help="check one function against one monotonicity notion")
    c.add_argument("--function", required=True, help="builtin name (e.g. mean, wmean(0.3,0.7)) or expression")
    c.add_argument("--arity", type=int, required=True)
    c.add_argument("--order", required=True, help="km, lex-lower, lex-upper, xu-yager or two-key:<k1>,<k2>")
    c.add_argument("--property", required=True, choices=PROPERTIES)
    d = c.add_mutually_exclusive_group()
    d.add_argument("--direction", help="real pairs a1,b1;a2,b2;...")
    d.add_argument("--direction-deg", help="degenerate components v1,v2,...")
    c.add_argument("--g", help="G-function for g-weak properties (builtin or expression of arity 2)")
    _sampling_args(c)
    c.add_argument("--eps-cmp", type=float, default=1e-9)
    c.add_argument("--degenerate-shifts", action="store_true")
    c.add_argument("--exclude-zero-lambda", action="store_true")
    c.add_argument("--json", metavar="PATH")

    v = sub.add_parser("verify-paper", help="run the proposition instance suite")
    _sampling_args(v)
    v.add_argument("--json", metavar="PATH")

    o = sub.add_parser("orders", help="order utilities")
    osub = o.add_subparsers(dest="orders_cmd", required=True, parser_class=_Parser)
    ov = osub.add_parser("validate", help="empirically check that an order is admissible")
    ov.add_argument("--order", required=True)
    _sampling_args(ov, shifts=False)
    ov.add_argument("--json", metavar="PATH")
    return parser


def _pairs(text: str) -> Tuple[Tuple[float, float], ...]:
    try:
        out = []
        for chunk in text.split(";"):
            a, b = chunk.split(",")
            out.append((float(a), float(b)))
        return tuple(out)
    except ValueError:
        raise UsageError(f"--direction: expected 'a1,b1;a2,b2;...', got {text!r}") from None


def _values(text: str) -> Tuple[float, ...]:
    try:
        return tuple(float(v) for v in text.split(","))
    except ValueError:
        raise UsageError(f"--direction-deg: expected 'v1,v2,...', got {text!r}") from None


_CONFIG_FLAGS = {"grid_step": "--grid-step", "random_count": "--random", "shift_count": "--shifts",
                 "eps_cmp": "--eps-cmp"}


def _config(args, **extra) -> SamplingConfig:
    try:
        return SamplingConfig(grid_step=args.grid_step, random_count=args.random,
                              shift_count=getattr(args, "shifts", 8), seed=args.seed, **extra)
    except ValueError as exc:
        field_name = str(exc).split()[0]
        raise UsageError(f"{_CONFIG_FLAGS.get(field_name, 'sampling options')}: {exc}") from None


def _attach_values(argv: Sequence[str]) -> List[str]:
    """Glue direction values to their flag so argparse accepts a leading minus ("-1,1")."""
    out = list(argv)
    for i, tok in enumerate(out[:-1]):
        if tok in ("--direction", "--direction-deg") and out[i + 1].startswith("-"):
            out[i:i + 2] = [f"{tok}={out[i + 1]}", ""]
    return [t for t in out if t != ""]


def _write(path: Optional[str], doc):
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(dumps(doc))


def _dispatch_check(args, F, order, cfg):
    prop = args.property
    sense = "dec" if prop.endswith("dec") or prop == "decreasing" else "inc"
    direction_text = None
    g_text = None

    if prop in ("increasing", "decreasing"):
        return check_increasing(F, order, cfg, sense), None, None

    if prop.startswith("weak"):
        if not order.is_total:
            pair = (1.0, 1.0)
            if args.direction:
                pairs = _pairs(args.direction)
                if len(pairs) != 1:
                    raise UsageError("--direction: weak-km takes a single pair a,b")
                pair = pairs[0]
            elif args.direction_deg:
                raise UsageError("--direction-deg: weak properties under km take --direction a,b")
            return check_weak_km(F, pair, cfg, sense), f"{pair[0]!r},{pair[1]!r}", None
        if args.direction or args.direction_deg:
            raise UsageError("--direction: weak properties under an admissible order use sampled interval shifts")
        return check_weak_adm(F, order, cfg, sense), None, None

    if prop.startswith("dir"):
        if not (args.direction or args.direction_deg):
            raise UsageError("--direction: dir-inc/dir-dec need --direction or --direction-deg")
        if args.direction:
            pairs = _pairs(args.direction)
        else:
            pairs = tuple((v, v) for v in _values(args.direction_deg))
        if len(pairs) != F.arity:
            raise UsageError(f"--direction: {len(pairs)} components for arity {F.arity}")
        if not order.is_total:
            direction = RealPairs(pairs)
            return check_directional_km(F, direction, cfg, sense), str(direction), None
        if any(a != b for a, b in pairs):
            raise UsageError("--direction: admissible orders need degenerate components (a == b); "
                             "use --direction-deg")
        direction = DegenerateVec(tuple(a for a, _ in pairs))
        return check_directional_adm(F, direction, order, cfg, sense), str(direction), None

    # g-weak
    if not args.g:
        raise UsageError("--g: g-weak properties need a G-function")
    G = resolve_function(args.g, 2)
    if isinstance(G, Builtin) and G.name == "g-max" and G.params[0] != order:
        raise UsageError(f"--g: {describe(G)} must use the checked order {order.name}")
    g_text = describe(G)
    return check_g_weak(F, G, order, cfg, sense), direction_text, g_text


def run_check(argv: Sequence[str]) -> Tuple[int, Optional[Report]]:
    parser = build_parser()
    args = parser.parse_args(["check", *_attach_values(argv)])
    try:
        order = get_order(args.order)
    except ValueError as exc:
        raise UsageError(f"--order: {exc}") from None
    cfg = _config(args, eps_cmp=args.eps_cmp, degenerate_shifts=args.degenerate_shifts,
                  exclude_zero_lambda=args.exclude_zero_lambda)
    try:
        F = resolve_function(args.function, args.arity)
    except IntervalError as exc:
        raise UsageError(f"--function: {exc}") from None

    start = time.perf_counter()
    try:
        result, direction, g = _dispatch_check(args, F, order, cfg)
    except GContractError as exc:
        lines = [f"contract error: {exc}"]
        for lam, y, val in exc.violations[:5]:
            lines.append(f"  G({format_interval(lam)}, {format_interval(y)}) = {format_interval(val)}")
        print("\n".join(lines), file=sys.stderr)
        return 2, None
    except RangeError as exc:
        print(f"range error: {exc}", file=sys.stderr)
        return 2, None
    except IntervalError as exc:
        raise UsageError(str(exc)) from None
    elapsed = (time.perf_counter() - start) * 1000

    report = Report.from_result(result, ["check", *argv], describe(F), args.property, elapsed,
                                direction=direction, g=g)
    sys.stdout.write(dumps(report))
    _write(args.json, report)
    return (1 if result.status is Status.COUNTEREXAMPLE else 0), report


def _entry_dict(entry) -> dict:
    r = entry.result
    return {
        "function": entry.function,
        "order": entry.order,
        "property": entry.property,
        "role": entry.role,
        "g": entry.g,
        "direction": entry.direction,
        "status": r.status.value,
        "witness": r.witness.to_dict() if r.witness else None,
        "points_checked": r.points_checked,
        "comparisons_failed": r.comparisons_failed,
        "shifts_skipped": r.shifts_skipped,
    }


def run_paper_suite(argv: Sequence[str], implications: Sequence = IMPLICATIONS) -> Tuple[int, dict]:
    """Run the proposition suite; ``implications`` can be replaced to test the suite itself."""
    args = build_parser().parse_args(["verify-paper", *argv])
    cfg = _config(args)
    start = time.perf_counter()
    outcomes = run_suite(cfg, implications)
    elapsed = (time.perf_counter() - start) * 1000

    for o in outcomes:
        claims = sum(e.role == "claim" for e in o.entries)
        verdict = "PASS" if o.passed else "FAIL"
        print(f"{verdict}  {o.name}: {o.statement} ({claims} claim checks, {len(o.failures)} failed)")
        for e in o.failures:
            w = e.result.witness
            detail = f" witness base={[format_interval(x) for x in w.base]}" if w else ""
            print(f"      {e.function} under {e.order}: {e.result.status.value}{detail}")
    passed = all(o.passed for o in outcomes)
    doc = {
        "version": __version__,
        "command": ["verify-paper", *argv],
        "config": cfg.to_dict(),
        "passed": passed,
        "propositions": [
            {"name": o.name, "statement": o.statement, "passed": o.passed,
             "checks": [_entry_dict(e) for e in o.entries]}
            for o in outcomes
        ],
        "timing_ms": round(elapsed, 3),
    }
    _write(args.json, doc)
    return (0 if passed else 1), doc


def run_order_validate(argv: Sequence[str]) -> Tuple[int, dict]:
    args = build_parser().parse_args(["orders", "validate", *argv])
    try:
        order = get_order(args.order)
    except ValueError as exc:
        raise UsageError(f"--order: {exc}") from None
    try:
        report = is_admissible(order, args.grid_step, args.random, args.seed)
    except ValueError as exc:
        raise UsageError(f"--grid-step: {exc}") from None
    doc = {"version": __version__, "command": ["orders", "validate", *argv], **report.to_dict()}
    sys.stdout.write(dumps(doc))
    _write(args.json, doc)
    return (0 if report.passed else 1), doc


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        if argv and argv[0] == "check":
            return run_check(argv[1:])[0]
        if argv and argv[0] == "verify-paper":
            return run_paper_suite(argv[1:])[0]
        if argv[:2] == ["orders", "validate"]:
            return run_order_validate(argv[2:])[0]
        build_parser().parse_args(argv)
        return 2
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return 2
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)


if __name__ == "__main__":
    sys.exit(main())

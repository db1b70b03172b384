"""Instance checks of the three structural results on the builtin functions.

* ``weak-implies-unit-direction``: a function that is weakly increasing
  (degenerate shifts) is also increasing along the all-ones direction.
* ``implications-directional``: the interval implications are increasing
  along the direction (-1, 1) under every admissible order.
* ``increasing-implies-g-weak``: an increasing function is G-weakly
  increasing for every G with G(X, Y) >= Y, under the same order.

Each proposition passes when no checked instance contradicts it.  Checks on
functions the statement does not cover are kept as ``recorded`` entries and
never affect the outcome.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

from .checks import (CheckResult, DegenerateVec, SamplingConfig, check_directional_adm,
                     check_g_weak, check_increasing, check_weak_adm)
from .functions import IVFunction, builtin, describe, resolve_function
from .orders import ADMISSIBLE_ORDER_NAMES, get_order

WEAK_SUITE = ("mean", "wmean(0.25,0.75)", "prod", "min-km", "max-km",
              "luk-impl", "rb-impl", "trunc-diff", "g-probsum")
IMPLICATIONS = ("luk-impl", "rb-impl")
G_WEAK_SUITE = ("mean", "wmean(0.25,0.75)", "trunc-diff")


@dataclass
class SuiteEntry:
    function: str
    order: str
    property: str
    role: str  # "premise", "claim" or "recorded"
    result: CheckResult
    g: Optional[str] = None
    direction: Optional[str] = None


@dataclass
class PropositionOutcome:
    name: str
    statement: str
    entries: List[SuiteEntry] = field(default_factory=list)
    failures: List[SuiteEntry] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


def _fn(spec):
    return spec if isinstance(spec, IVFunction) else resolve_function(spec, 2)


def weak_implies_unit_direction(cfg: SamplingConfig, functions: Sequence = WEAK_SUITE,
                                orders: Sequence[str] = ADMISSIBLE_ORDER_NAMES) -> PropositionOutcome:
    out = PropositionOutcome("weak-implies-unit-direction",
                             "weakly increasing implies increasing along (1, 1)")
    weak_cfg = dataclasses.replace(cfg, degenerate_shifts=True)
    ones = DegenerateVec((1.0, 1.0))
    for spec in functions:
        F = _fn(spec)
        for oname in orders:
            order = get_order(oname)
            weak = check_weak_adm(F, order, weak_cfg, "inc")
            out.entries.append(SuiteEntry(describe(F), oname, "weak-inc", "premise", weak))
            if not weak.verified:
                continue
            directional = check_directional_adm(F, ones, order, cfg, "inc")
            entry = SuiteEntry(describe(F), oname, "dir-inc", "claim", directional, direction=str(ones))
            out.entries.append(entry)
            if directional.status.value == "Counterexample":
                out.failures.append(entry)
    return out


def implications_directional(cfg: SamplingConfig, implications: Sequence = IMPLICATIONS,
                             orders: Sequence[str] = ADMISSIBLE_ORDER_NAMES) -> PropositionOutcome:
    out = PropositionOutcome("implications-directional",
                             "every interval implication is increasing along (-1, 1)")
    direction = DegenerateVec((-1.0, 1.0))
    for spec in implications:
        F = _fn(spec)
        for oname in orders:
            r = check_directional_adm(F, direction, get_order(oname), cfg, "inc")
            entry = SuiteEntry(describe(F), oname, "dir-inc", "claim", r, direction=str(direction))
            out.entries.append(entry)
            if not r.verified:
                out.failures.append(entry)
    return out


def increasing_implies_g_weak(cfg: SamplingConfig, functions: Sequence = G_WEAK_SUITE,
                              orders: Sequence[str] = ADMISSIBLE_ORDER_NAMES,
                              senses: Sequence[str] = ("inc",)) -> PropositionOutcome:
    """For each order, functions found increasing are checked for G-weak increase.

    The G-functions are ``g-probsum`` and the order maximum ``g-max(order)``.
    Functions that are not increasing still get their G-weak verdicts
    recorded, without any claim attached.
    """
    out = PropositionOutcome("increasing-implies-g-weak",
                             "increasing implies G-weakly increasing for every G with G(X, Y) >= Y")
    for spec in functions:
        F = _fn(spec)
        for oname in orders:
            order = get_order(oname)
            gs = [builtin("g-probsum"), builtin("g-max", [order])]
            for sense in senses:
                mono = check_increasing(F, order, cfg, sense)
                label = "increasing" if sense == "inc" else "decreasing"
                out.entries.append(SuiteEntry(describe(F), oname, label, "premise", mono))
                role = "claim" if mono.verified else "recorded"
                for G in gs:
                    r = check_g_weak(F, G, order, cfg, sense)
                    entry = SuiteEntry(describe(F), oname, f"g-weak-{sense}", role, r, g=describe(G))
                    out.entries.append(entry)
                    if role == "claim" and not r.verified:
                        out.failures.append(entry)
    return out


def run_suite(cfg: SamplingConfig, implications: Sequence = IMPLICATIONS) -> List[PropositionOutcome]:
    return [
        weak_implies_unit_direction(cfg),
        implications_directional(cfg, implications),
        increasing_implies_g_weak(cfg),
    ]

import itertools

import pytest
from hypothesis import given, settings, strategies as st

from ivmono.checks import (DegenerateVec, RealPairs, SamplingConfig, Status, check_directional_adm,
                           check_directional_km, check_g_weak, check_g_weak_scalar, check_increasing,
                           check_weak_adm, check_weak_km, feasible_max_shift, replay, sample_points)
from ivmono.errors import ArityError, DirectionError, GContractError
from ivmono.functions import IVFunction, builtin, probabilistic_sum, scalar_lift, truncated_difference
from ivmono.interval import ONE, ZERO, Interval as I, in_unit_box
from ivmono.orders import GREATER, INCOMPARABLE, KM, LESS, get_order, unit_grid

Q = SamplingConfig(grid_step=0.25)
LEX = get_order("lex-lower")
XY = get_order("xu-yager")


# feasibility

@pytest.mark.parametrize("x, direction, expected", [
    ((I(0.2, 0.3), I(0.5, 0.9)), DegenerateVec((1, 1)), 0.1),
    ((I(0.3, 0.6),), RealPairs(((-1, 1),)), 0.3),
    ((I(0.0, 0.4),), RealPairs(((1, -1),)), 0.2),
    ((I(1, 1),), DegenerateVec((1,)), 0.0),
    ((I(0.2, 0.2),), RealPairs(((1, -1),)), 0.0),
])
def test_feasible_max_shift(x, direction, expected):
    assert feasible_max_shift(x, direction) == pytest.approx(expected)


dyadic = st.integers(0, 16).map(lambda k: k / 16)


@st.composite
def unit_intervals(draw):
    a, b = draw(dyadic), draw(dyadic)
    return I(min(a, b), max(a, b))


@settings(max_examples=200)
@given(st.lists(unit_intervals(), min_size=1, max_size=3).flatmap(
    lambda xs: st.tuples(st.just(tuple(xs)),
                         st.lists(st.tuples(st.sampled_from([-1, 0, 1, 2]), st.sampled_from([-1, 0, 1, 2])),
                                  min_size=len(xs), max_size=len(xs)))))
def test_feasible_shift_is_tight(case):
    xs, pairs = case
    if all(p == (0, 0) for p in pairs):
        return
    k = feasible_max_shift(xs, RealPairs(pairs))

    def inside(c):
        return all(-1e-12 <= x.lo + c * a <= x.hi + c * b + 1e-12 and x.hi + c * b <= 1 + 1e-12
                   for x, (a, b) in zip(xs, pairs))

    if k > 0:
        assert inside(k) and inside(k / 2)
    assert not inside(k + 1 / 16)


def test_direction_construction():
    with pytest.raises(DirectionError):
        RealPairs(((0, 0), (0, 0)))
    with pytest.raises(DirectionError):
        DegenerateVec((0, 0))
    with pytest.raises(DirectionError):
        DegenerateVec((I(0, 1), I(1, 1)))
    assert DegenerateVec((-1, 1)).pairs == ((-1.0, -1.0), (1.0, 1.0))
    with pytest.raises(ArityError):
        check_directional_km(builtin("mean"), RealPairs(((1, 1),)), Q)


def test_config_validation():
    with pytest.raises(ValueError):
        SamplingConfig(grid_step=0.3)
    with pytest.raises(ValueError):
        SamplingConfig(shift_count=0)
    with pytest.raises(ValueError):
        SamplingConfig(eps_cmp=-1)
    cfg = SamplingConfig(grid_step=0.25, random_count=5)
    assert len(sample_points(2, cfg)) == 15 ** 2 + 5


# increasing

def test_increasing_examples():
    r = check_increasing(builtin("mean"), KM, Q)
    assert r.status is Status.VERIFIED and r.witness is None and r.comparisons_failed == 0
    r = check_increasing(builtin("trunc-diff"), KM, Q)
    assert r.status is Status.COUNTEREXAMPLE
    w = r.witness
    assert w.base[0] == w.shifted[0] and w.shifted[1] != w.base[1]  # raised in argument 2
    assert w.relation in (LESS, INCOMPARABLE)
    r = check_increasing(builtin("trunc-diff"), KM, Q, sense="dec")
    assert r.status is Status.COUNTEREXAMPLE  # increasing in argument 1


def test_increasing_hand_witness():
    # fix X = [0.5,0.5], raise Y from [0.1,0.1] to [0.2,0.2]: output drops 0.4 -> 0.3
    pts = [(I(0.5, 0.5), I(0.1, 0.1)), (I(0.5, 0.5), I(0.2, 0.2))]
    r = check_increasing(builtin("trunc-diff"), KM, Q, points=pts)
    assert r.status is Status.COUNTEREXAMPLE
    assert r.witness.base == pts[0] and r.witness.shifted == pts[1]
    assert r.witness.before.lo == pytest.approx(0.4) and r.witness.after.lo == pytest.approx(0.3)


def test_single_point_is_reflexive_only():
    r = check_increasing(builtin("trunc-diff"), LEX, Q, points=[(I(0.3, 0.6), I(0.3, 0.6))])
    assert r.status is Status.VERIFIED
    assert r.points_checked == 1


def test_increasing_under_admissible_orders():
    # prod is KM-increasing, but not increasing under lex-lower at grid resolution
    assert check_increasing(builtin("mean"), XY, Q).verified
    assert check_increasing(builtin("wmean", [0.25, 0.75]), LEX, Q).verified
    # [0,1] < [0.25,0.25] in lex-lower, yet max-km against [0.5,0.5] drops from [0.5,1] to [0.5,0.5]
    r = check_increasing(builtin("max-km"), LEX, Q)
    assert r.failed and r.witness.relation is LESS
    r = check_increasing(builtin("prod"), LEX, Q)
    assert r.failed and replay(builtin("prod"), LEX, r)


def test_random_points_are_used():
    cfg = SamplingConfig(grid_step=0.5, random_count=20, shift_count=3, seed=3)
    r = check_increasing(builtin("mean"), KM, cfg)
    base = check_increasing(builtin("mean"), KM, SamplingConfig(grid_step=0.5))
    assert r.verified and r.points_checked > base.points_checked


# directional and weak, KM

def test_directional_km_examples():
    mean, luk = builtin("mean"), builtin("luk-impl")
    assert check_directional_km(mean, RealPairs(((1, 1), (1, 1))), Q).verified
    assert check_directional_km(luk, RealPairs(((-1, -1), (1, 1))), Q).verified
    r = check_directional_km(mean, RealPairs(((1, -1), (1, -1))), Q)
    assert r.status in (Status.COUNTEREXAMPLE, Status.VACUOUS)
    assert r.failed and r.witness.relation is INCOMPARABLE


def test_directional_km_vacuous():
    r = check_directional_km(builtin("mean"), RealPairs(((1, 1), (1, 1))), Q, points=[(ONE, ONE), (ZERO, ONE)])
    assert r.status is Status.VACUOUS and r.points_checked == 0 and r.shifts_skipped == 2


def test_weak_km_examples():
    assert check_weak_km(builtin("trunc-diff"), (1, 1), Q).verified
    assert check_weak_km(builtin("mean"), (1, 1), Q).verified
    with pytest.raises(DirectionError):
        check_weak_km(builtin("mean"), (0, 0), Q)
    r = check_weak_km(builtin("mean"), (1, 1), Q)
    assert r.notion == "weak-km"


def test_shift_count_includes_maximal_shift():
    seen = []

    class Spy(IVFunction):
        name, arity = "spy", 1

        def evaluate(self, args):
            seen.append(args[0])
            return args[0]

    cfg = SamplingConfig(grid_step=0.25, shift_count=4)
    check_directional_km(Spy(), RealPairs(((1, 1),)), cfg, points=[(I(0.25, 0.5),)])
    assert seen[1:] == [I(0.375, 0.625), I(0.5, 0.75), I(0.625, 0.875), I(0.75, 1.0)]


# admissible orders

def test_weak_adm_examples():
    assert check_weak_adm(builtin("mean"), LEX, Q).verified
    r = check_weak_adm(builtin("trunc-diff"), LEX, Q)
    assert r.failed and replay(builtin("trunc-diff"), LEX, r)
    # the hand-checkable witness of the same kind
    pts = [(I(0.3, 0.3), I(0.1, 0.1))]
    r = check_weak_adm(builtin("trunc-diff"), LEX, SamplingConfig(grid_step=0.1), points=pts)
    assert r.failed
    w = r.witness
    assert w.before.lo == pytest.approx(0.2) and w.after.lo < w.before.lo


def test_weak_adm_degenerate_regime_differs():
    # uniform degenerate shifts leave trunc-diff unchanged, wide ones do not
    cfg = SamplingConfig(grid_step=0.25, degenerate_shifts=True)
    assert check_weak_adm(builtin("trunc-diff"), LEX, cfg).verified
    assert check_weak_adm(builtin("trunc-diff"), LEX, Q).failed


def test_weak_adm_vacuous():
    r = check_weak_adm(builtin("mean"), XY, Q, points=[(ONE, I(0.5, 1.0))])
    assert r.status is Status.VACUOUS
    assert r.shifts_skipped == len(unit_grid(0.25)) - 1


def test_directional_adm_examples():
    assert check_directional_adm(builtin("luk-impl"), DegenerateVec((-1, 1)), LEX, Q).verified
    assert check_directional_adm(builtin("mean"), DegenerateVec((1, 1)), XY, Q).verified
    r = check_directional_adm(builtin("mean"), DegenerateVec((1, 1)), XY, Q, points=[(ONE, ONE)])
    assert r.status is Status.VACUOUS


def test_directional_adm_dual_sense():
    # luk-impl falls as its first argument rises
    d = DegenerateVec((1, 0))
    assert check_directional_adm(builtin("luk-impl"), d, LEX, Q, sense="dec").verified
    assert check_directional_adm(builtin("luk-impl"), d, LEX, Q, sense="inc").failed


def test_sense_validation():
    with pytest.raises(ValueError):
        check_increasing(builtin("mean"), KM, Q, sense="up")


# G-weak

def test_g_weak_examples():
    mean = builtin("mean")
    assert check_g_weak(mean, builtin("g-probsum"), LEX, Q).verified
    assert check_g_weak(mean, builtin("g-max", ["lex-lower"]), LEX, Q).verified


class FirstProjection(IVFunction):
    name, arity = "first", 2

    def evaluate(self, args):
        return args[0]


def test_g_contract_error():
    with pytest.raises(GContractError) as info:
        check_g_weak(builtin("mean"), FirstProjection(), LEX, Q)
    lams_ys = {(lam, y) for lam, y, _ in info.value.violations}
    assert (ZERO, ONE) in lams_ys


def test_g_max_order_mismatch_breaks_contract():
    with pytest.raises(GContractError):
        check_g_weak(builtin("mean"), builtin("g-max", ["lex-upper"]), LEX, Q)


def test_g_weak_finds_counterexample():
    r = check_g_weak(builtin("trunc-diff"), builtin("g-probsum"), LEX, Q)
    assert r.failed and replay(builtin("trunc-diff"), LEX, r)


def test_scalar_g_weak():
    mean = lambda x, y: (x + y) / 2  # noqa: E731
    cfg = SamplingConfig(grid_step=0.1)
    assert check_g_weak_scalar(mean, probabilistic_sum, 2, cfg).verified
    with pytest.raises(GContractError):
        check_g_weak_scalar(mean, lambda lam, x: lam * x, 2, cfg)
    assert check_g_weak_scalar(truncated_difference, probabilistic_sum, 2, cfg).failed


@pytest.mark.parametrize("f, name", [
    (lambda x, y: (x + y) / 2, "mean"),
    (lambda x, y: x * y, "prod"),
    (truncated_difference, "trunc-diff"),
    (lambda x, y: min(1.0, 1.0 - (x - y)), "luk-impl"),
])
def test_degenerate_consistency(f, name):
    cfg = SamplingConfig(grid_step=0.25, degenerate_shifts=True, exclude_zero_lambda=True)
    grid = [k / 4 for k in range(5)]
    pts = [(I(a, a), I(b, b)) for a, b in itertools.product(grid, repeat=2)]
    G = scalar_lift(probabilistic_sum, 2, (1, 1))
    interval = check_g_weak(builtin(name), G, KM, cfg, points=pts)
    scalar = check_g_weak_scalar(f, probabilistic_sum, 2, cfg)
    assert interval.status is scalar.status
    assert interval.points_checked == scalar.points_checked
    if scalar.witness is not None:
        iw, sw = interval.witness, scalar.witness
        assert iw.base == sw.base and iw.shift == sw.shift
        assert iw.after.lo == pytest.approx(sw.after.lo)


# determinism and witness replay

def test_determinism():
    cfg = SamplingConfig(grid_step=0.25, random_count=40, seed=11)
    for run in (lambda: check_increasing(builtin("prod"), XY, cfg),
                lambda: check_weak_adm(builtin("trunc-diff"), LEX, cfg),
                lambda: check_directional_km(builtin("mean"), RealPairs(((1, -1), (1, -1))), cfg)):
        a, b = run(), run()
        assert a == b
        assert a.witness is None or a.witness.to_dict() == b.witness.to_dict()


def test_seed_changes_random_points_only():
    a = sample_points(2, SamplingConfig(grid_step=0.5, random_count=4, seed=1))
    b = sample_points(2, SamplingConfig(grid_step=0.5, random_count=4, seed=2))
    assert a[:9] == b[:9] and a[9:] != b[9:]
    assert all(in_unit_box(p) for p in a)


def test_replay_rejects_tampered_witness():
    r = check_weak_adm(builtin("trunc-diff"), LEX, Q)
    assert replay(builtin("trunc-diff"), LEX, r)
    assert not replay(builtin("mean"), LEX, r)
    r2 = check_weak_adm(builtin("mean"), LEX, Q)
    assert not replay(builtin("mean"), LEX, r2)


def test_eps_cmp_absorbs_noise():
    class Noisy(IVFunction):
        name, arity = "noisy", 1

        def evaluate(self, args):
            x = args[0]
            return I(max(0.0, x.lo - 1e-11 * x.hi), x.hi)

    assert check_increasing(Noisy(), KM, Q).verified
    assert check_weak_adm(Noisy(), LEX, Q).verified
    strict = SamplingConfig(grid_step=0.25, eps_cmp=0.0)
    r = check_directional_km(Noisy(), RealPairs(((0, 1),)), strict)
    assert r.failed and r.witness.relation in (INCOMPARABLE, LESS)
    assert GREATER is not r.witness.relation

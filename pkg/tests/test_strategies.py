import math
from fractions import Fraction

import pytest
from hypothesis import given, settings

import tincell as tc
from tincell.strategies import SILENT

from conftest import mknet, nets_with_strategy


def id_order(net):
    return tc.DecodingOrder.identity(net.L)


def powers(net, rows):
    return tc.PowerAllocation(tuple(tuple(
        None if x is None else Fraction(str(x)) for x in row) for row in rows))


# --- effective levels -------------------------------------------------------


def test_gamma_ibc_single_user():
    net = mknet([[[1.0]]])
    g = tc.gamma_ibc(net, id_order(net), powers(net, [[0]]))
    assert g == (0,)


def test_gamma_ibc_two_user_bc(bc2):
    g = tc.gamma_ibc(bc2, id_order(bc2), powers(bc2, [[0, -0.6]]))
    assert g == (0, 0)


def test_gamma_ibc_net_a_matches_bound_identity(net_a):
    order, power = id_order(net_a), powers(net_a, [[0, 0], [0]])
    g = tc.gamma_ibc(net_a, order, power)
    bounds = tc.gdof_bounds_ibc(net_a, order, power)
    users = net_a.users()
    for i, u in enumerate(users):
        expected = max(0, net_a.direct(u.cell, u.slot) + power.of(u.cell, u.slot) - g[i])
        assert bounds[i] == expected


def test_gamma_imac_single_cell_single_user():
    net = mknet([[[1.0]]])
    for r in ([0], [-0.7], [None]):
        assert tc.gamma_imac(net, id_order(net), powers(net, [r])) == (0,)


def test_gamma_imac_two_user(bc2):
    g = tc.gamma_imac(bc2, id_order(bc2), powers(bc2, [[0, 0]]))
    assert g == (0, Fraction(3, 5))


# --- GDoF bounds ------------------------------------------------------------


def test_bounds_ibc_two_user_bc(bc2):
    d = tc.gdof_bounds_ibc(bc2, id_order(bc2), powers(bc2, [[0, -0.6]]))
    assert d == (Fraction(3, 5), Fraction(2, 5))
    assert sum(d) == 1  # degraded-BC sum exponent


def test_bounds_ibc_point_to_point():
    net = mknet([[[1.0]]])
    assert tc.gdof_bounds_ibc(net, id_order(net), powers(net, [[0]])) == (1,)


def test_bounds_all_silent(net_a):
    silent = tc.PowerAllocation.all_silent(net_a.L)
    assert tc.gdof_bounds_ibc(net_a, id_order(net_a), silent) == (0, 0, 0)
    assert tc.gdof_bounds_imac(net_a, id_order(net_a), silent) == (0, 0, 0)


def test_bounds_imac_two_user(bc2):
    d = tc.gdof_bounds_imac(bc2, id_order(bc2), powers(bc2, [[0, 0]]))
    assert d == (Fraction(3, 5), Fraction(2, 5))


def test_bounds_imac_point_to_point():
    net = mknet([[[1.0]]])
    assert tc.gdof_bounds_imac(net, id_order(net), powers(net, [[0]])) == (1,)


def test_dimension_mismatch_raises(net_a, bc2):
    with pytest.raises(tc.DimensionMismatchError):
        tc.gdof_bounds_ibc(net_a, id_order(bc2), powers(bc2, [[0, 0]]))


# --- dual-route identity: direct formula vs effective-level form -------------


@given(nets_with_strategy("ibc"))
@settings(max_examples=120, deadline=None)
def test_bounds_ibc_equal_gamma_route(net_strategy):
    net, strategy = net_strategy
    order, power = strategy.order, strategy.power
    bounds = tc.gdof_bounds_ibc(net, order, power)
    gamma = tc.gamma_ibc(net, order, power)
    for i, u in enumerate(net.users()):
        r = power.of(u.cell, u.slot)
        if r is SILENT:
            assert bounds[i] == 0
        else:
            assert bounds[i] == max(0, net.direct(u.cell, u.slot) + r - gamma[i])


@given(nets_with_strategy("imac"))
@settings(max_examples=120, deadline=None)
def test_bounds_imac_equal_gamma_route(net_strategy):
    net, strategy = net_strategy
    order, power = strategy.order, strategy.power
    bounds = tc.gdof_bounds_imac(net, order, power)
    gamma = tc.gamma_imac(net, order, power)
    for i, u in enumerate(net.users()):
        r = power.of(u.cell, u.slot)
        if r is SILENT:
            assert bounds[i] == 0
        else:
            assert bounds[i] == max(0, net.direct(u.cell, u.slot) + r - gamma[i])


@given(nets_with_strategy("ibc"))
@settings(max_examples=120, deadline=None)
def test_gammas_nonnegative(net_strategy):
    net, strategy = net_strategy
    assert all(g >= 0 for g in tc.gamma_ibc(net, strategy.order, strategy.power))
    assert all(g >= 0 for g in tc.gamma_imac(net, strategy.order, strategy.power))


@given(nets_with_strategy("ibc", min_K=2))
@settings(max_examples=80, deadline=None)
def test_lowering_interferer_never_hurts_other_cells(net_strategy):
    net, strategy = net_strategy
    order, power = strategy.order, strategy.power
    before = tc.gdof_bounds_ibc(net, order, power)
    # lower one cell-1 user's exponent, then all the way to SILENT
    target = net.L[0] - 1
    for new_value in (None if power.r[0][target] is SILENT else power.r[0][target] - 1, SILENT):
        rows = list(power.r)
        row = list(rows[0])
        row[target] = new_value
        rows[0] = tuple(row)
        after = tc.gdof_bounds_ibc(net, order, tc.PowerAllocation(tuple(rows)))
        for i, u in enumerate(net.users()):
            if u.cell != 1:
                assert after[i] >= before[i]


# --- achievability ----------------------------------------------------------


def test_achievable_boundary_and_epsilon(bc2):
    strategy = tc.Strategy("ibc", id_order(bc2), powers(bc2, [[0, -0.6]]))
    bounds = tc.gdof_bounds(bc2, strategy)
    assert tc.achievable_with_strategy(bc2, strategy, bounds)
    bumped = (bounds[0] + Fraction(1, 1000), bounds[1])
    assert not tc.achievable_with_strategy(bc2, strategy, bumped)
    assert tc.achievable_with_strategy(bc2, strategy, (0, 0))


# --- finite SNR -------------------------------------------------------------


def test_sinr_rate_point_to_point():
    net = mknet([[[1.0]]])
    cfg = tc.FiniteSnrConfig(P=2.0**20)
    ((sinr, rate),) = tc.sinr_rates_ibc(net, id_order(net), powers(net, [[0]]), cfg)
    assert sinr == pytest.approx(2.0**20)
    assert rate == pytest.approx(math.log2(1 + 2.0**20))
    assert rate / 20.0 == pytest.approx(1.0, abs=1e-4)


def test_sinr_rate_silent_user(bc2):
    cfg = tc.FiniteSnrConfig(P=1e6)
    pairs = tc.sinr_rates_ibc(bc2, id_order(bc2), powers(bc2, [[0, None]]), cfg)
    assert pairs[1] == (0.0, 0.0)
    assert pairs[0][0] > 0


def test_rate_normalization_approaches_bounds(bc2):
    order, power = id_order(bc2), powers(bc2, [[0, -0.6]])
    bounds = [float(b) for b in tc.gdof_bounds_ibc(bc2, order, power)]
    P = 1e12
    pairs = tc.sinr_rates_ibc(bc2, order, power, tc.FiniteSnrConfig(P=P))
    for (sinr, rate), b in zip(pairs, bounds):
        assert abs(rate / math.log2(P) - b) < 0.05


def test_rate_gap_nonincreasing_on_net_a(net_a):
    order, power = id_order(net_a), powers(net_a, [[0, 0], [0]])
    bounds = [float(b) for b in tc.gdof_bounds_ibc(net_a, order, power)]
    prev = None
    for P in (1e6, 1e12, 1e20):
        pairs = tc.sinr_rates_ibc(net_a, order, power, tc.FiniteSnrConfig(P=P))
        gaps = [abs(rate / math.log2(P) - b) for (_, rate), b in zip(pairs, bounds)]
        if prev is not None:
            assert all(g <= p + 1e-12 for g, p in zip(gaps, prev))
        prev = gaps
    assert all(g < 0.05 for g in prev)


def test_finite_snr_requires_p_above_one():
    with pytest.raises(ValueError):
        tc.FiniteSnrConfig(P=1.0)


# --- strategy files ---------------------------------------------------------


def test_strategy_round_trip(net_a):
    text = '{"side": "ibc", "order": [[2, 1], [1]], "r": [[-0.5, 0], ["off"]]}'
    strategy = tc.parse_strategy(text, net_a)
    assert strategy.order.pi == ((2, 1), (1,))
    assert strategy.power.of(1, 1) == Fraction(-1, 2)
    assert strategy.power.of(2, 1) is SILENT
    doc = tc.strategy_to_dict(strategy)
    assert doc["r"][1] == ["off"]


def test_strategy_rejects_positive_exponent(net_a):
    with pytest.raises(tc.NetworkFormatError):
        tc.parse_strategy('{"side": "ibc", "order": [[1, 2], [1]], "r": [[0.5, 0], [0]]}', net_a)


def test_strategy_rejects_bad_order(net_a):
    with pytest.raises(tc.NetworkFormatError):
        tc.parse_strategy('{"side": "ibc", "order": [[1, 1], [1]], "r": [[0, 0], [0]]}', net_a)

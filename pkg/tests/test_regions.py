import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings

import tincell as tc
from tincell.regions import _all_suborders, _all_subnetworks

from conftest import mknet, nets


def full_region(net):
    s = tc.Subnetwork.full(net)
    return tc.polyhedral_region(net, tc.identity_suborder(s), s)


# --- cyclic sequences -------------------------------------------------------


def test_cyclic_sequences_three_cells():
    seqs = tc.cyclic_sequences([1, 2, 3])
    assert seqs == [
        (1,), (2,), (3,),
        (1, 2), (1, 3), (2, 3),
        (1, 2, 3), (1, 3, 2),
    ]


def test_cyclic_sequences_singleton():
    assert tc.cyclic_sequences([1]) == [(1,)]


def test_cyclic_sequences_count_four_cells():
    seqs = tc.cyclic_sequences([1, 2, 3, 4])
    assert len(seqs) == 4 + 6 + 8 + 6
    assert len(set(seqs)) == len(seqs)
    # canonical: smallest id first, so no rotated duplicates survive
    for s in seqs:
        assert s[0] == min(s)


def test_cyclic_sequences_match_count_formula():
    for n in range(1, 6):
        seqs = tc.cyclic_sequences(range(1, n + 1))
        expected = sum(math.comb(n, m) * math.factorial(m - 1) for m in range(1, n + 1))
        assert len(seqs) == expected


# --- region generation ------------------------------------------------------


def test_region_net_a_constraints(net_a):
    region = full_region(net_a)
    a, b, c = tc.UserId(1, 1), tc.UserId(1, 2), tc.UserId(2, 1)
    got = region.constraint_set()
    expected = {
        (frozenset({a}), Fraction(3, 5)),
        (frozenset({a, b}), Fraction(1)),
        (frozenset({c}), Fraction(1)),
        (frozenset({a, c}), Fraction(11, 10)),
        (frozenset({a, b, c}), Fraction(8, 5)),
    }
    assert got == expected
    assert region.zero == frozenset()


def test_region_no_cross_links_is_product():
    net = mknet([[[0.5, 0.0], [1.0, 0.0]], [[0.0, 0.8]]])
    region = full_region(net)
    by_users = {frozenset(c.users): c.bound for c in region.constraints}
    a, b, c = tc.UserId(1, 1), tc.UserId(1, 2), tc.UserId(2, 1)
    # cyclic bounds collapse to sums of single-cell bounds
    assert by_users[frozenset({a, c})] == Fraction(1, 2) + Fraction(4, 5)
    assert by_users[frozenset({a, b, c})] == Fraction(1) + Fraction(4, 5)


def test_region_single_user_subnetwork(net_a):
    s = tc.Subnetwork(((2,), ()))
    region = tc.polyhedral_region(net_a, {1: (2,)}, s)
    assert region.zero == frozenset({tc.UserId(1, 1), tc.UserId(2, 1)})
    assert region.constraint_set() == {(frozenset({tc.UserId(1, 2)}), Fraction(1))}


def test_region_rejects_non_bijective_order(net_a):
    s = tc.Subnetwork(((1, 2), (1,)))
    with pytest.raises(ValueError):
        tc.polyhedral_region(net_a, {1: (1, 1), 2: (1,)}, s)


@given(nets(min_K=2, max_K=3, max_L=3))
@settings(max_examples=40, deadline=None)
def test_cyclic_constraint_count_formula(net):
    region = full_region(net)
    single = sum(net.L)
    expected_cyclic = 0
    for seq in tc.cyclic_sequences(range(1, net.K + 1)):
        if len(seq) >= 2:
            prod = 1
            for i in seq:
                prod *= net.L[i - 1]
            expected_cyclic += prod
    assert len(region.constraints) == single + expected_cyclic


# --- membership -------------------------------------------------------------


def test_contains_origin(net_a):
    assert tc.contains(full_region(net_a), [0, 0, 0])


def test_contains_tight_point(net_a):
    region = full_region(net_a)
    assert tc.contains(region, [Fraction(0), Fraction(9, 10), Fraction(7, 10)])
    assert not tc.contains(region, [Fraction(1, 10), Fraction(9, 10), Fraction(7, 10)])


def test_contains_rejects_nonzero_on_forced_user(net_a):
    s = tc.Subnetwork(((2,), (1,)))
    region = tc.polyhedral_region(net_a, {1: (2,), 2: (1,)}, s)
    assert tc.contains(region, [0, Fraction(1, 2), Fraction(1, 2)])
    assert not tc.contains(region, [Fraction(1, 100), Fraction(1, 2), Fraction(1, 2)])


def test_tina_region_contains_origin(net_a):
    ok, witness = tc.tina_region_contains(net_a, [0, 0, 0])
    assert ok and witness is not None


def test_tina_region_contains_net_a_examples(net_a):
    ok, witness = tc.tina_region_contains(net_a, [Fraction(0), Fraction(9, 10), Fraction(7, 10)])
    assert ok
    order, subnet = witness
    assert subnet == tc.Subnetwork.full(net_a)
    assert order == {1: (1, 2), 2: (1,)}
    ok, witness = tc.tina_region_contains(net_a, [Fraction(7, 10), 0, 0])
    assert not ok and witness is None


# --- weighted sums ----------------------------------------------------------


def test_max_weighted_sum_net_a(net_a):
    value, arg = tc.max_weighted_sum(full_region(net_a), [1, 1, 1])
    assert value == Fraction(8, 5)
    assert sum(arg) == value
    assert tc.contains(full_region(net_a), arg)


def test_max_weighted_sum_unit_weight(net_a):
    value, arg = tc.max_weighted_sum(full_region(net_a), [0, 1, 0])
    assert value == 1
    assert arg[1] == 1


def test_max_weighted_sum_single_user():
    net = mknet([[[1.0]]])
    value, arg = tc.max_weighted_sum(full_region(net), [1])
    assert value == 1 and arg == (1,)


def test_max_weighted_sum_empty_region_raises():
    # strong cross link makes the cyclic bound negative
    net = mknet([[[0.5, 1.0]], [[1.0, 0.5]]])
    region = full_region(net)
    assert region.is_empty()
    with pytest.raises(tc.EmptyRegionError):
        tc.max_weighted_sum(region, [1, 1])


def test_max_weighted_sum_rejects_negative_weight(net_a):
    with pytest.raises(ValueError):
        tc.max_weighted_sum(full_region(net_a), [1, -1, 1])


def test_tina_max_weighted_sum_skips_empty(net_a):
    value, arg, (order, subnet) = tc.tina_max_weighted_sum(net_a, [1, 1, 1])
    assert value == Fraction(8, 5)


# --- regime classification --------------------------------------------------


def test_classify_net_a_tin(net_a):
    assert tc.classify_regime(net_a) is tc.RegimeLabel.TIN


def test_classify_net_b_ctin_only(net_b):
    assert tc.classify_regime(net_b) is tc.RegimeLabel.CTIN_ONLY


def test_classify_single_cell_tin():
    assert tc.classify_regime(mknet([[[0.4], [0.9]]])) is tc.RegimeLabel.TIN


def test_classify_general():
    net = mknet([[[0.5, 1.0]], [[1.0, 0.5]]])
    assert tc.classify_regime(net) is tc.RegimeLabel.GENERAL


def test_implied_conditions_net_a(net_a):
    assert tc.implied_conditions_hold(net_a, tc.RegimeLabel.TIN)


def test_implied_conditions_net_b(net_b):
    assert tc.implied_conditions_hold(net_b, tc.RegimeLabel.CTIN_ONLY)


def test_implied_conditions_rejects_general(net_a):
    with pytest.raises(tc.PreconditionError):
        tc.implied_conditions_hold(net_a, tc.RegimeLabel.GENERAL)


@given(nets())
@settings(max_examples=150, deadline=None)
def test_tin_implies_ctin(net):
    if tc.tin_conditions_hold(net):
        assert tc.ctin_conditions_hold(net)


@given(nets())
@settings(max_examples=150, deadline=None)
def test_labels_imply_remaining_user_conditions(net):
    label = tc.classify_regime(net)
    if label in (tc.RegimeLabel.TIN, tc.RegimeLabel.CTIN_ONLY):
        assert tc.implied_conditions_hold(net, label)


# --- outer bound ------------------------------------------------------------


def test_outer_bound_matches_region_net_a(net_a):
    outer = tc.outer_bound_region(net_a)
    inner = full_region(net_a)
    assert outer.constraint_set() == inner.constraint_set()
    assert len(outer.constraints) == len(inner.constraints)


def test_outer_bound_single_cell_prefices():
    net = mknet([[[0.4], [0.9]]])
    outer = tc.outer_bound_region(net)
    assert outer.constraint_set() == {
        (frozenset({tc.UserId(1, 1)}), Fraction(2, 5)),
        (frozenset({tc.UserId(1, 1), tc.UserId(1, 2)}), Fraction(9, 10)),
    }


def test_outer_bound_refuses_outside_regime(net_b):
    with pytest.raises(tc.PreconditionError):
        tc.outer_bound_region(net_b)


# --- CTIN collapse (sampled) -------------------------------------------------


def test_ctin_collapse_on_samples():
    rng = random.Random(11)
    from tincell.sampling import sample_ctin_network

    for _ in range(12):
        net = sample_ctin_network(rng, 2, [rng.randint(1, 2), rng.randint(1, 2)])
        hull = full_region(net)
        # vertices of every smaller region stay inside the identity-order hull
        for subnet in _all_subnetworks(net):
            for order in _all_suborders(subnet):
                region = tc.polyhedral_region(net, order, subnet)
                if region.is_empty():
                    continue
                for w in ([1] * net.n_users, [1, 0, 2, 5][: net.n_users]):
                    if len(w) < net.n_users:
                        continue
                    _, arg = tc.max_weighted_sum(region, w)
                    assert tc.contains(hull, arg)


def test_union_exceeds_hull_outside_convex_regime():
    # non-convexity is real: pick a net where strong mutual cross links make
    # the full-participation hull empty while single-cell schemes survive
    net = mknet([[[0.5, 1.0]], [[1.0, 0.5]]])
    assert tc.classify_regime(net) is tc.RegimeLabel.GENERAL
    full = tc.Subnetwork.full(net)
    hull = tc.polyhedral_region(net, tc.identity_suborder(full), full)
    assert hull.is_empty()
    value, arg, (order, subnet) = tc.tina_max_weighted_sum(net, [1, 1])
    assert value == Fraction(1, 2)  # one cell at a time still works
    assert subnet.size() == 1


# --- interference-alignment report -------------------------------------------


def ia_net(a1, a2, b1, b2, g1, g2):
    return mknet([[[a1, a2], [b1, b2]], [[g1, g2]]])


def test_ia_fixture_values():
    rep = tc.ia_sum_gdof(ia_net(1.0, 0.5, 1.2, 0.4, 0.2, 1.0))
    assert rep.d_tina == Fraction(8, 5)
    assert rep.gamma_ia == Fraction(1, 10)
    assert rep.d_ia == Fraction(17, 10)
    assert rep.applicable


def test_ia_not_applicable_in_tin_regime(net_a):
    rep = tc.ia_sum_gdof(net_a)
    assert not rep.applicable


def test_ia_boundary_gain_collapses():
    # b1 - b2 == a1 - a2 makes the gain zero and the scheme inapplicable
    rep = tc.ia_sum_gdof(ia_net(1.0, 0.5, 1.0, 0.5, 0.2, 1.0))
    assert rep.gamma_ia == 0
    assert not rep.applicable
    assert rep.d_ia == rep.d_tina


def test_ia_wrong_shape_raises(net_b, bc2):
    with pytest.raises(tc.PreconditionError):
        tc.ia_sum_gdof(bc2)


def test_ia_dominates_lp_when_applicable():
    net = ia_net(1.0, 0.5, 1.2, 0.4, 0.2, 1.0)
    rep = tc.ia_sum_gdof(net)
    value, _ = tc.max_weighted_sum(full_region(net), [1, 1, 1])
    assert rep.d_tina == value
    assert rep.d_ia > value


# --- user partition ----------------------------------------------------------


def test_partition_all_more_noisy(net_a):
    part = tc.partition_users(net_a, 1, 2, 2)
    assert part.more_noisy == (1, 2)
    assert part.not_more_noisy == ()


def test_partition_with_not_more_noisy(net_b):
    part = tc.partition_users(net_b, 1, 2, 2)
    assert part.more_noisy == (2,)
    assert part.not_more_noisy == (1,)


def test_partition_count_one(net_a):
    part = tc.partition_users(net_a, 1, 2, 1)
    assert part.more_noisy == (1,)
    assert part.not_more_noisy == ()


def test_partition_rejects_same_cell(net_a):
    with pytest.raises(tc.PreconditionError):
        tc.partition_users(net_a, 1, 1, 2)


def test_partition_order_empty_chain_true(net_a):
    part = tc.partition_users(net_a, 1, 2, 2)
    assert tc.partition_order_holds(net_a, part)


def test_partition_order_nonempty_chain(net_c):
    assert tc.classify_regime(net_c) is tc.RegimeLabel.TIN
    part = tc.partition_users(net_c, 1, 2, 2)
    assert part.not_more_noisy == (1,)
    assert tc.partition_order_holds(net_c, part)


def test_partition_order_random_tin_networks():
    rng = random.Random(5)
    from tincell.sampling import sample_tin_network

    nonempty_seen = 0
    for _ in range(25):
        K = rng.choice([2, 3])
        net = sample_tin_network(rng, K, [rng.randint(1, 3) for _ in range(K)])
        for i in range(1, K + 1):
            for p in range(1, K + 1):
                if p == i:
                    continue
                for count in range(1, net.L[i - 1] + 1):
                    part = tc.partition_users(net, i, p, count)
                    nonempty_seen += bool(part.not_more_noisy)
                    assert tc.partition_order_holds(net, part)
    # the sampler must exercise the nontrivial branch at least sometimes
    assert nonempty_seen > 0

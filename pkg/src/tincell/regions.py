"""Polyhedral TIN regions, regime classification and related analyses.

A region is a set of per-user GDoF tuples cut out by prefix-sum
constraints inside each participating cell and by cyclic multi-cell
constraints indexed by cyclically ordered cell sequences.  Users outside
the chosen subnetwork are zero-forced.  All bounds are exact rationals, so
membership, regime classification and LP optima never depend on float
rounding.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Mapping, Optional, Sequence

from .errors import DimensionMismatchError, EmptyRegionError, PreconditionError
from .network import ChannelStrengths, UserId
from .simplex import solve_lp


@dataclass(frozen=True)
class Subnetwork:
    """Per-cell participating slot subsets; cells with an empty subset drop out."""

    slots_by_cell: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        for k, slots in enumerate(self.slots_by_cell):
            if list(slots) != sorted(set(slots)):
                raise ValueError(f"cell {k + 1}: subset {slots} must be sorted and duplicate-free")
            if slots and (slots[0] < 1):
                raise ValueError(f"cell {k + 1}: slot indices are 1-based")

    @staticmethod
    def full(net: ChannelStrengths) -> "Subnetwork":
        return Subnetwork(tuple(tuple(range(1, lk + 1)) for lk in net.L))

    @staticmethod
    def empty(net: ChannelStrengths) -> "Subnetwork":
        return Subnetwork(tuple(() for _ in net.L))

    def cells(self) -> tuple[int, ...]:
        """Cells with at least one participating user."""
        return tuple(k + 1 for k, slots in enumerate(self.slots_by_cell) if slots)

    def slots(self, cell: int) -> tuple[int, ...]:
        return self.slots_by_cell[cell - 1]

    def members(self) -> frozenset[UserId]:
        return frozenset(
            UserId(k + 1, l) for k, slots in enumerate(self.slots_by_cell) for l in slots
        )

    def size(self) -> int:
        return sum(len(s) for s in self.slots_by_cell)


@dataclass(frozen=True)
class LinearConstraint:
    """Sum of the named users' GDoF values is at most ``bound``."""

    users: frozenset[UserId]
    bound: Fraction

    def __post_init__(self):
        if not self.users:
            raise ValueError("constraint must cover at least one user")


@dataclass(frozen=True)
class PolyhedralRegion:
    """A polyhedral GDoF region over the network's canonical user list.

    ``users`` fixes coordinate order, ``zero`` lists zero-forced users, and
    ``d >= 0`` is implicit.  The region is nonempty iff every bound is
    nonnegative (the origin then satisfies everything).
    """

    users: tuple[UserId, ...]
    zero: frozenset[UserId]
    constraints: tuple[LinearConstraint, ...]

    def __post_init__(self):
        active = set(self.users) - self.zero
        for c in self.constraints:
            if not c.users <= active:
                raise ValueError("constraint mentions a zero-forced or unknown user")

    def is_empty(self) -> bool:
        return any(c.bound < 0 for c in self.constraints)

    def constraint_set(self) -> frozenset[tuple[frozenset[UserId], Fraction]]:
        return frozenset((c.users, c.bound) for c in self.constraints)


class RegimeLabel(Enum):
    TIN = "TIN"
    CTIN_ONLY = "CTIN_ONLY"
    GENERAL = "GENERAL"


def cyclic_sequences(cells: Sequence[int]) -> list[tuple[int, ...]]:
    """All cyclically ordered sequences over nonempty subsets of ``cells``.

    Each cycle is reported once, rotated so its smallest cell id comes
    first; a subset of size m contributes (m-1)! sequences.  Enumeration is
    deterministic: subsets by size then lexicographically, interior
    orderings lexicographically.
    """
    cells = sorted(set(cells))
    if not cells:
        raise ValueError("cell set must be nonempty")
    out = []
    for m in range(1, len(cells) + 1):
        for subset in itertools.combinations(cells, m):
            first, rest = subset[0], subset[1:]
            for tail in itertools.permutations(rest):
                out.append((first,) + tail)
    return out


SubnetOrder = Mapping[int, tuple[int, ...]]


def identity_suborder(subnet: Subnetwork) -> dict[int, tuple[int, ...]]:
    """Ascending-slot decode order on a subnetwork."""
    return {i: subnet.slots(i) for i in subnet.cells()}


def polyhedral_region(
    net: ChannelStrengths, order: SubnetOrder, subnet: Subnetwork
) -> PolyhedralRegion:
    """Region of GDoF tuples achievable on ``subnet`` under decode order ``order``.

    Emits one prefix-sum constraint per (cell, prefix length) and one
    constraint per cyclic cell sequence of length >= 2 and per choice of
    per-cell prefix lengths, with the predecessor cell wrapping around the
    sequence.  No redundancy elimination is attempted.
    """
    if len(subnet.slots_by_cell) != net.K or any(
        slots and slots[-1] > net.L[k] for k, slots in enumerate(subnet.slots_by_cell)
    ):
        raise DimensionMismatchError("subnetwork does not fit the network")
    M = subnet.cells()
    for i in M:
        if i not in order or sorted(order[i]) != list(subnet.slots(i)):
            raise ValueError(f"order for cell {i} is not a bijection onto its subset")
    users = net.users()
    zero = frozenset(users) - subnet.members()
    constraints = []
    for i in M:
        perm = order[i]
        for l in range(1, len(perm) + 1):
            group = frozenset(UserId(i, perm[s]) for s in range(l))
            constraints.append(LinearConstraint(group, net.direct(i, perm[l - 1])))
    if len(M) >= 2:
        for seq in cyclic_sequences(M):
            m = len(seq)
            if m < 2:
                continue
            for lengths in itertools.product(*(range(1, len(order[i]) + 1) for i in seq)):
                group = set()
                bound = Fraction(0)
                for j, i in enumerate(seq):
                    prev = seq[j - 1]  # wraps: predecessor of seq[0] is seq[-1]
                    l_i = lengths[j]
                    top = order[i][l_i - 1]
                    group.update(UserId(i, order[i][s]) for s in range(l_i))
                    bound += net.direct(i, top) - net.strength(i, top, prev)
                constraints.append(LinearConstraint(frozenset(group), bound))
    return PolyhedralRegion(users=users, zero=zero, constraints=tuple(constraints))


def contains(region: PolyhedralRegion, d: Sequence, tol=0) -> bool:
    """Membership test: d >= 0, zero-forced coordinates vanish, all
    constraints hold.

    Comparisons are exact by default (rational inputs never round); pass
    e.g. ``tol=1e-9`` when testing float tuples against the region.
    """
    if len(d) != len(region.users):
        raise DimensionMismatchError(f"tuple of length {len(d)}, expected {len(region.users)}")
    index = {u: i for i, u in enumerate(region.users)}
    if any(x < -tol for x in d):
        return False
    if any(abs(d[index[u]]) > tol for u in region.zero):
        return False
    for c in region.constraints:
        if sum(d[index[u]] for u in c.users) > c.bound + tol:
            return False
    return True


def _all_suborders(subnet: Subnetwork):
    """Every decode order on the subnetwork, lexicographically per cell."""
    M = subnet.cells()
    pools = [sorted(itertools.permutations(subnet.slots(i))) for i in M]
    for combo in itertools.product(*pools):
        yield dict(zip(M, combo))


def _all_subnetworks(net: ChannelStrengths):
    """Subnetworks in decreasing total size, lexicographic within a size."""
    per_cell = []
    for lk in net.L:
        subsets = []
        for m in range(lk + 1):
            subsets.extend(itertools.combinations(range(1, lk + 1), m))
        per_cell.append(subsets)
    everything = [Subnetwork(choice) for choice in itertools.product(*per_cell)]
    everything.sort(key=lambda s: (-s.size(), s.slots_by_cell))
    return everything


def tina_region_contains(
    net: ChannelStrengths, d: Sequence
) -> tuple[bool, Optional[tuple[dict, Subnetwork]]]:
    """Search the full union of polyhedral regions for one containing ``d``.

    Subnetworks are tried in decreasing size and decode orders
    lexicographically; the first containing (order, subnetwork) pair is the
    witness.  Cost grows with the product of per-cell factorials, so keep
    networks small.
    """
    for subnet in _all_subnetworks(net):
        for order in _all_suborders(subnet):
            region = polyhedral_region(net, order, subnet)
            if contains(region, d):
                return True, (order, subnet)
    return False, None


def max_weighted_sum(region: PolyhedralRegion, w: Sequence) -> tuple[Fraction, tuple]:
    """Exact LP maximum of ``w . d`` over the region, with an optimal vertex.

    Ties between optimal vertices are broken deterministically by the
    simplex pivot rule (smallest index).  Raises if the region is empty or
    any weight is negative.
    """
    if len(w) != len(region.users):
        raise DimensionMismatchError(f"{len(w)} weights for {len(region.users)} users")
    w = [Fraction(x) if not isinstance(x, float) else Fraction(repr(x)) for x in w]
    if any(x < 0 for x in w):
        raise ValueError("weights must be nonnegative")
    if region.is_empty():
        raise EmptyRegionError("region has a negative bound")
    index = {u: i for i, u in enumerate(region.users)}
    active = [u for u in region.users if u not in region.zero]
    if not active:
        return Fraction(0), tuple(Fraction(0) for _ in region.users)
    col = {u: j for j, u in enumerate(active)}
    A = []
    b = []
    for c in region.constraints:
        row = [Fraction(0)] * len(active)
        for u in c.users:
            row[col[u]] = Fraction(1)
        A.append(row)
        b.append(c.bound)
    cvec = [w[index[u]] for u in active]
    value, x = solve_lp(cvec, A, b)
    full = [Fraction(0)] * len(region.users)
    for u, j in col.items():
        full[index[u]] = x[j]
    return value, tuple(full)


def tina_max_weighted_sum(net: ChannelStrengths, w: Sequence):
    """Best weighted sum over the whole union of polyhedral regions.

    Returns (value, argmax, (order, subnetwork)); empty regions are skipped.
    """
    best = None
    for subnet in _all_subnetworks(net):
        for order in _all_suborders(subnet):
            region = polyhedral_region(net, order, subnet)
            if region.is_empty():
                continue
            value, arg = max_weighted_sum(region, w)
            if best is None or value > best[0]:
                best = (value, arg, (order, subnet))
    assert best is not None  # the empty subnetwork always yields the origin
    return best


# ---------------------------------------------------------------------------
# regime classification


def _cells_except(K: int, *excluded: int):
    return [c for c in range(1, K + 1) if c not in excluded]


def ctin_conditions_hold(net: ChannelStrengths) -> bool:
    """Strength conditions under which the TINA region collapses to a single
    convex polyhedron (identity order, all users)."""
    K = net.K
    for i in range(1, K + 1):
        Li = net.L[i - 1]
        for j in _cells_except(K, i):
            for l in range(2, Li + 1):
                for lp in range(1, l):
                    if net.direct(i, l) - net.strength(i, l, j) < net.direct(i, lp) - net.strength(i, lp, j):
                        return False
            for k in range(1, K + 1):
                if k == i:
                    continue
                for lk in range(1, net.L[k - 1] + 1):
                    rhs = net.strength(i, 1, j) + net.strength(k, lk, i)
                    if k != j:
                        rhs -= net.strength(k, lk, j)
                    if net.direct(i, 1) < rhs:
                        return False
    return True


def tin_conditions_hold(net: ChannelStrengths) -> bool:
    """Stricter strength conditions under which that polyhedron is the whole
    GDoF region (TIN is optimal)."""
    K = net.K
    for i in range(1, K + 1):
        Li = net.L[i - 1]
        for j in _cells_except(K, i):
            for l in range(2, Li + 1):
                for lp in range(1, l):
                    a_l = net.direct(i, l)
                    cross_l = net.strength(i, l, j)
                    branch_a = a_l >= cross_l + net.direct(i, lp)
                    branch_b = a_l >= 2 * cross_l + net.direct(i, lp) - net.strength(i, lp, j)
                    if not (branch_a or branch_b):
                        return False
            for k in range(1, K + 1):
                if k == i:
                    continue
                for lk in range(1, net.L[k - 1] + 1):
                    if net.direct(i, 1) < net.strength(i, 1, j) + net.strength(k, lk, i):
                        return False
    return True


def classify_regime(net: ChannelStrengths) -> RegimeLabel:
    """TIN if the strict conditions hold, else CTIN_ONLY, else GENERAL."""
    if tin_conditions_hold(net):
        assert ctin_conditions_hold(net)  # strict regime nests in the convex one
        return RegimeLabel.TIN
    if ctin_conditions_hold(net):
        return RegimeLabel.CTIN_ONLY
    return RegimeLabel.GENERAL


def implied_conditions_hold(net: ChannelStrengths, label: RegimeLabel) -> bool:
    """Self-consistency check: conditions stated for the weakest user of each
    cell must propagate to every user when the regime label is correct."""
    if label not in (RegimeLabel.TIN, RegimeLabel.CTIN_ONLY):
        raise PreconditionError("only meaningful for TIN / CTIN_ONLY labels")
    K = net.K
    for i in range(1, K + 1):
        for j in _cells_except(K, i):
            for k in range(1, K + 1):
                if k == i:
                    continue
                for li in range(1, net.L[i - 1] + 1):
                    for lk in range(1, net.L[k - 1] + 1):
                        rhs = net.strength(i, li, j) + net.strength(k, lk, i)
                        if label is RegimeLabel.CTIN_ONLY and k != j:
                            rhs -= net.strength(k, lk, j)
                        if net.direct(i, li) < rhs:
                            return False
    return True


# ---------------------------------------------------------------------------
# outer bound


def outer_bound_region(net: ChannelStrengths) -> PolyhedralRegion:
    """GDoF-scale converse region, valid when the strict regime conditions hold.

    Built directly from the converse statement: per-cell prefix bounds plus
    cyclic bounds over all cell sequences with wrap-around predecessors.  It
    must coincide, constraint for constraint, with the identity-order
    full-participation achievable region.
    """
    if classify_regime(net) is not RegimeLabel.TIN:
        raise PreconditionError("outer bound is only claimed in the TIN regime")
    users = net.users()
    constraints = []
    for i in range(1, net.K + 1):
        for l in range(1, net.L[i - 1] + 1):
            group = frozenset(UserId(i, s) for s in range(1, l + 1))
            constraints.append(LinearConstraint(group, net.direct(i, l)))
    if net.K >= 2:
        for seq in cyclic_sequences(range(1, net.K + 1)):
            m = len(seq)
            if m < 2:
                continue
            for lengths in itertools.product(*(range(1, net.L[i - 1] + 1) for i in seq)):
                group = set()
                bound = Fraction(0)
                for j, i in enumerate(seq):
                    prev = seq[j - 1]
                    l_i = lengths[j]
                    group.update(UserId(i, s) for s in range(1, l_i + 1))
                    bound += net.direct(i, l_i) - net.strength(i, l_i, prev)
                constraints.append(LinearConstraint(frozenset(group), bound))
    return PolyhedralRegion(users=users, zero=frozenset(), constraints=tuple(constraints))


# ---------------------------------------------------------------------------
# interference-alignment gain (2-cell, 3-user shape)


@dataclass(frozen=True)
class IaReport:
    """Sum-GDoF of power-controlled TIN vs. the level-alignment scheme.

    Formula values are always filled in; ``applicable`` records whether the
    network sits in the sub-regime where the alignment gain is actually
    claimed (convex-regime conditions hold, the strict conditions are
    strictly violated, the weaker user is the more interfered one, and the
    gain is strictly positive).
    """

    d_tina: Fraction
    gamma_ia: Fraction
    d_ia: Fraction
    applicable: bool


def ia_sum_gdof(net: ChannelStrengths) -> IaReport:
    """Alignment-gain report for the 2-cell network with cell sizes (2, 1)."""
    if net.K != 2 or net.L != (2, 1):
        raise PreconditionError("requires exactly 2 cells with 2 and 1 users")
    a1 = net.strength(1, 1, 1)
    a2 = net.strength(1, 1, 2)
    b1 = net.strength(1, 2, 1)
    b2 = net.strength(1, 2, 2)
    g1 = net.strength(2, 1, 1)
    g2 = net.strength(2, 1, 2)
    d_tina = (b1 - b2) + (g2 - g1)
    gamma_ia = min((a1 - a2) - (b1 - 2 * b2), (b1 - b2) - (a1 - a2))
    strict_violation = (b1 - b2 < a1) and (b1 - 2 * b2 < a1 - a2)
    applicable = (
        ctin_conditions_hold(net)
        and strict_violation
        and a2 >= b2
        and gamma_ia > 0
    )
    return IaReport(d_tina=d_tina, gamma_ia=gamma_ia, d_ia=d_tina + gamma_ia, applicable=applicable)


# ---------------------------------------------------------------------------
# user partition along a cyclic bound


@dataclass(frozen=True)
class UserPartition:
    """Split of participating slots ``1..count`` of one cell, relative to the
    interference arriving from a predecessor cell.

    ``more_noisy`` holds the strongest participating user plus everyone it
    can stand in for; ``not_more_noisy`` holds the rest.  Both are ascending
    and the strongest user closes ``more_noisy``.
    """

    cell: int
    predecessor: int
    count: int
    more_noisy: tuple[int, ...]
    not_more_noisy: tuple[int, ...]

    def __post_init__(self):
        merged = sorted(self.more_noisy + self.not_more_noisy)
        if merged != list(range(1, self.count + 1)) or self.more_noisy[-1] != self.count:
            raise ValueError("partition must cover 1..count with the top user in more_noisy")


def partition_users(net: ChannelStrengths, cell: int, predecessor: int, count: int) -> UserPartition:
    """Partition slots ``1..count`` of ``cell`` against ``predecessor``'s
    interference: a weaker user joins ``more_noisy`` when the top user's
    signal-to-interference margin covers that user's whole direct link."""
    if predecessor == cell:
        raise PreconditionError("predecessor must be a different cell")
    if not (1 <= count <= net.L[cell - 1]):
        raise PreconditionError(f"count must be in 1..{net.L[cell - 1]}")
    margin = net.direct(cell, count) - net.strength(cell, count, predecessor)
    more, rest = [], []
    for s in range(1, count):
        (more if margin >= net.direct(cell, s) else rest).append(s)
    more.append(count)
    return UserPartition(
        cell=cell,
        predecessor=predecessor,
        count=count,
        more_noisy=tuple(more),
        not_more_noisy=tuple(rest),
    )


def partition_order_holds(net: ChannelStrengths, partition: UserPartition) -> bool:
    """Chain conditions on the ``not_more_noisy`` users.

    Walking that subset in ascending order (with the top user appended),
    each user must not be less noisy than its predecessor in the chain and
    must see strictly weaker predecessor-cell interference.  Guaranteed to
    hold in the strict regime; outside it the answer is informational only.
    """
    i, p = partition.cell, partition.predecessor
    chain = partition.not_more_noisy + (partition.count,)
    for s in range(len(chain) - 1):
        cur, nxt = chain[s], chain[s + 1]
        if not (net.direct(i, nxt) - net.strength(i, nxt, p) < net.direct(i, cur)):
            return False
        if not (net.direct(i, nxt) - 2 * net.strength(i, nxt, p) >= net.direct(i, cur) - net.strength(i, cur, p)):
            return False
        if not (net.strength(i, cur, p) > net.strength(i, nxt, p)):
            return False
    return True


# ---------------------------------------------------------------------------
# serialization


def region_to_dict(region: PolyhedralRegion) -> dict:
    """JSON form: flat 0-based user indices into the canonical user order."""
    index = {u: i for i, u in enumerate(region.users)}
    return {
        "dimension": len(region.users),
        "zero": sorted(index[u] for u in region.zero),
        "constraints": [
            {"users": sorted(index[u] for u in c.users), "bound": float(c.bound)}
            for c in region.constraints
        ],
    }

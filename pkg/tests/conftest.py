from fractions import Fraction

import pytest
from hypothesis import strategies as st

import tincell as tc


def mknet(alpha):
    """Build a network from nested (decimal) strength rows."""
    K = len(alpha)
    L = [len(cell) for cell in alpha]
    return tc.ChannelStrengths.from_rows(K, L, alpha)


@pytest.fixture
def net_a():
    # two-cell fixture in the strict (TIN-optimal) regime
    return mknet([[[0.6, 0.2], [1.0, 0.1]], [[0.3, 1.0]]])


@pytest.fixture
def net_b():
    # convex regime but not TIN-optimal (both strict branches fail in cell 1)
    return mknet([[[1.0, 0.5], [1.2, 0.4]], [[0.2, 1.0]]])


@pytest.fixture
def net_c():
    # strict regime with a nonempty not-more-noisy subset in cell 1
    return mknet([[[1.0, 0.5], [1.15, 0.2]], [[0.2, 1.2]]])


@pytest.fixture
def bc2():
    # single-cell two-user broadcast fixture
    return mknet([[[0.6], [1.0]]])


@st.composite
def nets(draw, min_K=1, max_K=3, max_L=3, denom=20, max_num=40):
    """Random networks on the 1/denom grid, direct links ascending."""
    K = draw(st.integers(min_K, max_K))
    L = [draw(st.integers(1, max_L)) for _ in range(K)]
    alpha = []
    for k in range(K):
        directs = sorted(Fraction(draw(st.integers(0, max_num)), denom) for _ in range(L[k]))
        cell = []
        for l in range(L[k]):
            row = [
                directs[l] if i == k else Fraction(draw(st.integers(0, max_num)), denom)
                for i in range(K)
            ]
            cell.append(row)
        alpha.append(cell)
    return tc.ChannelStrengths.from_rows(K, L, alpha)


@st.composite
def nets_with_strategy(draw, side, **net_kwargs):
    net = draw(nets(**net_kwargs))
    pi = []
    for lk in net.L:
        perm = draw(st.permutations(list(range(1, lk + 1))))
        pi.append(tuple(perm))
    r = []
    for lk in net.L:
        row = []
        for _ in range(lk):
            if draw(st.booleans()) and draw(st.integers(0, 5)) == 0:
                row.append(tc.SILENT)
            else:
                row.append(Fraction(-draw(st.integers(0, 40)), 20))
        r.append(tuple(row))
    strategy = tc.Strategy(
        side=side,
        order=tc.DecodingOrder(tuple(pi)),
        power=tc.PowerAllocation(tuple(r)),
    )
    return net, strategy

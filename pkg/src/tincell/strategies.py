"""Evaluation of fixed multi-cell TIN strategies.

A strategy fixes, per cell, a successive-decoding order and, per user, a
transmit power exponent ``r <= 0`` (or ``SILENT`` for a user that is
allocated no power).  Downlink evaluation follows the superposition /
successive-decoding scheme in which the signal meant for the user decoded
at position ``l`` must be decodable by every user at positions ``m >= l``
of the same cell; uplink evaluation follows the reversed decode convention
in which the base station cancels later-position users first.

Conventions used throughout: a maximum over an empty index set is ``-inf``,
the clip ``(x)^+ = max(0, x)`` sends ``-inf`` to 0, and a ``SILENT`` user
contributes ``-inf`` wherever its power exponent would appear.

Per-user results (effective levels, GDoF bounds, SINRs) are returned as
tuples aligned with ``net.users()`` (cells ascending, slots ascending).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import DimensionMismatchError, NetworkFormatError
from .network import ChannelStrengths, as_fraction

#: Sentinel for a user that transmits nothing / is allocated no power.
SILENT = None

NEG_INF = float("-inf")

PowerExponent = Optional[Fraction]  # None == SILENT


@dataclass(frozen=True)
class DecodingOrder:
    """Per-cell decode permutations: ``pi[k][pos]`` is the slot decoded at
    position ``pos + 1`` in cell ``k + 1`` (downlink convention)."""

    pi: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        for k, perm in enumerate(self.pi):
            if sorted(perm) != list(range(1, len(perm) + 1)):
                raise ValueError(f"cell {k + 1}: {perm} is not a permutation of 1..{len(perm)}")

    @staticmethod
    def identity(L: Sequence[int]) -> "DecodingOrder":
        return DecodingOrder(tuple(tuple(range(1, lk + 1)) for lk in L))

    def position_of(self, cell: int, slot: int) -> int:
        """1-based decode position of ``slot`` within its cell."""
        return self.pi[cell - 1].index(slot) + 1


@dataclass(frozen=True)
class PowerAllocation:
    """Per-user power exponents, nested like the strength tensor:
    ``r[k][l]`` is the exponent of user ``(l + 1, k + 1)`` or ``SILENT``."""

    r: tuple[tuple[PowerExponent, ...], ...]

    def __post_init__(self):
        for k, cell in enumerate(self.r):
            for l, x in enumerate(cell):
                if x is not SILENT and x > 0:
                    raise ValueError(f"user ({l + 1},{k + 1}): exponent {x} must be <= 0")

    @staticmethod
    def uniform(L: Sequence[int], value=0) -> "PowerAllocation":
        v = None if value is SILENT else as_fraction(value)
        return PowerAllocation(tuple(tuple(v for _ in range(lk)) for lk in L))

    @staticmethod
    def all_silent(L: Sequence[int]) -> "PowerAllocation":
        return PowerAllocation(tuple(tuple(SILENT for _ in range(lk)) for lk in L))

    def of(self, cell: int, slot: int) -> PowerExponent:
        return self.r[cell - 1][slot - 1]


@dataclass(frozen=True)
class Strategy:
    """A complete TIN strategy: link direction, decode order and powers."""

    side: str  # "ibc" (downlink) or "imac" (uplink)
    order: DecodingOrder
    power: PowerAllocation

    def __post_init__(self):
        if self.side not in ("ibc", "imac"):
            raise ValueError(f"side must be 'ibc' or 'imac', got {self.side!r}")


@dataclass(frozen=True)
class FiniteSnrConfig:
    """Nominal power for finite-SNR rate evaluation; rates are in bits (log base 2)."""

    P: float

    def __post_init__(self):
        if not self.P > 1:
            raise ValueError("nominal power P must exceed 1")


def check_dimensions(net: ChannelStrengths, order: DecodingOrder, power: PowerAllocation) -> None:
    if tuple(len(p) for p in order.pi) != net.L:
        raise DimensionMismatchError(f"order shape {[len(p) for p in order.pi]} != L {list(net.L)}")
    if tuple(len(c) for c in power.r) != net.L:
        raise DimensionMismatchError(f"power shape {[len(c) for c in power.r]} != L {list(net.L)}")


def _cell_max_power(power: PowerAllocation):
    """Per-cell max transmit exponent over non-silent users (-inf if none)."""
    out = []
    for cell in power.r:
        best = NEG_INF
        for x in cell:
            if x is not SILENT and x > best:
                best = x
        out.append(best)
    return out


def _cross_interference(net: ChannelStrengths, power: PowerAllocation, k0: int, obs_slot: int):
    """max over out-of-cell users (l_j, j) of alpha_kj[obs] + r_j[l_j] (downlink)."""
    best = NEG_INF
    row = net.alpha[k0][obs_slot - 1]
    for j0 in range(net.K):
        if j0 == k0:
            continue
        for x in power.r[j0]:
            if x is SILENT:
                continue
            v = row[j0] + x
            if v > best:
                best = v
    return best


def gamma_ibc(net: ChannelStrengths, order: DecodingOrder, power: PowerAllocation) -> tuple:
    """Downlink effective interference level per user.

    For the user decoded at position ``l`` of cell ``k`` it aggregates the
    not-yet-cancelled same-cell powers and, over every same-cell observer at
    positions ``m >= l``, the clipped out-of-cell interference seen by that
    observer relative to its direct link.  Always nonnegative.
    """
    check_dimensions(net, order, power)
    out = []
    for k in range(1, net.K + 1):
        perm = order.pi[k - 1]
        Lk = len(perm)
        per_slot = [None] * Lk
        for l in range(1, Lk + 1):
            u = perm[l - 1]
            later = [power.of(k, perm[j - 1]) for j in range(l + 1, Lk + 1)]
            a_term = max((x for x in later if x is not SILENT), default=NEG_INF)
            m_term = NEG_INF
            for m in range(l, Lk + 1):
                obs = perm[m - 1]
                cross = _cross_interference(net, power, k - 1, obs)
                v = max(0, cross) - net.direct(k, obs)
                if v > m_term:
                    m_term = v
            g = net.direct(k, u) + max(a_term, m_term)
            per_slot[u - 1] = g
        out.extend(per_slot)
    assert all(g >= 0 for g in out)
    return tuple(out)


def gamma_imac(net: ChannelStrengths, order: DecodingOrder, power: PowerAllocation) -> tuple:
    """Uplink effective interference level per user (nonnegative).

    At the base station of cell ``k`` decoding position ``l``, the residual
    interference consists of same-cell users at earlier positions (decoded
    later) plus every out-of-cell user, clipped at the noise floor.
    """
    check_dimensions(net, order, power)
    out = []
    for k in range(1, net.K + 1):
        perm = order.pi[k - 1]
        Lk = len(perm)
        inter = NEG_INF
        for j in range(1, net.K + 1):
            if j == k:
                continue
            for lj in range(1, net.L[j - 1] + 1):
                x = power.of(j, lj)
                if x is SILENT:
                    continue
                v = net.strength(j, lj, k) + x
                if v > inter:
                    inter = v
        per_slot = [None] * Lk
        for l in range(1, Lk + 1):
            u = perm[l - 1]
            intra = NEG_INF
            for j in range(1, l):
                s = perm[j - 1]
                x = power.of(k, s)
                if x is SILENT:
                    continue
                v = net.direct(k, s) + x
                if v > intra:
                    intra = v
            per_slot[u - 1] = max(0, intra, inter)
        out.extend(per_slot)
    return tuple(out)


def gdof_bounds_ibc(net: ChannelStrengths, order: DecodingOrder, power: PowerAllocation) -> tuple:
    """Componentwise-largest downlink GDoF tuple achievable with the strategy.

    Evaluated directly as the min over same-cell observers ``m >= l`` of the
    observer's direct strength plus the user's exponent minus the dominant
    interference-plus-residual term, clipped at zero.  SILENT users get 0.
    """
    check_dimensions(net, order, power)
    out = []
    for k in range(1, net.K + 1):
        perm = order.pi[k - 1]
        Lk = len(perm)
        per_slot = [None] * Lk
        for l in range(1, Lk + 1):
            u = perm[l - 1]
            r_u = power.of(k, u)
            if r_u is SILENT:
                per_slot[u - 1] = Fraction(0)
                continue
            later = [power.of(k, perm[j - 1]) for j in range(l + 1, Lk + 1)]
            a_term = max((x for x in later if x is not SILENT), default=NEG_INF)
            best = None
            for m in range(l, Lk + 1):
                obs = perm[m - 1]
                a_obs = net.direct(k, obs)
                cross = _cross_interference(net, power, k - 1, obs)
                term = a_obs + r_u - max(0, a_obs + a_term, cross)
                if best is None or term < best:
                    best = term
            per_slot[u - 1] = max(Fraction(0), best)
        out.extend(per_slot)
    return tuple(out)


def gdof_bounds_imac(net: ChannelStrengths, order: DecodingOrder, power: PowerAllocation) -> tuple:
    """Componentwise-largest uplink GDoF tuple achievable with the strategy."""
    check_dimensions(net, order, power)
    out = []
    for k in range(1, net.K + 1):
        perm = order.pi[k - 1]
        Lk = len(perm)
        inter = NEG_INF
        for j in range(1, net.K + 1):
            if j == k:
                continue
            for lj in range(1, net.L[j - 1] + 1):
                x = power.of(j, lj)
                if x is SILENT:
                    continue
                v = net.strength(j, lj, k) + x
                if v > inter:
                    inter = v
        per_slot = [None] * Lk
        for l in range(1, Lk + 1):
            u = perm[l - 1]
            r_u = power.of(k, u)
            if r_u is SILENT:
                per_slot[u - 1] = Fraction(0)
                continue
            intra = NEG_INF
            for j in range(1, l):
                s = perm[j - 1]
                x = power.of(k, s)
                if x is SILENT:
                    continue
                v = net.direct(k, s) + x
                if v > intra:
                    intra = v
            d = net.direct(k, u) + r_u - max(0, intra, inter)
            per_slot[u - 1] = max(Fraction(0), d)
        out.extend(per_slot)
    return tuple(out)


def gdof_bounds(net: ChannelStrengths, strategy: Strategy) -> tuple:
    """Per-user GDoF bounds for the strategy's own side."""
    f = gdof_bounds_ibc if strategy.side == "ibc" else gdof_bounds_imac
    return f(net, strategy.order, strategy.power)


def achievable_with_strategy(net: ChannelStrengths, strategy: Strategy, d: Sequence) -> bool:
    """True iff ``d`` lies below the strategy's per-user bounds componentwise."""
    bounds = gdof_bounds(net, strategy)
    if len(d) != len(bounds):
        raise DimensionMismatchError(f"tuple of length {len(d)}, expected {len(bounds)}")
    return all(di <= bi for di, bi in zip(d, bounds))


def sinr_rates_ibc(
    net: ChannelStrengths,
    order: DecodingOrder,
    power: PowerAllocation,
    cfg: FiniteSnrConfig,
) -> tuple[tuple[float, float], ...]:
    """Finite-SNR downlink (SINR, rate) per user, rate in bits.

    Codeword powers are ``P**r / L_k`` (0 for SILENT users); each user's
    SINR is the worst over the same-cell observers that must decode its
    signal.
    """
    check_dimensions(net, order, power)
    P = float(cfg.P)
    q = [
        [0.0 if x is SILENT else (P ** float(x)) / net.L[k] for x in cell]
        for k, cell in enumerate(power.r)
    ]
    cell_q_sum = [sum(cell) for cell in q]
    out = []
    for k in range(1, net.K + 1):
        perm = order.pi[k - 1]
        Lk = len(perm)
        per_slot = [None] * Lk
        for l in range(1, Lk + 1):
            u = perm[l - 1]
            q_u = q[k - 1][u - 1]
            if q_u == 0.0:
                per_slot[u - 1] = (0.0, 0.0)
                continue
            sinr = math.inf
            for m in range(l, Lk + 1):
                obs = perm[m - 1]
                row = net.alpha[k - 1][obs - 1]
                gain = P ** float(row[k - 1])
                intra = sum(q[k - 1][perm[j - 1] - 1] for j in range(l + 1, Lk + 1))
                den = 1.0 + gain * intra
                for j0 in range(net.K):
                    if j0 != k - 1 and cell_q_sum[j0] > 0.0:
                        den += (P ** float(row[j0])) * cell_q_sum[j0]
                sinr = min(sinr, gain * q_u / den)
            per_slot[u - 1] = (sinr, math.log2(1.0 + sinr))
        out.extend(per_slot)
    return tuple(out)


# ---------------------------------------------------------------------------
# strategy file format


def parse_strategy(text: str, net: ChannelStrengths) -> Strategy:
    """Parse the JSON strategy format: side, 1-based per-cell order, powers
    with ``"off"`` marking SILENT users."""
    try:
        doc = json.loads(text, parse_float=Fraction, parse_int=int)
    except json.JSONDecodeError as exc:
        raise NetworkFormatError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict) or {"side", "order", "r"} - doc.keys():
        raise NetworkFormatError('strategy file needs keys "side", "order", "r"')
    side = doc["side"]
    if side not in ("ibc", "imac"):
        raise NetworkFormatError(f'side must be "ibc" or "imac", got {side!r}')
    try:
        order = DecodingOrder(tuple(tuple(int(x) for x in perm) for perm in doc["order"]))
    except (TypeError, ValueError) as exc:
        raise NetworkFormatError(f"bad decoding order: {exc}") from exc
    rows = []
    for cell in doc["r"]:
        row = []
        for x in cell:
            if x == "off":
                row.append(SILENT)
            elif isinstance(x, (int, Fraction)) and not isinstance(x, bool):
                row.append(as_fraction(x))
            else:
                raise NetworkFormatError(f'power entry must be a number or "off", got {x!r}')
        rows.append(tuple(row))
    try:
        power = PowerAllocation(tuple(rows))
    except ValueError as exc:
        raise NetworkFormatError(str(exc)) from exc
    strategy = Strategy(side=side, order=order, power=power)
    check_dimensions(net, order, power)
    return strategy


def strategy_to_dict(strategy: Strategy) -> dict:
    return {
        "side": strategy.side,
        "order": [list(p) for p in strategy.order.pi],
        "r": [["off" if x is SILENT else float(x) for x in cell] for cell in strategy.power.r],
    }

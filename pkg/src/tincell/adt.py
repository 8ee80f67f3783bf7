"""Linear deterministic channel over bit vectors, with exact information
checks.

Two transmitters send length-q binary columns; each receiver sees the XOR
of down-shifted copies, the shift being q minus the link's integer
strength.  Because the channel is deterministic and inputs are independent
across transmitters, mutual informations and entropies can be evaluated
exactly by enumerating the 2^(2q) joint outcomes, which is what the two
check functions below do for every supplied input distribution:

* ``check_less_noisy``  — receiver b learns at least as much about x1 as
  receiver a whenever its interference-free headroom covers the whole of
  x1 (n1 - n2 >= m1).
* ``check_entropy_diff`` — the output-entropy difference H(ya) - H(yb) is
  at most m2 - n2 bits whenever n1 - 2 n2 >= m1 - m2 and n2 <= m2.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import PreconditionError

DEFAULT_Q_CAP = 8
DEFAULT_TOL = 1e-9


@dataclass(frozen=True)
class AdtParams:
    """Integer link strengths: (m1, m2) at receiver a, (n1, n2) at receiver b."""

    m1: int
    m2: int
    n1: int
    n2: int

    def __post_init__(self):
        if min(self.m1, self.m2, self.n1, self.n2) < 0:
            raise ValueError("strengths must be nonnegative")
        if self.m1 < self.m2 or self.n1 < self.n2:
            raise ValueError("need m1 >= m2 and n1 >= n2")

    @property
    def q(self) -> int:
        return max(self.m1, self.m2, self.n1, self.n2)


def bits_to_int(bits: Sequence[int]) -> int:
    """Binary column to integer; index 0 is the top (most significant) level."""
    v = 0
    for b in bits:
        if b not in (0, 1):
            raise ValueError("entries must be bits")
        v = (v << 1) | b
    return v


def int_to_bits(v: int, q: int) -> tuple[int, ...]:
    return tuple((v >> (q - 1 - i)) & 1 for i in range(q))


def downshift(bits: Sequence[int], t: int) -> tuple[int, ...]:
    """Move the top q-t levels down by t positions, zero-filling the top."""
    q = len(bits)
    if not 0 <= t <= q:
        raise ValueError("shift must be in 0..q")
    return tuple([0] * t + list(bits[: q - t]))


def adt_output(params: AdtParams, x1: Sequence[int], x2: Sequence[int]):
    """Channel outputs (ya, yb) for one input pair of length-q bit columns."""
    q = params.q
    if len(x1) != q or len(x2) != q:
        raise ValueError(f"inputs must have length q = {q}")
    ya = tuple(
        a ^ b
        for a, b in zip(downshift(x1, q - params.m1), downshift(x2, q - params.m2))
    )
    yb = tuple(
        a ^ b
        for a, b in zip(downshift(x1, q - params.n1), downshift(x2, q - params.n2))
    )
    return ya, yb


def entropy(probs: Iterable[float]) -> float:
    """Shannon entropy in bits, with 0 log 0 = 0.  Masses must sum to 1."""
    p = np.asarray(list(probs), dtype=np.float64)
    if np.any(p < -1e-12) or abs(p.sum() - 1.0) > 1e-9:
        raise ValueError("probabilities must be nonnegative and sum to 1")
    p = p[p > 0]
    return float(-(p * np.log2(p)).sum())


@dataclass(frozen=True)
class AdtDistribution:
    """Independent input distributions, one marginal per transmitter.

    Each marginal is a length-2^q vector over integer-coded bit columns
    (index 0 bit = top level).  Independence is structural: the joint is
    always the product of the two marginals.
    """

    p1: tuple[float, ...]
    p2: tuple[float, ...]

    def __post_init__(self):
        for name, p in (("p1", self.p1), ("p2", self.p2)):
            n = len(p)
            if n == 0 or n & (n - 1):
                raise ValueError(f"{name} must have length 2^q")
            if min(p) < 0 or abs(sum(p) - 1.0) > 1e-12:
                raise ValueError(f"{name} must be a probability vector (sum within 1e-12 of 1)")
        if len(self.p1) != len(self.p2):
            raise ValueError("marginals must share the same q")

    @property
    def q(self) -> int:
        return len(self.p1).bit_length() - 1

    @staticmethod
    def uniform(q: int) -> "AdtDistribution":
        p = (1.0 / (1 << q),) * (1 << q)
        return AdtDistribution(p, p)

    @staticmethod
    def point(q: int, v1: int, v2: int) -> "AdtDistribution":
        p1 = [0.0] * (1 << q)
        p2 = [0.0] * (1 << q)
        p1[v1] = 1.0
        p2[v2] = 1.0
        return AdtDistribution(tuple(p1), tuple(p2))

    @staticmethod
    def product_bernoulli(theta1: Sequence[float], theta2: Sequence[float]) -> "AdtDistribution":
        """Per-level independent bits; theta[i] is P(top-level-i bit = 1)."""

        def expand(thetas):
            p = np.array([1.0])
            for t in thetas:
                p = np.kron(p, np.array([1.0 - t, t]))
            p = p / p.sum()
            return tuple(p.tolist())

        if len(theta1) != len(theta2):
            raise ValueError("sources must share the same q")
        return AdtDistribution(expand(theta1), expand(theta2))


def _shift_tables(params: AdtParams):
    q = params.q
    x = np.arange(1 << q, dtype=np.int64)
    return {
        "f1a": x >> (q - params.m1) if q > params.m1 else x.copy(),
        "f2a": x >> (q - params.m2) if q > params.m2 else x.copy(),
        "f1b": x >> (q - params.n1) if q > params.n1 else x.copy(),
        "f2b": x >> (q - params.n2) if q > params.n2 else x.copy(),
    }


def _pushforward(table: np.ndarray, p: np.ndarray) -> np.ndarray:
    out = np.zeros(len(p))
    np.add.at(out, table, p)
    return out


def _output_stats(params: AdtParams, dist: AdtDistribution, receiver: str):
    """(H(y), I(x1; y)) for one receiver, by exact joint enumeration.

    The output marginal and the per-x1 conditional entropies are
    accumulated over all 2^q x 2^q input pairs (conditionals are grouped by
    the shifted image of x1, which determines them exactly).
    """
    tabs = _shift_tables(params)
    f1 = tabs["f1a" if receiver == "a" else "f1b"]
    f2 = tabs["f2a" if receiver == "a" else "f2b"]
    p1 = np.asarray(dist.p1)
    p2 = np.asarray(dist.p2)
    size = len(p1)
    interf = _pushforward(f2, p2)  # distribution of the interference image
    idx = np.arange(size, dtype=np.int64)
    marginal = np.zeros(size)
    h_cond = 0.0
    # group x1 values by their shifted image c: y | x1 has law interf XOR c
    pc = _pushforward(f1, p1)
    for c in range(size):
        if pc[c] == 0.0:
            continue
        cond = interf[idx ^ c]
        marginal += pc[c] * cond
        h_cond += pc[c] * entropy(cond)
    h_y = entropy(marginal)
    return h_y, h_y - h_cond


def interference_image_entropy(params: AdtParams, dist: AdtDistribution, receiver: str) -> float:
    """H of the shifted interference seen at the receiver (H(y | x1))."""
    tabs = _shift_tables(params)
    f2 = tabs["f2a" if receiver == "a" else "f2b"]
    return entropy(_pushforward(f2, np.asarray(dist.p2)))


def mutual_information_x1(params: AdtParams, dist: AdtDistribution, receiver: str) -> float:
    """Exact I(x1; y) at receiver 'a' or 'b'."""
    return _output_stats(params, dist, receiver)[1]


def output_entropy(params: AdtParams, dist: AdtDistribution, receiver: str) -> float:
    """Exact H(y) at receiver 'a' or 'b'."""
    return _output_stats(params, dist, receiver)[0]


@dataclass(frozen=True)
class AdtCheckReport:
    """Outcome of one inequality check over a batch of input distributions."""

    mode: str
    params: AdtParams
    n_dists: int
    min_slack: float
    worst_index: Optional[int]
    tol: float

    @property
    def passed(self) -> bool:
        return self.min_slack >= -self.tol


def _guard(params: AdtParams, q_cap: int) -> None:
    if params.q > q_cap:
        raise PreconditionError(
            f"q = {params.q} exceeds the enumeration cap {q_cap} (2^(2q) outcomes)"
        )


def check_less_noisy(
    params: AdtParams,
    dists: Sequence[AdtDistribution],
    tol: float = DEFAULT_TOL,
    q_cap: int = DEFAULT_Q_CAP,
) -> AdtCheckReport:
    """Verify I(x1; yb) >= I(x1; ya) for every distribution.

    Slack per distribution is I(x1; yb) - I(x1; ya); requires the regime
    n1 - n2 >= m1.
    """
    if params.n1 - params.n2 < params.m1:
        raise PreconditionError("requires n1 - n2 >= m1")
    _guard(params, q_cap)
    min_slack, worst = np.inf, None
    for i, dist in enumerate(dists):
        slack = mutual_information_x1(params, dist, "b") - mutual_information_x1(params, dist, "a")
        if slack < min_slack:
            min_slack, worst = slack, i
    return AdtCheckReport("lessnoisy", params, len(dists), float(min_slack), worst, tol)


def check_entropy_diff(
    params: AdtParams,
    dists: Sequence[AdtDistribution],
    tol: float = DEFAULT_TOL,
    q_cap: int = DEFAULT_Q_CAP,
) -> AdtCheckReport:
    """Verify H(ya) - H(yb) <= m2 - n2 bits for every distribution.

    Slack per distribution is (m2 - n2) - (H(ya) - H(yb)); requires the
    regime n1 - 2 n2 >= m1 - m2 and n2 <= m2.
    """
    if params.n1 - 2 * params.n2 < params.m1 - params.m2 or params.n2 > params.m2:
        raise PreconditionError("requires n1 - 2*n2 >= m1 - m2 and n2 <= m2")
    _guard(params, q_cap)
    cap = params.m2 - params.n2
    min_slack, worst = np.inf, None
    for i, dist in enumerate(dists):
        diff = output_entropy(params, dist, "a") - output_entropy(params, dist, "b")
        slack = cap - diff
        if slack < min_slack:
            min_slack, worst = slack, i
    return AdtCheckReport("entropydiff", params, len(dists), float(min_slack), worst, tol)


def random_product_dists(q: int, count: int, rng: np.random.Generator) -> list[AdtDistribution]:
    """Product-Bernoulli marginals with per-level probabilities ~ U(0,1)."""
    out = []
    for _ in range(count):
        out.append(
            AdtDistribution.product_bernoulli(
                rng.uniform(size=q).tolist(), rng.uniform(size=q).tolist()
            )
        )
    return out


def random_table_dists(q: int, count: int, rng: np.random.Generator) -> list[AdtDistribution]:
    """Arbitrary per-source tables drawn from a flat Dirichlet."""
    out = []
    size = 1 << q
    for _ in range(count):
        p1 = rng.dirichlet(np.ones(size))
        p2 = rng.dirichlet(np.ones(size))
        out.append(AdtDistribution(tuple((p1 / p1.sum()).tolist()), tuple((p2 / p2.sum()).tolist())))
    return out


def regime_params(q_max: int, mode: str) -> list[AdtParams]:
    """All parameter tuples with q <= q_max satisfying the given regime."""
    out = []
    for m1 in range(q_max + 1):
        for m2 in range(m1 + 1):
            for n1 in range(q_max + 1):
                for n2 in range(n1 + 1):
                    if max(m1, m2, n1, n2) == 0:
                        continue
                    if mode == "lessnoisy" and n1 - n2 < m1:
                        continue
                    if mode == "entropydiff" and (n1 - 2 * n2 < m1 - m2 or n2 > m2):
                        continue
                    out.append(AdtParams(m1, m2, n1, n2))
    return out

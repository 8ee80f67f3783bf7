"""Small dense simplex over exact rationals.

Solves  max c.x  subject to  A x <= b,  x >= 0  with every entry a
Fraction and b >= 0 componentwise, so the all-slack basis is feasible and
no phase-1 is needed.  Bland's smallest-index rule is used both for the
entering column and to break ratio ties, which guarantees termination and
makes the reported optimal vertex deterministic.  Problem sizes here are
tiny (a handful of variables, at most a few hundred rows), so no effort is
spent on sparsity or revised-form updates.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


class UnboundedError(Exception):
    """The LP is unbounded above (cannot happen for bounded regions)."""


def solve_lp(c: Sequence, A: Sequence[Sequence], b: Sequence) -> tuple[Fraction, list]:
    """Return (optimal value, optimal vertex) of max c.x, A x <= b, x >= 0.

    All arithmetic is exact; inputs are converted to Fractions.
    """
    m = len(A)
    n = len(c)
    c = [Fraction(v) for v in c]
    b = [Fraction(v) for v in b]
    if any(bi < 0 for bi in b):
        raise ValueError("b must be componentwise nonnegative")
    # tableau rows: [a_1 .. a_n | slack_1 .. slack_m | rhs]
    rows = []
    for i in range(m):
        if len(A[i]) != n:
            raise ValueError("A row length mismatch")
        row = [Fraction(v) for v in A[i]] + [Fraction(0)] * m + [b[i]]
        row[n + i] = Fraction(1)
        rows.append(row)
    # objective row holds reduced costs (negated c) and the negated value
    obj = [-v for v in c] + [Fraction(0)] * (m + 1)
    basis = list(range(n, n + m))

    while True:
        enter = next((j for j in range(n + m) if obj[j] < 0), None)
        if enter is None:
            break
        leave = None
        best = None
        for i in range(m):
            a = rows[i][enter]
            if a > 0:
                ratio = rows[i][-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave is None:
            raise UnboundedError("objective unbounded above")
        piv = rows[leave][enter]
        rows[leave] = [v / piv for v in rows[leave]]
        for i in range(m):
            if i != leave and rows[i][enter] != 0:
                f = rows[i][enter]
                rows[i] = [v - f * p for v, p in zip(rows[i], rows[leave])]
        if obj[enter] != 0:
            f = obj[enter]
            obj = [v - f * p for v, p in zip(obj, rows[leave])]
        basis[leave] = enter

    x = [Fraction(0)] * n
    for i, var in enumerate(basis):
        if var < n:
            x[var] = rows[i][-1]
    return obj[-1], x

"""Exact rational simplex for small dense LPs.

Solves ``max c.x  s.t.  A x <= b, x >= 0`` with ``b >= 0`` so the slack basis
is feasible from the start.  Bland's rule keeps it from cycling.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


class Unbounded(Exception):
    pass


@dataclass(frozen=True)
class SimplexResult:
    value: Fraction
    x: tuple[Fraction, ...]
    # multipliers on the rows of A; optimal for the dual min b.y, A^T y >= c
    y: tuple[Fraction, ...]
    pivots: int


def maximize(c: Sequence, a: Sequence[Sequence], b: Sequence) -> SimplexResult:
    m, n = len(a), len(c)
    b = [Fraction(v) for v in b]
    if any(v < 0 for v in b):
        raise ValueError("right-hand side must be non-negative")
    # tableau rows: [A | I | b]; objective row holds reduced costs -c
    width = n + m + 1
    rows = []
    for i in range(m):
        row = [Fraction(v) for v in a[i]] + [Fraction(0)] * m + [b[i]]
        row[n + i] = Fraction(1)
        rows.append(row)
    obj = [-Fraction(v) for v in c] + [Fraction(0)] * (m + 1)
    basis = [n + i for i in range(m)]
    pivots = 0
    while True:
        enter = next((j for j in range(n + m) if obj[j] < 0), None)
        if enter is None:
            break
        best = None
        leave = None
        for i in range(m):
            coef = rows[i][enter]
            if coef > 0:
                ratio = rows[i][-1] / coef
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            raise Unbounded("objective is unbounded")
        piv = rows[leave][enter]
        prow = [v / piv for v in rows[leave]]
        rows[leave] = prow
        for i in range(m):
            if i != leave:
                f = rows[i][enter]
                if f:
                    r = rows[i]
                    rows[i] = [r[k] - f * prow[k] for k in range(width)]
        f = obj[enter]
        obj = [obj[k] - f * prow[k] for k in range(width)]
        basis[leave] = enter
        pivots += 1
    x = [Fraction(0)] * n
    for i, var in enumerate(basis):
        if var < n:
            x[var] = rows[i][-1]
    y = tuple(obj[n + i] for i in range(m))
    return SimplexResult(obj[-1], tuple(x), y, pivots)

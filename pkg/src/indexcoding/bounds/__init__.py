"""Lower bounds on the broadcast rate, plus minrank as the scalar-linear optimum.

``mais(g) <= shannon_lower_bound(g) <= r(g) <= minrank2(g)``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from ..digraph import Digraph, is_acyclic_mask, mask_of, members
from . import simplex

MAX_MINRANK_ARCS = 24
MAX_LP_VERTICES = 6


class BoundError(ValueError):
    pass


# -- MAIS ----------------------------------------------------------------------

@dataclass(frozen=True)
class MaisResult:
    size: int
    witness: int  # vertex bitmask

    def __int__(self):
        return self.size


def mais_with_witness(g: Digraph) -> MaisResult:
    """Largest vertex set inducing an acyclic subgraph, largest-first."""
    for k in range(g.n, 0, -1):
        for combo in itertools.combinations(range(g.n), k):
            s = mask_of(combo)
            if is_acyclic_mask(g, s):
                return MaisResult(k, s)
    raise AssertionError("a single vertex is always acyclic")


def mais(g: Digraph) -> int:
    return mais_with_witness(g).size


# -- minrank over GF(2) --------------------------------------------------------

@dataclass(frozen=True)
class MinrankResult:
    rank: int
    # row ``i`` of the achieving fitting matrix as a column bitmask
    matrix: tuple[int, ...]

    def dense(self) -> list[list[int]]:
        n = len(self.matrix)
        return [[(r >> j) & 1 for j in range(n)] for r in self.matrix]


def _batch_rank(rows: np.ndarray, n: int) -> np.ndarray:
    """GF(2) rank of many matrices; ``rows`` has shape (batch, n) of masks."""
    batch = rows.shape[0]
    basis = np.zeros((batch, n), dtype=np.uint32)
    for r_i in range(rows.shape[1]):
        r = rows[:, r_i].copy()
        for b in range(n - 1, -1, -1):
            has = ((r >> b) & 1).astype(bool)
            piv = basis[:, b]
            reduce = has & (piv != 0)
            r = np.where(reduce, r ^ piv, r)
            fresh = has & (piv == 0)
            basis[:, b] = np.where(fresh, r, piv)
            r = np.where(fresh, 0, r)
    return (basis != 0).sum(axis=1)


def minrank2(g: Digraph, lower: int | None = None, chunk: int = 1 << 15) -> MinrankResult:
    """Minimum GF(2) rank over matrices fitting ``g``.

    Free-bit patterns are scanned densest-first in numpy batches.  The scan
    stops as soon as it reaches ``lower`` (default: mais, a valid lower bound).
    """
    arcs = g.sorted_arcs()
    free = len(arcs)
    if free > MAX_MINRANK_ARCS:
        raise BoundError(f"minrank search limited to {MAX_MINRANK_ARCS} arcs, graph has {free}")
    n = g.n
    if lower is None:
        lower = mais(g)
    tails = np.array([i for i, _ in arcs], dtype=np.int64)
    heads = np.array([j for _, j in arcs], dtype=np.uint32)
    diag = np.array([1 << i for i in range(n)], dtype=np.uint32)
    total = 1 << free
    best_rank = n + 1
    best_rows: tuple[int, ...] = ()
    hi = total
    while hi > 0:
        lo = max(0, hi - chunk)
        idx = np.arange(hi - 1, lo - 1, -1, dtype=np.int64)
        rows = np.tile(diag, (len(idx), 1))
        for k in range(free):
            bit = ((idx >> k) & 1).astype(np.uint32) << heads[k]
            rows[:, tails[k]] |= bit
        ranks = _batch_rank(rows, n)
        pos = int(np.argmin(ranks))
        if ranks[pos] < best_rank:
            best_rank = int(ranks[pos])
            best_rows = tuple(int(v) for v in rows[pos])
        if best_rank <= lower:
            break
        hi = lo
    return MinrankResult(best_rank, best_rows)


# -- entropic LP ---------------------------------------------------------------

@dataclass(frozen=True)
class Constraint:
    """``sum coef * h(X_S, Y) >= rhs`` over subsets ``S`` (as bitmasks)."""

    terms: tuple[tuple[int, int], ...]
    rhs: int
    label: str


@dataclass
class LPResult:
    value: Fraction
    # h(X_S, Y) for every subset S, keyed by bitmask
    primal: dict[int, Fraction]
    # non-zero dual multipliers keyed by constraint label
    dual: dict[str, Fraction]
    method: str


@dataclass
class EntropicLP:
    """Shannon-type LP over h(X_S, Y) with independent unit-entropy messages.

    Entropies of message-only sets are fixed at |S|; ``Y`` is a function of
    the messages so h(X_[n], Y) = n.  Decodability at receiver i merges
    h(X_K, Y) with h(X_{K+i}, Y), K = N+(i).
    """

    g: Digraph
    constraints: list[Constraint] = field(default_factory=list)

    def __post_init__(self):
        n = self.g.n
        if n > MAX_LP_VERTICES:
            raise BoundError(f"entropic LP limited to n <= {MAX_LP_VERTICES}")
        full = self.g.full_mask
        cons = self.constraints
        for i, j in itertools.combinations(range(n), 2):
            rest = full & ~((1 << i) | (1 << j))
            for k in _submasks(rest):
                a, b = k | (1 << i), k | (1 << j)
                cons.append(Constraint(((a, 1), (b, 1), (a | b, -1), (k, -1)), 0,
                                       f"sub({i + 1},{j + 1}|Y{_fmt(k)})"))
        for j in range(n):
            for k in _submasks(full & ~(1 << j)):
                # h(Y,K) + h(j,K) >= h(Y,j,K) + h(K)
                cons.append(Constraint(((k, 1), (k | (1 << j), -1)), -1,
                                       f"sub(Y,{j + 1}|{_fmt(k)})"))
        for i in range(n):
            cons.append(Constraint(((full, 1), (full & ~(1 << i), -1)), 0, f"mono({i + 1})"))
        # union-find over subset variables for decodability
        parent = list(range(1 << n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for i in range(n):
            k = self.g.out[i]
            a, b = find(k), find(k | (1 << i))
            if a != b:
                parent[max(a, b)] = min(a, b)
        self._root = [find(s) for s in range(1 << n)]

    def decodability_pairs(self) -> list[tuple[int, int]]:
        return [(self.g.out[i], self.g.out[i] | (1 << i)) for i in range(self.g.n)]

    def _reduced(self):
        """Inequality system G z >= h on merged variables, fixed class removed."""
        full = self.g.full_mask
        fixed = self._root[full]
        classes = sorted({r for r in self._root if r != fixed})
        col = {r: c for c, r in enumerate(classes)}
        g_rows, rhs, labels = [], [], []
        for con in self.constraints:
            row = [0] * len(classes)
            b = con.rhs
            for s, coef in con.terms:
                r = self._root[s]
                if r == fixed:
                    b -= coef * self.g.n
                else:
                    row[col[r]] += coef
            if any(row):
                g_rows.append(row)
                rhs.append(b)
                labels.append(con.label)
            elif b > 0:
                raise BoundError(f"infeasible constraint {con.label}")
        cost = [0] * len(classes)
        empty = self._root[0]
        if empty == fixed:
            # decodability alone forces h(Y) = n
            return classes, col, g_rows, rhs, labels, cost, Fraction(self.g.n)
        cost[col[empty]] = 1
        return classes, col, g_rows, rhs, labels, cost, None

    def solve(self, exact_only: bool = False) -> LPResult:
        classes, col, g_rows, rhs, labels, cost, pinned = self._reduced()
        full = self.g.full_mask
        if pinned is not None:
            return LPResult(pinned, {s: Fraction(self.g.n) for s in range(1 << self.g.n)}, {}, "pinned")
        result = None if exact_only else _solve_highs(g_rows, rhs, cost)
        method = "highs+certificate"
        if result is None:
            res = simplex.maximize(rhs, _transpose(g_rows, len(classes)), cost)
            z, y = list(res.y), list(res.x)
            if not _certify(g_rows, rhs, cost, z, y):
                raise AssertionError("exact simplex returned an uncertified solution")
            result = (res.value, z, y)
            method = "exact-simplex"
        value, z, y = result
        primal = {}
        for s in range(1 << self.g.n):
            r = self._root[s]
            primal[s] = Fraction(self.g.n) if r == self._root[full] else z[col[r]]
        dual = {labels[k]: y[k] for k in range(len(y)) if y[k]}
        return LPResult(value, primal, dual, method)


def _submasks(mask: int):
    s = mask
    while True:
        yield s
        if s == 0:
            return
        s = (s - 1) & mask


def _fmt(mask: int) -> str:
    return "".join(str(v + 1) for v in members(mask))


def _transpose(rows, ncols):
    return [[rows[r][c] for r in range(len(rows))] for c in range(ncols)]


def _scaled(values):
    """Common-denominator integer vector for a list of Fractions."""
    den = 1
    for v in values:
        den = den * v.denominator // math.gcd(den, v.denominator)
    return np.array([int(v * den) for v in values], dtype=object), den


def _certify(g_rows, rhs, cost, z, y) -> bool:
    """Exact optimality: primal and dual feasible with equal objectives."""
    if any(v < 0 for v in z) or any(v < 0 for v in y):
        return False
    gm = np.array(g_rows, dtype=object)
    zi, dz = _scaled(z)
    yi, dy = _scaled(y)
    if any(lhs < b * dz for lhs, b in zip(gm.dot(zi), rhs)):
        return False
    if any(lhs > c * dy for lhs, c in zip(gm.T.dot(yi), cost)):
        return False
    primal = Fraction(int(np.dot(np.array(cost, dtype=object), zi)), dz)
    dual = Fraction(int(np.dot(np.array(rhs, dtype=object), yi)), dy)
    return primal == dual


def _solve_highs(g_rows, rhs, cost):
    """Floating-point solve, then rationalise and certify; None on failure."""
    from scipy.optimize import linprog

    a = -np.array(g_rows, dtype=float)
    b = -np.array(rhs, dtype=float)
    res = linprog(np.array(cost, dtype=float), A_ub=a, b_ub=b, bounds=(0, None), method="highs")
    if res.status != 0:
        return None
    for denom in (12, 120, 10_000):
        z = [max(Fraction(0), Fraction(v).limit_denominator(denom)) for v in res.x]
        y = [max(Fraction(0), Fraction(-v).limit_denominator(denom)) for v in res.ineqlin.marginals]
        if _certify(g_rows, rhs, cost, z, y):
            return sum(c * v for c, v in zip(cost, z)), z, y
    return None


def shannon_lower_bound(g: Digraph) -> Fraction:
    """Optimal value of the entropic LP, normalised by log|X|."""
    return EntropicLP(g).solve().value


# -- hand-auditable certificate chain ------------------------------------------

class ChainStepError(ValueError):
    def __init__(self, step: str, reason: str):
        super().__init__(f"step {step}: {reason}")
        self.step = step


Y = -1  # marker for the codeword inside a term


def _t(*vs) -> frozenset:
    return frozenset(v - 1 if v != Y else Y for v in vs)


# ("submod", name, S, T): h(S) + h(T) >= h(S | T) + h(S & T)
# ("decode", name, receiver, S): h(S, Y) = h(S + receiver, Y)
_CHAIN = (
    ("submod", "submod-Y-25", _t(Y), _t(2, 5)),
    ("submod", "submod-Y-13", _t(Y), _t(1, 3)),
    ("submod", "submod-Y-4", _t(Y), _t(4)),
    ("submod", "submod-125Y-123Y", _t(1, 2, 5, Y), _t(1, 2, 3, Y)),
    ("decode", "decode-4-from-1235", 4, _t(1, 2, 3, 5)),
    ("submod", "submod-12Y-4Y", _t(1, 2, Y), _t(4, Y)),
    ("decode", "decode-5-from-124", 5, _t(1, 2, 4)),
    ("decode", "decode-3-from-1245", 3, _t(1, 2, 4, 5)),
    ("decode", "decode-1-from-25", 1, _t(2, 5)),
    ("decode", "decode-2-from-13", 2, _t(1, 3)),
)


def verify_appendix_d_chain(g: Digraph) -> bool:
    """Replay the five-vertex chain proving h(Y) >= 5/2 on ``g``'s labels.

    Each decoding step needs ``N+(receiver) ⊆ S``; each submodularity step
    is validated structurally.  The weighted sum of all steps is then checked
    to collapse to ``2 h(Y) - 5 >= 0``.
    """
    if g.n != 5:
        raise ChainStepError("setup", "the chain is stated for five vertices")
    total: dict[frozenset, int] = {}

    def add(term, coef):
        total[term] = total.get(term, 0) + coef

    for kind, name, a, b in _CHAIN:
        if kind == "submod":
            for term, coef in ((a, 1), (b, 1), (a | b, -1), (a & b, -1)):
                add(term, coef)
        else:
            i = a - 1
            if i in b:
                raise ChainStepError(name, "receiver already in the conditioning set")
            known = frozenset(members(g.out[i]))
            missing = known - b
            if missing:
                raise ChainStepError(
                    name, f"receiver {a} knows {sorted(v + 1 for v in missing)} outside the set")
            yb = b | {Y}
            add(yb, 1)
            add(yb | {i}, -1)
    # substitute h(X_S) = |S| and h(X_[5], Y) = 5
    form_y = 0
    const = 0
    everything = frozenset(range(5)) | {Y}
    for term, coef in total.items():
        if not coef:
            continue
        if Y not in term:
            const += coef * len(term)
        elif term == everything:
            const += coef * 5
        elif term == frozenset({Y}):
            form_y += coef
        else:
            raise ChainStepError("sum", f"term h{sorted(term)} does not cancel")
    if (form_y, const) != (2, -5):
        raise ChainStepError("sum", f"chain sums to {form_y} h(Y) + {const} >= 0")
    return True


__all__ = [
    "BoundError", "ChainStepError", "Constraint", "EntropicLP", "LPResult",
    "MaisResult", "MinrankResult", "mais", "mais_with_witness", "minrank2",
    "shannon_lower_bound", "verify_appendix_d_chain",
]

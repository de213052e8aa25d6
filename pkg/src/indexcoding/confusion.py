"""Confusion graphs and exact chromatic numbers.

Two message tuples are confusable when some receiver wants different values
but holds identical side information; the minimum number of codewords of any
index code is the chromatic number of this graph.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass
from functools import cached_property

from .digraph import Digraph, members, popcount

MAX_VERTICES = 1 << 12
DEFAULT_NODE_BUDGET = 2_000_000


class ConfusionError(ValueError):
    pass


@dataclass(frozen=True)
class ConfusionGraph:
    g: Digraph
    m: int
    t: int
    adj: tuple[int, ...]

    @property
    def vertex_count(self) -> int:
        return len(self.adj)

    @cached_property
    def edge_count(self) -> int:
        return sum(popcount(a) for a in self.adj) // 2

    def tuple_of(self, x: int) -> tuple[int, ...]:
        """Message values of vertex ``x`` (mixed radix, message 1 first)."""
        q = self.m ** self.t
        n = self.g.n
        return tuple((x // q ** (n - 1 - v)) % q for v in range(n))

    def has_edge(self, x: int, y: int) -> bool:
        return bool((self.adj[x] >> y) & 1)

    def to_dimacs(self) -> str:
        lines = [f"c confusion graph n={self.g.n} m={self.m} t={self.t}",
                 f"p edge {self.vertex_count} {self.edge_count}"]
        for x, a in enumerate(self.adj):
            for y in members(a >> (x + 1)):
                lines.append(f"e {x + 1} {x + y + 2}")
        return "\n".join(lines) + "\n"


def build_confusion(g: Digraph, m: int, t: int = 1) -> ConfusionGraph:
    q = m ** t
    count = q ** g.n
    if m < 2 or t < 1:
        raise ConfusionError("need m >= 2 and t >= 1")
    if count > MAX_VERTICES:
        raise ConfusionError(f"confusion graph would have {count} > {MAX_VERTICES} vertices")
    n = g.n
    digits = [[(x // q ** (n - 1 - v)) % q for v in range(n)] for x in range(count)]
    adj = [0] * count
    for j in range(n):
        known = members(g.out[j])
        groups: dict[tuple, list[int]] = {}
        for x in range(count):
            d = digits[x]
            key = tuple(d[k] for k in known)
            groups.setdefault(key, [0] * q)[d[j]] |= 1 << x
        for by_value in groups.values():
            whole = 0
            for s in by_value:
                whole |= s
            for s in by_value:
                other = whole & ~s
                if not other:
                    continue
                for x in members(s):
                    adj[x] |= other
    return ConfusionGraph(g, m, t, tuple(adj))


@dataclass(frozen=True)
class ChromaticResult:
    lower: int
    upper: int
    coloring: tuple[int, ...]  # proper colouring with ``upper`` colours
    exact: bool
    nodes: int

    @property
    def value(self) -> int:
        if not self.exact:
            raise ConfusionError(f"chromatic number only bracketed in [{self.lower}, {self.upper}]")
        return self.upper


def _greedy_clique(adj: tuple[int, ...]) -> list[int]:
    best: list[int] = []
    n = len(adj)
    order = sorted(range(n), key=lambda v: -popcount(adj[v]))
    for start in order[: min(n, 64)]:
        clique = [start]
        cand = adj[start]
        while cand:
            v = max(members(cand), key=lambda u: popcount(adj[u] & cand))
            clique.append(v)
            cand &= adj[v]
        if len(clique) > len(best):
            best = clique
    return best


def _dsatur_greedy(adj: tuple[int, ...]) -> list[int]:
    n = len(adj)
    color = [-1] * n
    sat = [0] * n  # bitmask of neighbour colours
    for _ in range(n):
        v = max((u for u in range(n) if color[u] < 0),
                key=lambda u: (popcount(sat[u]), popcount(adj[u])))
        c = 0
        while (sat[v] >> c) & 1:
            c += 1
        color[v] = c
        for u in members(adj[v]):
            sat[u] |= 1 << c
    return color


class _Budget(Exception):
    pass


def _k_colour(adj: tuple[int, ...], k: int, seed: list[int], budget: int):
    """A proper k-colouring extending the clique seed, None, or _Budget."""
    n = len(adj)
    classes = [0] * k
    for c, v in enumerate(seed):
        classes[c] |= 1 << v
    uncoloured = ((1 << n) - 1) & ~sum(1 << v for v in seed)
    nodes = [0]

    def sat_of(u: int) -> int:
        s = 0
        a = adj[u]
        for c in range(k):
            if a & classes[c]:
                s += 1
        return s

    def solve(unc: int, used: int) -> bool:
        if not unc:
            return True
        nodes[0] += 1
        if nodes[0] > budget:
            raise _Budget
        best_v, best_key = -1, (-1, -1)
        for u in members(unc):
            s = sat_of(u)
            if s == k:
                return False
            key = (s, popcount(adj[u] & unc))
            if key > best_key:
                best_v, best_key = u, key
        v = best_v
        a = adj[v]
        for c in range(min(k, used + 1)):
            if a & classes[c]:
                continue
            classes[c] |= 1 << v
            if solve(unc & ~(1 << v), max(used, c + 1)):
                return True
            classes[c] &= ~(1 << v)
        return False

    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, n + 200))
    try:
        ok = solve(uncoloured, len(seed))
    finally:
        sys.setrecursionlimit(limit)
    if not ok:
        return None, nodes[0]
    colour = [0] * n
    for c in range(k):
        for v in members(classes[c]):
            colour[v] = c
    return colour, nodes[0]


def chromatic_number(cg: ConfusionGraph | tuple[int, ...], budget: int = DEFAULT_NODE_BUDGET) -> ChromaticResult:
    """Exact chromatic number by iterative k-colourability tests.

    Starts from a greedy clique bound; stops with an interval if the search
    exceeds ``budget`` nodes.
    """
    adj = cg.adj if isinstance(cg, ConfusionGraph) else tuple(cg)
    if len(adj) > MAX_VERTICES:
        raise ConfusionError("graph too large for exact colouring")
    if not adj:
        return ChromaticResult(0, 0, (), True, 0)
    clique = _greedy_clique(adj)
    greedy = _dsatur_greedy(adj)
    lower, upper = len(clique), max(greedy) + 1
    best = greedy
    nodes = 0
    for k in range(lower, upper):
        try:
            colour, used = _k_colour(adj, k, clique, budget - nodes)
        except _Budget:
            return ChromaticResult(k, upper, tuple(best), False, budget)
        nodes += used
        if colour is not None:
            return ChromaticResult(k, k, tuple(colour), True, nodes)
        lower = k + 1
    return ChromaticResult(upper, upper, tuple(best), True, nodes)


def is_proper(adj: tuple[int, ...], colouring) -> bool:
    return all(colouring[u] != colouring[v] for v in range(len(adj)) for u in members(adj[v]))


def exact_rate(g: Digraph, m: int, t: int = 1, budget: int = DEFAULT_NODE_BUDGET) -> float:
    """log chi / log |X| with |X| = m**t."""
    chi = chromatic_number(build_confusion(g, m, t), budget).value
    return math.log(chi) / math.log(m ** t)


def binary_restricted_length(g: Digraph, budget: int = DEFAULT_NODE_BUDGET) -> int:
    """Fewest bits needed to send chi codewords when m = 2, t = 1."""
    chi = chromatic_number(build_confusion(g, 2, 1), budget).value
    return (chi - 1).bit_length()

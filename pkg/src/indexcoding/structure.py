"""Cycle structures behind the length n-2 construction.

Two searches live here: a pair of vertex-disjoint cycles, and the hexagon of
nine internally disjoint paths (hubs ``i1``, ``u1``, ``w1``) whose union is an
interlinked cycle with those three hubs as inner vertices.  Outer-path
decompositions around a centre cycle are provided as the test oracle for the
existence argument.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from .digraph import Digraph, cyclic_vertices, is_acyclic_mask, mask_of, members, simple_cycles

PATH_NAMES = ("U", "C", "W", "D", "I", "H", "B", "E", "F")
MAY_BE_EMPTY = frozenset({"I", "W", "U"})


def find_two_disjoint_cycles(g: Digraph) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    """Two vertex-disjoint directed cycles, or None.

    Cycles are tried shortest first; the partner is the shortest cycle in
    what remains.
    """
    from .digraph import find_cycle_through

    cycles = sorted(simple_cycles(g), key=lambda c: (len(c), c))
    for c1 in cycles:
        rest = g.full_mask & ~mask_of(c1)
        if not is_acyclic_mask(g, rest):
            c2 = find_cycle_through(g.restrict_arcs(rest))
            return c1, c2
    return None


@dataclass(frozen=True)
class Fig2Structure:
    """Hexagon of nine paths.

    Going round the hexagon: ``u1 -U-> a -C-> w1 -W-> b -D-> i1 -I-> c -H-> u1``
    with chords ``a -F-> i1``, ``b -B-> u1`` and ``c -E-> w1``.  Each path is
    a vertex sequence including both ends; ``U``, ``W`` and ``I`` may be a
    single vertex (no arcs).
    """

    i1: int
    u1: int
    w1: int
    paths: dict = field(hash=False, compare=True)

    @property
    def hubs(self) -> tuple[int, int, int]:
        return self.i1, self.u1, self.w1

    @property
    def hub_mask(self) -> int:
        return mask_of(self.hubs)

    @property
    def empty(self) -> dict[str, bool]:
        return {name: len(self.paths[name]) == 1 for name in sorted(MAY_BE_EMPTY)}

    def arcs(self) -> set[tuple[int, int]]:
        out = set()
        for seq in self.paths.values():
            out.update(zip(seq, seq[1:]))
        return out

    @property
    def arc_count(self) -> int:
        return sum(len(s) - 1 for s in self.paths.values())

    def vertices(self) -> set[int]:
        return {v for seq in self.paths.values() for v in seq}

    def subgraph(self, n: int) -> Digraph:
        return Digraph.from_arcs(n, sorted(self.arcs()))

    def problems(self, g: Digraph | None = None) -> list[str]:
        """Violated invariants; empty when the structure is well formed."""
        p = self.paths
        bad = []
        if len(set(self.hubs)) != 3:
            bad.append("hubs are not distinct")
        if set(p) != set(PATH_NAMES):
            return bad + ["wrong path names"]
        a, b, c = p["U"][-1], p["W"][-1], p["I"][-1]
        ends = {
            "U": (self.u1, a), "C": (a, self.w1), "W": (self.w1, b), "D": (b, self.i1),
            "I": (self.i1, c), "H": (c, self.u1), "F": (a, self.i1), "B": (b, self.u1),
            "E": (c, self.w1),
        }
        for name, (s, t) in ends.items():
            seq = p[name]
            if (seq[0], seq[-1]) != (s, t):
                bad.append(f"path {name} has wrong end points")
            if len(seq) == 1 and name not in MAY_BE_EMPTY:
                bad.append(f"path {name} has no arc")
            if len(set(seq)) != len(seq):
                bad.append(f"path {name} repeats a vertex")
        corners = {self.u1, a, self.w1, b, self.i1, c}
        seen: dict[int, str] = {}
        for name, seq in p.items():
            for v in seq:
                if v in corners:
                    continue
                if v in seen:
                    bad.append(f"paths {seen[v]} and {name} share vertex {v + 1}")
                seen[v] = name
        if len(corners) != 3 + sum(1 for k in ("U", "W", "I") if len(p[k]) > 1):
            bad.append("hexagon corners collide")
        for v in corners:
            if v in seen:
                bad.append(f"corner {v + 1} is internal to path {seen[v]}")
        if g is not None:
            missing = [arc for arc in self.arcs() if not g.has_arc(*arc)]
            if missing:
                bad.append(f"arcs missing from the graph: {sorted(missing)}")
        return bad

    def to_json(self) -> dict:
        return {"hubs": {"i1": self.i1 + 1, "u1": self.u1 + 1, "w1": self.w1 + 1},
                "paths": {k: [v + 1 for v in self.paths[k]] for k in PATH_NAMES}}


def _all_paths(g: Digraph):
    """paths[s][t] -> list of (internal mask, vertex tuple), shortest first."""

    @lru_cache(maxsize=None)
    def between(s: int, t: int) -> tuple[tuple[int, tuple[int, ...]], ...]:
        found = []

        def dfs(v: int, used: int, seq: list[int]):
            for w in members(g.out[v] & ~used):
                if w == t:
                    found.append((used & ~(1 << s), tuple(seq + [w])))
                else:
                    dfs(w, used | (1 << w), seq + [w])

        if s == t:
            return ((0, (s,)),)
        dfs(s, 1 << s, [s])
        found.sort(key=lambda x: (len(x[1]), x[1]))
        return tuple(found)

    return between


def find_fig2(g: Digraph) -> Fig2Structure | None:
    """Search for the nine-path hexagon.

    Hub triples are tried in lexicographic order ``(i1, u1, w1)``; within the
    first triple that admits a structure the one with fewest arcs is kept.
    """
    between = _all_paths(g)
    n = g.n
    for i1 in range(n):
        for u1 in range(n):
            for w1 in range(n):
                if len({i1, u1, w1}) < 3:
                    continue
                best = _best_for_hubs(between, i1, u1, w1)
                if best is not None:
                    return best
    return None


def iter_fig2(g: Digraph):
    """Every hexagon structure of ``g``, hub triples in lexicographic order."""
    between = _all_paths(g)
    n = g.n
    for i1 in range(n):
        for u1 in range(n):
            for w1 in range(n):
                if len({i1, u1, w1}) == 3:
                    yield from _all_for_hubs(between, i1, u1, w1)


def _rings(between, i1: int, u1: int, w1: int):
    """Big cycles through the hubs, cut into the six hexagon sides."""
    hubs = (1 << i1) | (1 << u1) | (1 << w1)
    for m1, p1 in between(u1, w1):
        if m1 & hubs:
            continue
        for m2, p2 in between(w1, i1):
            if m2 & (hubs | m1):
                continue
            for m3, p3 in between(i1, u1):
                if m3 & (hubs | m1 | m2):
                    continue
                used = hubs | m1 | m2 | m3
                for u_part, c_part in _split(p1):
                    for w_part, d_part in _split(p2):
                        for i_part, h_part in _split(p3):
                            yield used, dict(U=u_part, C=c_part, W=w_part, D=d_part,
                                             I=i_part, H=h_part)


def _all_for_hubs(between, i1: int, u1: int, w1: int):
    for used, ring in _rings(between, i1, u1, w1):
        a, b, c = ring["C"][0], ring["D"][0], ring["H"][0]
        for mf, pf in between(a, i1):
            if mf & used:
                continue
            for mb, pb in between(b, u1):
                if mb & (used | mf):
                    continue
                for me, pe in between(c, w1):
                    if me & (used | mf | mb):
                        continue
                    yield Fig2Structure(i1, u1, w1, dict(ring, F=pf, B=pb, E=pe))


def _split(seq: tuple[int, ...]):
    """Ways to cut ``seq`` at a vertex before its last, as (head, tail)."""
    for k in range(len(seq) - 1):
        yield seq[:k + 1], seq[k:]


def _best_for_hubs(between, i1: int, u1: int, w1: int) -> Fig2Structure | None:
    hubs = (1 << i1) | (1 << u1) | (1 << w1)
    best: list = [None, 10 ** 9]
    for m1, p1 in between(u1, w1):
        if m1 & hubs:
            continue
        for m2, p2 in between(w1, i1):
            if m2 & (hubs | m1):
                continue
            for m3, p3 in between(i1, u1):
                if m3 & (hubs | m1 | m2):
                    continue
                used = hubs | m1 | m2 | m3
                base = len(p1) + len(p2) + len(p3) - 3
                if base + 3 >= best[1]:
                    continue
                for u_part, c_part in _split(p1):
                    a = c_part[0]
                    for w_part, d_part in _split(p2):
                        b = d_part[0]
                        for i_part, h_part in _split(p3):
                            c = h_part[0]
                            _chords(between, used, base, best, i1, u1, w1, a, b, c,
                                    dict(U=u_part, C=c_part, W=w_part, D=d_part,
                                         I=i_part, H=h_part))
    return best[0]


def _chords(between, used, base, best, i1, u1, w1, a, b, c, ring):
    for mf, pf in between(a, i1):
        if mf & used:
            continue
        cost_f = base + len(pf) - 1
        if cost_f + 2 >= best[1]:
            break
        for mb, pb in between(b, u1):
            if mb & (used | mf):
                continue
            cost_b = cost_f + len(pb) - 1
            if cost_b + 1 >= best[1]:
                break
            for me, pe in between(c, w1):
                if me & (used | mf | mb):
                    continue
                cost = cost_b + len(pe) - 1
                if cost < best[1]:
                    best[0] = Fig2Structure(i1, u1, w1, dict(ring, F=pf, B=pb, E=pe))
                    best[1] = cost
                break


# -- outer paths ------------------------------------------------------------------

@dataclass(frozen=True)
class OuterPath:
    vertices: tuple[int, ...]
    coverage: frozenset[int]

    @property
    def origin(self) -> int:
        return self.vertices[0]

    @property
    def terminus(self) -> int:
        return self.vertices[-1]

    @property
    def looping(self) -> bool:
        return self.origin == self.terminus


@dataclass(frozen=True)
class OuterPathDecomposition:
    cycle: tuple[int, ...]
    all_paths: tuple[OuterPath, ...]
    kept: tuple[OuterPath, ...]
    loops: tuple[OuterPath, ...]
    # arcs of the cyclic part off the centre cycle lying on no outer path
    stray_arcs: frozenset[tuple[int, int]]

    @property
    def full_coverage(self) -> bool:
        covered = set()
        for p in self.kept:
            covered |= p.coverage
        return bool(self.kept) and covered == set(self.cycle)

    def position(self, v: int) -> int:
        return self.cycle.index(v)


def _is_cycle(g: Digraph, c: Sequence[int]) -> bool:
    return (len(c) >= 2 and len(set(c)) == len(c)
            and all(g.has_arc(a, b) for a, b in zip(c, list(c[1:]) + [c[0]])))


def coverage(cycle: Sequence[int], origin: int, terminus: int) -> frozenset[int]:
    """Centre-cycle vertices strictly between origin and terminus, going forward."""
    if origin == terminus:
        return frozenset()
    k = cycle.index(origin)
    out = []
    while True:
        k = (k + 1) % len(cycle)
        if cycle[k] == terminus:
            return frozenset(out)
        out.append(cycle[k])


def outer_path_decomposition(g: Digraph, c1: Sequence[int]) -> OuterPathDecomposition:
    """Centre cycle plus outer paths of the cyclic part of ``g``.

    For each origin only the largest-coverage outer path survives, then the
    same per terminus; ties go to the lexicographically smallest internal
    vertex sequence.
    """
    c1 = tuple(c1)
    if not _is_cycle(g, c1):
        raise ValueError("c1 is not a directed cycle of g")
    sub = g.restrict_arcs(cyclic_vertices(g))
    on_c = mask_of(c1)
    c_arcs = set(zip(c1, c1[1:] + c1[:1]))
    found: list[OuterPath] = []

    def dfs(origin: int, v: int, used: int, seq: list[int]):
        for w in members(sub.out[v]):
            if len(seq) == 1 and (v, w) in c_arcs:
                continue
            if (on_c >> w) & 1:
                path = tuple(seq + [w])
                found.append(OuterPath(path, coverage(c1, origin, w)))
            elif not (used >> w) & 1:
                dfs(origin, w, used | (1 << w), seq + [w])

    for x in c1:
        dfs(x, x, 1 << x, [x])
    on_paths = set()
    for p in found:
        on_paths.update(zip(p.vertices, p.vertices[1:]))
    stray = frozenset(a for a in sub.arcs if a not in c_arcs and a not in on_paths)
    loops = tuple(p for p in found if p.looping)
    plain = [p for p in found if not p.looping]

    def pick(paths, key):
        chosen = {}
        for p in sorted(paths, key=lambda p: (-len(p.coverage), p.vertices[1:-1], p.vertices)):
            chosen.setdefault(key(p), p)
        return list(chosen.values())

    kept = pick(pick(plain, lambda p: p.origin), lambda p: p.terminus)
    kept.sort(key=lambda p: (c1.index(p.origin), p.vertices))
    return OuterPathDecomposition(c1, tuple(found), tuple(kept), loops, stray)

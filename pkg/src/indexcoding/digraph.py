"""Side-information digraphs stored as per-vertex bitmasks.

Vertices are ``0 .. n-1`` internally.  The text formats (edge lists and the
compact arc notation accepted by :meth:`Digraph.parse`) are 1-based, matching
how receivers are numbered in the literature.

An arc ``i -> j`` means receiver ``i`` already knows message ``X_j``.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

MAX_VERTICES = 16
MAX_CANONICAL_VERTICES = 8


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def members(mask: int) -> list[int]:
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return out


def popcount(mask: int) -> int:
    return bin(mask).count("1")


@dataclass(frozen=True)
class Digraph:
    """Simple digraph: no self-loops, no parallel arcs.

    ``out[i]`` is the bitmask of the out-neighbourhood of ``i``.
    """

    n: int
    out: tuple[int, ...]

    def __post_init__(self):
        if not 1 <= self.n <= MAX_VERTICES:
            raise ValueError(f"vertex count {self.n} outside 1..{MAX_VERTICES}")
        if len(self.out) != self.n:
            raise ValueError("out-mask list length does not match n")
        full = (1 << self.n) - 1
        for i, m in enumerate(self.out):
            if m & ~full:
                raise ValueError(f"vertex {i} has an arc to a vertex outside the graph")
            if (m >> i) & 1:
                raise ValueError(f"self-loop at vertex {i + 1}")

    # -- construction -----------------------------------------------------

    @classmethod
    def from_arcs(cls, n: int, arcs: Iterable[tuple[int, int]]) -> "Digraph":
        """Build from 0-based arcs.  Duplicates are rejected."""
        out = [0] * n
        for i, j in arcs:
            if i == j:
                raise ValueError(f"self-loop at vertex {i + 1}")
            if not (0 <= i < n and 0 <= j < n):
                raise ValueError(f"arc {i + 1}->{j + 1} outside 1..{n}")
            if (out[i] >> j) & 1:
                raise ValueError(f"duplicate arc {i + 1}->{j + 1}")
            out[i] |= 1 << j
        return cls(n, tuple(out))

    @classmethod
    def parse(cls, n: int, spec: str) -> "Digraph":
        """Build from 1-based compact notation.

        Tokens are separated by commas or whitespace.  Each token is a chain
        such as ``1->2->3`` or ``1<->2<->3``; ``<->`` adds both arcs.
        Repeated arcs are tolerated here (unlike the edge-list reader), so
        overlapping chains can be written naturally.
        """
        arcs: set[tuple[int, int]] = set()
        for token in re.split(r"[,\s]+", spec.strip()):
            if not token:
                continue
            parts = re.split(r"(<->|->|<-)", token)
            verts = [int(p) - 1 for p in parts[0::2]]
            for (a, b), op in zip(zip(verts, verts[1:]), parts[1::2]):
                if op in ("->", "<->"):
                    arcs.add((a, b))
                if op in ("<-", "<->"):
                    arcs.add((b, a))
        return cls.from_arcs(n, sorted(arcs))

    @classmethod
    def empty(cls, n: int) -> "Digraph":
        return cls(n, (0,) * n)

    @classmethod
    def complete(cls, n: int) -> "Digraph":
        full = (1 << n) - 1
        return cls(n, tuple(full & ~(1 << i) for i in range(n)))

    @classmethod
    def directed_cycle(cls, n: int) -> "Digraph":
        return cls.from_arcs(n, [(i, (i + 1) % n) for i in range(n)])

    @classmethod
    def undirected_cycle(cls, n: int) -> "Digraph":
        arcs = set()
        for i in range(n):
            j = (i + 1) % n
            arcs.add((i, j))
            arcs.add((j, i))
        return cls.from_arcs(n, sorted(arcs))

    # -- views -----------------------------------------------------------

    @cached_property
    def inn(self) -> tuple[int, ...]:
        inn = [0] * self.n
        for i, m in enumerate(self.out):
            for j in members(m):
                inn[j] |= 1 << i
        return tuple(inn)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    @cached_property
    def arcs(self) -> frozenset[tuple[int, int]]:
        return frozenset((i, j) for i in range(self.n) for j in members(self.out[i]))

    @property
    def arc_count(self) -> int:
        return sum(popcount(m) for m in self.out)

    def has_arc(self, i: int, j: int) -> bool:
        return bool((self.out[i] >> j) & 1)

    def out_neighbours(self, i: int) -> list[int]:
        return members(self.out[i])

    def in_neighbours(self, i: int) -> list[int]:
        return members(self.inn[i])

    def sorted_arcs(self) -> list[tuple[int, int]]:
        return sorted(self.arcs)

    def arc_string(self) -> str:
        """1-based comma-separated arc list, e.g. ``1->2,2->1``."""
        return ",".join(f"{i + 1}->{j + 1}" for i, j in self.sorted_arcs())

    def __repr__(self) -> str:
        return f"Digraph(n={self.n}, arcs='{self.arc_string()}')"

    # -- derived graphs ---------------------------------------------------

    def with_arcs(self, arcs: Iterable[tuple[int, int]]) -> "Digraph":
        out = list(self.out)
        for i, j in arcs:
            if i == j:
                raise ValueError("self-loop")
            out[i] |= 1 << j
        return Digraph(self.n, tuple(out))

    def without_arcs(self, arcs: Iterable[tuple[int, int]]) -> "Digraph":
        out = list(self.out)
        for i, j in arcs:
            out[i] &= ~(1 << j)
        return Digraph(self.n, tuple(out))

    def restrict_arcs(self, mask: int) -> "Digraph":
        """Same vertex set, keeping only arcs with both ends in ``mask``."""
        return Digraph(self.n, tuple((m & mask) if (mask >> i) & 1 else 0
                                     for i, m in enumerate(self.out)))

    def is_arc_subgraph_of(self, other: "Digraph") -> bool:
        """True iff ``self`` is an arc-deleted subgraph of ``other``."""
        return self.n == other.n and all(a & ~b == 0 for a, b in zip(self.out, other.out))


def permute(g: Digraph, perm: Sequence[int]) -> Digraph:
    """Relabel: old vertex ``v`` becomes ``perm[v]``."""
    out = [0] * g.n
    for i in range(g.n):
        m = 0
        for j in members(g.out[i]):
            m |= 1 << perm[j]
        out[perm[i]] = m
    return Digraph(g.n, tuple(out))


def induced_subgraph(g: Digraph, s: int | Iterable[int]) -> tuple[Digraph, list[int]]:
    """Induced subgraph on ``s`` relabelled densely.

    Returns the subgraph and the list ``old_of_new`` mapping each new label to
    the original vertex (so ``g_sub`` vertex ``k`` is ``old_of_new[k]`` in g).
    """
    mask = s if isinstance(s, int) else mask_of(s)
    if mask == 0:
        raise ValueError("empty vertex set")
    if mask & ~g.full_mask:
        raise ValueError("vertex set is not a subset of V(g)")
    old = members(mask)
    new_of = {v: k for k, v in enumerate(old)}
    out = []
    for v in old:
        m = 0
        for j in members(g.out[v] & mask):
            m |= 1 << new_of[j]
        out.append(m)
    return Digraph(len(old), tuple(out)), old


# -- cycles ------------------------------------------------------------------

def is_acyclic_mask(g: Digraph, mask: int) -> bool:
    """True iff the subgraph induced by ``mask`` has no directed cycle.

    Repeatedly strips vertices with no out-arcs inside the remaining set.
    """
    out = g.out
    while mask:
        progressed = False
        rest = mask
        while rest:
            low = rest & -rest
            v = low.bit_length() - 1
            rest ^= low
            if out[v] & mask == 0:
                mask ^= low
                progressed = True
        if not progressed:
            return False
    return True


def is_acyclic(g: Digraph) -> bool:
    return is_acyclic_mask(g, g.full_mask)


def edges(g: Digraph) -> set[frozenset[int]]:
    """All 2-cycles ``i <-> j`` as unordered pairs."""
    return {frozenset((i, j)) for i, j in g.arcs if i < j and g.has_arc(j, i)}


def cyclic_vertices(g: Digraph) -> int:
    """Mask of vertices lying on at least one directed cycle."""
    reach = list(g.out)
    # transitive closure over bitmasks; n <= 16 keeps this cheap
    changed = True
    while changed:
        changed = False
        for i in range(g.n):
            r = reach[i]
            acc = r
            for j in members(r):
                acc |= reach[j]
            if acc != r:
                reach[i] = acc
                changed = True
    return mask_of(i for i in range(g.n) if (reach[i] >> i) & 1)


def simple_cycles(g: Digraph, within: int | None = None) -> Iterator[tuple[int, ...]]:
    """Every directed simple cycle once, starting at its smallest vertex.

    Cycles are produced in DFS order with out-neighbours visited ascending.
    """
    allowed = g.full_mask if within is None else within
    out = g.out
    for s in members(allowed):
        higher = allowed & ~((1 << (s + 1)) - 1)
        path = [s]

        def dfs(v: int, used: int) -> Iterator[tuple[int, ...]]:
            nxt = out[v]
            if (nxt >> s) & 1 and len(path) >= 2:
                yield tuple(path)
            for w in members(nxt & higher & ~used):
                path.append(w)
                yield from dfs(w, used | (1 << w))
                path.pop()

        yield from dfs(s, 1 << s)


def find_cycle_through(g: Digraph, required: int | Iterable[int] = 0) -> tuple[int, ...] | None:
    """Shortest directed cycle containing every vertex of ``required``.

    The cycle is reported starting from the smallest required vertex (or the
    smallest vertex of the cycle when nothing is required); among cycles of
    equal length the lexicographically smallest sequence wins.
    Returns ``None`` if no such cycle exists.
    """
    req = required if isinstance(required, int) else mask_of(required)
    out = g.out
    starts = [members(req)[0]] if req else list(range(g.n))
    best: tuple[int, ...] | None = None
    for length in range(2, g.n + 1):
        for s in starts:
            # when nothing is required, s must be the cycle's minimum vertex
            allowed = g.full_mask if req else g.full_mask & ~((1 << s) - 1)
            path = [s]

            def dfs(v: int, used: int) -> tuple[int, ...] | None:
                if len(path) == length:
                    if (out[v] >> s) & 1 and used & req == req:
                        return tuple(path)
                    return None
                for w in members(out[v] & allowed & ~used):
                    path.append(w)
                    hit = dfs(w, used | (1 << w))
                    path.pop()
                    if hit:
                        return hit
                return None

            hit = dfs(s, 1 << s)
            if hit and (best is None or hit < best):
                best = hit
        if best is not None:
            return best
    return None


# -- canonical form ----------------------------------------------------------

@dataclass(frozen=True)
class CanonicalForm:
    """Minimal adjacency bit string over degree-respecting relabellings.

    ``code`` packs the relabelled adjacency matrix row-major with entry
    (0, 0) as the most significant bit.  ``perm[v]`` is the new label of
    vertex ``v`` in the achieving relabelling.
    """

    n: int
    code: int
    perm: tuple[int, ...]

    @property
    def key(self) -> str:
        return f"{self.n}:{self.code:0{(self.n * self.n + 3) // 4}x}"

    def graph(self) -> Digraph:
        return from_code(self.n, self.code)


def _bit(n: int, i: int, j: int) -> int:
    return n * (n - 1 - i) + (n - 1 - j)


def to_code(g: Digraph) -> int:
    n = g.n
    return sum(1 << _bit(n, i, j) for i, j in g.arcs)


def from_code(n: int, code: int) -> Digraph:
    return Digraph.from_arcs(n, [(i, j) for i in range(n) for j in range(n)
                                 if i != j and (code >> _bit(n, i, j)) & 1])


def _vertex_keys(g: Digraph) -> list[tuple[int, int]]:
    return [(popcount(g.out[v]), popcount(g.inn[v])) for v in range(g.n)]


def canonical_form(g: Digraph) -> CanonicalForm:
    """Canonical labelling: smallest code among relabellings that list
    vertices in non-decreasing (out-degree, in-degree) order."""
    n = g.n
    if n > MAX_CANONICAL_VERTICES:
        raise ValueError(f"canonical form limited to n <= {MAX_CANONICAL_VERTICES}")
    keys = _vertex_keys(g)
    order = sorted(range(n), key=lambda v: keys[v])
    blocks: list[list[int]] = []
    for v in order:
        if blocks and keys[blocks[-1][0]] == keys[v]:
            blocks[-1].append(v)
        else:
            blocks.append([v])
    out = g.out
    best_code = None
    best_perm = None
    for choice in itertools.product(*(itertools.permutations(b) for b in blocks)):
        old_at = [v for block in choice for v in block]
        perm = [0] * n
        for new, old in enumerate(old_at):
            perm[old] = new
        code = 0
        for new, old in enumerate(old_at):
            row = 0
            for j in members(out[old]):
                row |= 1 << (n - 1 - perm[j])
            code = (code << n) | row
        if best_code is None or code < best_code:
            best_code = code
            best_perm = tuple(perm)
    return CanonicalForm(n, best_code, best_perm)


def are_isomorphic(g: Digraph, h: Digraph) -> bool:
    return g.n == h.n and canonical_form(g).code == canonical_form(h).code


def isomorphism(g: Digraph, h: Digraph) -> tuple[int, ...] | None:
    """A relabelling ``phi`` with ``permute(g, phi) == h``, or None."""
    if g.n != h.n:
        return None
    cg, ch = canonical_form(g), canonical_form(h)
    if cg.code != ch.code:
        return None
    inv_h = [0] * h.n
    for v, p in enumerate(ch.perm):
        inv_h[p] = v
    return tuple(inv_h[cg.perm[v]] for v in range(g.n))


def _batch_canonical_codes(codes: np.ndarray, n: int) -> np.ndarray:
    """Vectorised canonical codes for many n-vertex graphs given as codes.

    Uses exactly the admissible relabellings of :func:`canonical_form`, so
    results agree bit for bit.
    """
    codes = codes.astype(np.int64)
    bits = {(i, j): (codes >> _bit(n, i, j)) & 1 for i in range(n) for j in range(n) if i != j}
    outdeg = np.stack([sum(bits[i, j] for j in range(n) if j != i) for i in range(n)], axis=1)
    indeg = np.stack([sum(bits[j, i] for j in range(n) if j != i) for i in range(n)], axis=1)
    key = outdeg * (n + 1) + indeg
    best = np.full(codes.shape, np.iinfo(np.int64).max, dtype=np.int64)
    for old_at in itertools.permutations(range(n)):
        perm = [0] * n
        for new, old in enumerate(old_at):
            perm[old] = new
        seq = key[:, list(old_at)]
        ok = np.all(seq[:, :-1] <= seq[:, 1:], axis=1) if n > 1 else np.ones(len(codes), bool)
        if not ok.any():
            continue
        new_code = np.zeros_like(codes)
        for (i, j), b in bits.items():
            new_code |= b << _bit(n, perm[i], perm[j])
        np.minimum(best, np.where(ok, new_code, best), out=best)
    return best


def enumerate_nonisomorphic(n: int) -> list[Digraph]:
    """One representative per isomorphism class, sorted by canonical code.

    n <= 4 canonicalises every arc set; n = 5 extends each 4-vertex class by
    one vertex with all in/out patterns.
    """
    if not 1 <= n <= 5:
        raise ValueError("enumeration supports 1 <= n <= 5")
    if n == 1:
        return [Digraph.empty(1)]
    if n <= 4:
        pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
        raw = np.zeros(1 << len(pairs), dtype=np.int64)
        idx = np.arange(1 << len(pairs), dtype=np.int64)
        for k, (i, j) in enumerate(pairs):
            raw |= ((idx >> k) & 1) << _bit(n, i, j)
    else:
        base = enumerate_nonisomorphic(4)
        chunks = []
        pattern = np.arange(256, dtype=np.int64)
        for h in base:
            c = np.zeros(256, dtype=np.int64)
            for i, j in h.arcs:
                c |= 1 << _bit(5, i, j)
            for v in range(4):
                c |= ((pattern >> v) & 1) << _bit(5, 4, v)
                c |= ((pattern >> (4 + v)) & 1) << _bit(5, v, 4)
            chunks.append(c)
        raw = np.concatenate(chunks)
    canon = np.unique(_batch_canonical_codes(raw, n))
    return [from_code(n, int(c)) for c in canon]


# -- text format ---------------------------------------------------------------

def format_edge_list(g: Digraph) -> str:
    return f"n={g.n}\n{g.arc_string()}\n"


def parse_edge_lists(text: str) -> list[Digraph]:
    """Parse records of ``n=<k>`` then a comma-separated ``i->j`` arc line.

    Records are separated by blank lines.  Self-loops and duplicate arcs are
    rejected with ``ValueError``.
    """
    graphs = []
    for record in re.split(r"\n\s*\n", text.strip()):
        lines = [ln.strip() for ln in record.strip().splitlines() if ln.strip()]
        if not lines:
            continue
        m = re.fullmatch(r"n\s*=\s*(\d+)", lines[0])
        if not m:
            raise ValueError(f"expected 'n=<k>' header, got {lines[0]!r}")
        n = int(m.group(1))
        if len(lines) > 2:
            raise ValueError("an edge-list record has at most two lines")
        arcs = []
        if len(lines) == 2:
            for tok in lines[1].split(","):
                tok = tok.strip()
                if not tok:
                    continue
                am = re.fullmatch(r"(\d+)\s*->\s*(\d+)", tok)
                if not am:
                    raise ValueError(f"bad arc token {tok!r}")
                arcs.append((int(am.group(1)) - 1, int(am.group(2)) - 1))
        graphs.append(Digraph.from_arcs(n, arcs))
    return graphs

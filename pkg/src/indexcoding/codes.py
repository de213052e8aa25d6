"""Index codes: representation, brute-force decodability and constructions."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .digraph import Digraph, induced_subgraph, mask_of, members
from .structure import Fig2Structure, find_fig2, find_two_disjoint_cycles, iter_fig2

MAX_STATES = 1 << 20


class CodeError(ValueError):
    pass


@dataclass(frozen=True)
class LinearCode:
    """Rows of coefficients over Z_s.

    ``rows[r][v * t + k]`` multiplies slot ``k`` of message ``v``.  ``ring``
    is ``None`` when the code is meant for every ring Z_m; such codes use
    coefficients in {0, 1} or, for signed covers, {-1, 0, 1} read mod m.
    Otherwise the code is only claimed over Z_ring.
    """

    n: int
    t: int
    rows: tuple[tuple[int, ...], ...]
    ring: int | None = None

    def __post_init__(self):
        if self.t < 1:
            raise CodeError("vector dimension must be at least 1")
        if not self.rows:
            raise CodeError("a code needs at least one row")
        for r in self.rows:
            if len(r) != self.n * self.t:
                raise CodeError("row width does not match n * t")
            if not any(r):
                raise CodeError("every row must touch a message slot")
        if self.ring is None and any(c not in (-1, 0, 1) for r in self.rows for c in r):
            raise CodeError("ring-agnostic codes must use coefficients in {-1, 0, 1}")

    @property
    def p(self) -> int:
        return len(self.rows)

    @property
    def normalized_length(self) -> Fraction:
        return Fraction(self.p, self.t)

    @property
    def is_binary(self) -> bool:
        """All coefficients are 0 or 1."""
        return all(c in (0, 1) for r in self.rows for c in r)

    @property
    def degenerate_rows(self) -> list[int]:
        """Rows that carry one message slot in the clear."""
        return [k for k, r in enumerate(self.rows) if sum(1 for c in r if c) == 1]

    def matrix(self, m: int) -> np.ndarray:
        return np.array(self.rows, dtype=np.int64) % m

    def relabel(self, perm: Sequence[int]) -> "LinearCode":
        """Message ``v`` becomes message ``perm[v]``."""
        t = self.t
        rows = []
        for r in self.rows:
            new = [0] * len(r)
            for v in range(self.n):
                new[perm[v] * t:(perm[v] + 1) * t] = r[v * t:(v + 1) * t]
            rows.append(tuple(new))
        return LinearCode(self.n, t, tuple(rows), self.ring)

    def __str__(self) -> str:
        parts = []
        for r in self.rows:
            terms = []
            for v in range(self.n):
                for k in range(self.t):
                    c = r[v * self.t + k]
                    if c:
                        name = f"X{v + 1}" if self.t == 1 else f"X{v + 1}^({k + 1})"
                        if c == 1:
                            terms.append(("+", name))
                        elif c == -1:
                            terms.append(("-", name))
                        else:
                            terms.append(("+", f"{c}*{name}"))
            text = "".join(sign + name for sign, name in terms)
            parts.append(text[1:] if text.startswith("+") else text)
        return "[" + ", ".join(parts) + "]"

    def to_json(self) -> dict:
        return {"n": self.n, "t": self.t, "p": self.p,
                "ring": "any" if self.ring is None else self.ring,
                "rows": [list(r) for r in self.rows]}

    @classmethod
    def from_json(cls, data: dict | str) -> "LinearCode":
        if isinstance(data, str):
            data = json.loads(data)
        ring = None if data["ring"] == "any" else int(data["ring"])
        code = cls(int(data["n"]), int(data["t"]), tuple(tuple(int(c) for c in r) for r in data["rows"]), ring)
        if code.p != int(data["p"]):
            raise CodeError("row count does not match p")
        return code


@dataclass(frozen=True)
class GeneralCode:
    """Arbitrary encoder given as a table over message tuples.

    Tuples are indexed mixed-radix with message 0 most significant; each
    message ranges over ``alphabet`` symbols.
    """

    n: int
    alphabet: int
    table: tuple[int, ...]

    def __post_init__(self):
        if len(self.table) != self.alphabet ** self.n:
            raise CodeError("table must cover every message tuple")

    @property
    def codewords(self) -> int:
        return len(set(self.table))


def identity_code(n: int) -> LinearCode:
    return LinearCode(n, 1, tuple(tuple(int(v == r) for v in range(n)) for r in range(n)))


def _row(n: int, vertices: Iterable[int], rest: Iterable[int] = (), sign: int = 1) -> tuple[int, ...]:
    r = [0] * n
    for v in vertices:
        r[v] = 1
    for v in rest:
        r[v] = sign
    return tuple(r)


def code_from_sums(n: int, sums: Iterable[Iterable[int]]) -> LinearCode:
    """Scalar 0/1 code from 0-based vertex lists, one list per row."""
    return LinearCode(n, 1, tuple(_row(n, s) for s in sums))


def parse_sums(n: int, text: str) -> LinearCode:
    """Scalar code from 1-based notation like ``"1+2+3, 4+5"``."""
    return code_from_sums(n, [[int(v) - 1 for v in part.split("+")] for part in text.split(",")])


# -- decodability ---------------------------------------------------------------

def _tuples(n: int, q: int) -> np.ndarray:
    idx = np.arange(q ** n, dtype=np.int64)
    cols = [(idx // q ** (n - 1 - v)) % q for v in range(n)]
    return np.stack(cols, axis=1)


def verify_decodable(g: Digraph, code: LinearCode | GeneralCode, m: int, t: int | None = None) -> bool:
    """True iff every receiver recovers its message from codeword + side info.

    Messages take ``m**t`` values.  The check groups all tuples by
    (codeword, known messages) and requires the wanted message to be
    constant on every group.
    """
    if isinstance(code, LinearCode):
        t = code.t if t is None else t
        if t != code.t:
            raise CodeError(f"code has t={code.t}, asked to verify at t={t}")
        if code.ring is not None and m != code.ring:
            raise CodeError(f"code is stated over Z_{code.ring}, not Z_{m}")
    else:
        t = 1 if t is None else t
        if code.alphabet != m ** t:
            raise CodeError("general code alphabet differs from m**t")
    if m < 2 or t < 1:
        raise CodeError("need m >= 2 and t >= 1")
    if code.n != g.n:
        raise CodeError("code and graph disagree on n")
    q = m ** t
    n = g.n
    if q ** n > MAX_STATES:
        raise CodeError(f"state space {q}^{n} exceeds {MAX_STATES}")
    msgs = _tuples(n, q)
    if isinstance(code, LinearCode):
        # split each message into t components over Z_m, slot 0 most significant
        comps = np.empty((msgs.shape[0], n * t), dtype=np.int64)
        for v in range(n):
            for k in range(t):
                comps[:, v * t + k] = (msgs[:, v] // m ** (t - 1 - k)) % m
        words = (comps @ code.matrix(m).T) % m
        if m ** code.p <= q ** n:
            word_id = words @ (m ** np.arange(code.p - 1, -1, -1, dtype=np.int64))
        else:
            _, word_id = np.unique(words, axis=0, return_inverse=True)
            word_id = word_id.reshape(-1).astype(np.int64)
    else:
        word_id = np.asarray(code.table, dtype=np.int64)
    for i in range(n):
        key = word_id.copy()
        for j in members(g.out[i]):
            key = key * q + msgs[:, j]
        # word ids stay below q^n, so keys stay below q^(2n) <= 2^40
        groups = np.unique(key).size
        if np.unique(key * q + msgs[:, i]).size != groups:
            return False
    return True


def verify_all(g: Digraph, code: LinearCode, ms: Iterable[int] = (2, 3)) -> bool:
    return all(verify_decodable(g, code, m) for m in ms)


# -- cycles, cliques, interlinked cycles -----------------------------------------

def cycle_code(cycle: Sequence[int], n: int) -> LinearCode:
    """``X_c1 + X_c2, ..., X_c(L-1) + X_cL`` for a cycle of length L >= 2."""
    if len(cycle) < 2:
        raise CodeError("cycle length must be at least 2")
    return code_from_sums(n, [(a, b) for a, b in zip(cycle, cycle[1:])])


def clique_code(n: int, clique: Iterable[int] | None = None) -> LinearCode:
    """One sum over the clique, remaining messages uncoded."""
    q = list(range(n)) if clique is None else sorted(clique)
    rest = [[v] for v in range(n) if v not in q]
    return code_from_sums(n, [q] + rest)


def combine_scalar(n: int, parts: Iterable[LinearCode], uncoded: Iterable[int] = ()) -> LinearCode:
    rows = [r for c in parts for r in c.rows] + [_row(n, [v]) for v in sorted(uncoded)]
    return LinearCode(n, 1, tuple(rows))


def _reach_within(g: Digraph, src: int, allowed: int) -> int:
    """Vertices reachable from src by a path whose vertices after src lie in allowed."""
    seen = 0
    frontier = g.out[src] & allowed
    while frontier:
        seen |= frontier
        nxt = 0
        for v in members(frontier):
            nxt |= g.out[v]
        frontier = nxt & allowed & ~seen
    return seen


def _count_paths(g: Digraph, i: int, j: int, avoid: int, cap: int = 2) -> int:
    """Number of simple i->j paths with internal vertices outside ``avoid``."""
    count = 0

    def dfs(v: int, used: int):
        nonlocal count
        for w in members(g.out[v] & ~used):
            if count >= cap:
                return
            if w == j:
                count += 1
            elif not (avoid >> w) & 1:
                dfs(w, used | (1 << w))

    dfs(i, 1 << i)
    return count


def interlinked_violation(g: Digraph, inner: int | Iterable[int]) -> str | None:
    """Why ``inner`` fails to make ``g`` an interlinked cycle, or None."""
    vi = inner if isinstance(inner, int) else mask_of(inner)
    if vi == 0:
        return "inner-vertex set is empty"
    if vi & ~g.full_mask:
        return "inner-vertex set is not inside the graph"
    for v in members(vi):
        allowed = g.full_mask & ~vi
        if (_reach_within(g, v, allowed | (1 << v)) >> v) & 1:
            return f"a cycle contains only inner vertex {v + 1}"
    for i in members(vi):
        for j in members(vi):
            if i != j:
                c = _count_paths(g, i, j, vi)
                if c != 1:
                    what = "no" if c == 0 else "more than one"
                    return f"{what} path from {i + 1} to {j + 1} avoiding other inner vertices"
    return None


def is_interlinked_cycle(g: Digraph, inner: int | Iterable[int]) -> bool:
    return interlinked_violation(g, inner) is None


def super_vertex_violation(g: Digraph, vs: int) -> str | None:
    ms = members(vs)
    if len(ms) < 2:
        return "a super-vertex set needs at least two vertices"
    for i in ms:
        if (g.out[i] | (1 << i)) & vs != vs:
            return f"vertex {i + 1} lacks an arc inside the super-vertex set"
    i0 = ms[0]
    for i in ms[1:]:
        if g.out[i] & ~vs != g.out[i0] & ~vs or g.inn[i] & ~vs != g.inn[i0] & ~vs:
            return f"vertices {i0 + 1} and {i + 1} connect differently outside the super-vertex set"
    return None


def path_parity_consistent(g: Digraph, inner: int | Iterable[int]) -> bool:
    """True iff, from each inner vertex, the inner-avoiding paths to all other
    inner vertices have lengths of one parity.

    Under this condition the all-plus cover decodes over every ring Z_m by
    alternating sums; otherwise it may only work in characteristic 2.
    """
    vi = inner if isinstance(inner, int) else mask_of(inner)
    for i in members(vi):
        parities = set()
        stack = [(i, 0, 1 << i)]
        while stack:
            v, depth, used = stack.pop()
            for w in members(g.out[v] & ~used):
                if (vi >> w) & 1:
                    parities.add((depth + 1) % 2)
                else:
                    stack.append((w, depth + 1, used | (1 << w)))
        if len(parities) > 1:
            return False
    return True


def interlinked_cycle_code(g: Digraph, inner: int | Iterable[int],
                           super_set: int | Iterable[int] | None = None,
                           signed: bool = False) -> LinearCode:
    """Interlinked-cycle cover code of length n - |inner| + 1 (after contraction).

    Rows are the inner sum and ``X_j + sum of X_k over N+(j)`` per other
    vertex.  ``signed`` subtracts the out-neighbours instead, which decodes
    over every ring Z_m even when path lengths have mixed parity.
    """
    vi = inner if isinstance(inner, int) else mask_of(inner)
    if super_set is None:
        bad = interlinked_violation(g, vi)
        if bad:
            raise CodeError(f"not an interlinked cycle: {bad}")
        rows = [_row(g.n, members(vi))]
        for j in range(g.n):
            if not (vi >> j) & 1:
                rows.append(_row(g.n, [j], members(g.out[j]), -1 if signed else 1))
        return LinearCode(g.n, 1, tuple(rows))
    vs = super_set if isinstance(super_set, int) else mask_of(super_set)
    if vs & vi:
        raise CodeError("super vertex may not be an inner vertex")
    bad = super_vertex_violation(g, vs)
    if bad:
        raise CodeError(f"invalid super vertex: {bad}")
    # contract V_s to its smallest member
    keep = (g.full_mask & ~vs) | (vs & -vs)
    h, old = induced_subgraph(g, keep)
    new_of = {v: k for k, v in enumerate(old)}
    inner_h = mask_of(new_of[v] for v in members(vi))
    small = interlinked_cycle_code(h, inner_h, signed=signed)
    p = new_of[members(vs)[0]]
    rows = []
    for r in small.rows:
        full = [0] * g.n
        for k, c in enumerate(r):
            if not c:
                continue
            targets = members(vs) if k == p else [old[k]]
            for v in targets:
                full[v] = c
        rows.append(tuple(full))
    return LinearCode(g.n, 1, tuple(rows))


# -- the general construction for mais >= n - 2 ------------------------------------

def theorem1_code(g: Digraph) -> LinearCode:
    """Scalar 0/1 code of length mais(g) whenever mais(g) >= n - 2."""
    from .bounds import mais

    n = g.n
    k = mais(g)
    if k < n - 2:
        raise CodeError(f"needs mais >= n - 2, got mais={k} with n={n}")
    if k == n:
        return identity_code(n)
    if k == n - 1:
        from .digraph import find_cycle_through
        cyc = find_cycle_through(g)
        return combine_scalar(n, [cycle_code(cyc, n)], set(range(n)) - set(cyc))
    pair = find_two_disjoint_cycles(g)
    if pair is not None:
        c1, c2 = pair
        return combine_scalar(n, [cycle_code(c1, n), cycle_code(c2, n)],
                              set(range(n)) - set(c1) - set(c2))
    s = find_fig2(g)
    if s is None:
        raise CodeError("no two disjoint cycles and no hexagon structure found")
    if path_parity_consistent(s.subgraph(n), s.hub_mask):
        return fig2_code(g, s)
    # the signed cover always decodes; keep it 0/1 when some relabelling allows
    signed = fig2_code(g, s, signed=True)
    plain = unsign(signed)
    if plain is not None:
        return plain
    for other in iter_fig2(g):
        if path_parity_consistent(other.subgraph(n), other.hub_mask):
            return fig2_code(g, other)
    return signed


def fig2_code(g: Digraph, s: Fig2Structure, signed: bool = False) -> LinearCode:
    """Interlinked-cycle cover of the structure subgraph; other vertices uncoded."""
    sub = s.subgraph(g.n)
    if not sub.is_arc_subgraph_of(g):
        raise CodeError("structure is not a subgraph of the graph")
    return interlinked_cycle_code(sub, s.hub_mask, signed=signed)


# -- five-vertex catalogue codes -----------------------------------------------------

def _embeddings(h: Digraph, g: Digraph):
    """Relabellings ``perm`` with permute(h, perm) an arc-subgraph of g."""
    n = g.n
    for perm in itertools.permutations(range(n)):
        ok = True
        for i in range(n):
            img = 0
            for j in members(h.out[i]):
                img |= 1 << perm[j]
            if img & ~g.out[perm[i]]:
                ok = False
                break
        if ok:
            yield perm


@dataclass(frozen=True)
class CatalogMatch:
    name: str
    perm: tuple[int, ...]
    code: LinearCode


def match_catalog(g: Digraph) -> CatalogMatch | None:
    """First catalogue graph (priority order) embedded in g as an arc-subgraph."""
    from .catalog.reference import catalog_entries

    for entry in catalog_entries():
        if entry.code is None or entry.graph.n != g.n:
            continue
        for perm in _embeddings(entry.graph, g):
            code = parse_sums(5, entry.code).relabel(perm)
            return CatalogMatch(entry.name, tuple(perm), code)
    return None


def search_two_row_code(g: Digraph, alphabet: Sequence[int] = (0, 1),
                        ms: Sequence[int] = (2, 3, 4, 5)) -> LinearCode | None:
    """Exhaustive search over 2-row codes with the given coefficients."""
    n = g.n
    vectors = [v for v in itertools.product(alphabet, repeat=n) if any(v)]
    ring_free = set(alphabet) <= {0, 1}
    for r1, r2 in itertools.combinations(vectors, 2):
        if ring_free:
            code = LinearCode(n, 1, (r1, r2))
            if all(verify_decodable(g, code, m) for m in ms):
                return code
        else:
            for m in ms:
                code = LinearCode(n, 1, (r1, r2), m)
                if not verify_decodable(g, code, m):
                    break
            else:
                return LinearCode(n, 1, (r1, r2), max(alphabet) + 1)
    return None


def length2_code_5v(g: Digraph) -> LinearCode:
    """Length-2 scalar code for a five-vertex graph with mais 2 outside G_s."""
    from .bounds import mais
    from .catalog.reference import classify_gs

    if g.n != 5:
        raise CodeError("length2_code_5v needs five vertices")
    if mais(g) != 2:
        raise CodeError("length2_code_5v needs mais = 2")
    if classify_gs(g) is not None:
        raise CodeError("graph is in G_s, which has no length-2 code")
    hit = match_catalog(g)
    if hit is not None:
        return hit.code
    code = search_two_row_code(g) or search_two_row_code(g, (0, 1, 2))
    if code is None:
        raise CodeError("no length-2 code found")
    return code


def gs_vector_code(g: Digraph) -> LinearCode:
    """Normalised length 5/2 vector code (t = 2) for a member of G_s."""
    from .catalog.reference import classify_gs, gs_family_code

    hit = classify_gs(g)
    if hit is None:
        raise CodeError("graph is not in G_s")
    # hit.perm maps g onto the labelled member; pull the code back
    inv = [0] * g.n
    for v, p in enumerate(hit.perm):
        inv[p] = v
    return gs_family_code(hit.family).relabel(inv)


def concatenate(c1: LinearCode, c2: LinearCode) -> LinearCode:
    """Time-share two codes on disjoint slots of each message."""
    if c1.n != c2.n:
        raise CodeError("codes disagree on n")
    if c1.ring is not None and c2.ring is not None and c1.ring != c2.ring:
        raise CodeError("codes are over different rings")
    n, t = c1.n, c1.t + c2.t
    rows = []
    for c, offset in ((c1, 0), (c2, c1.t)):
        for r in c.rows:
            new = [0] * (n * t)
            for v in range(n):
                for k in range(c.t):
                    new[v * t + offset + k] = r[v * c.t + k]
            rows.append(tuple(new))
    return LinearCode(n, t, tuple(rows), c1.ring if c1.ring is not None else c2.ring)


def unsign(code: LinearCode) -> LinearCode | None:
    """An equivalent 0/1 code obtained by negating rows and messages, if any.

    Negating message v relabels its alphabet bijectively and negating a row
    is invertible, so decodability over every ring is preserved.
    """
    if code.is_binary:
        return code
    n_cols = code.n * code.t
    row_sign: list[int | None] = [None] * code.p
    col_sign: list[int | None] = [None] * n_cols
    for start in range(code.p):
        if row_sign[start] is not None:
            continue
        row_sign[start] = 1
        stack = [("r", start)]
        while stack:
            kind, k = stack.pop()
            if kind == "r":
                for c in range(n_cols):
                    e = code.rows[k][c]
                    if e:
                        want = e * row_sign[k]
                        if col_sign[c] is None:
                            col_sign[c] = want
                            stack.append(("c", c))
                        elif col_sign[c] != want:
                            return None
            else:
                for r in range(code.p):
                    e = code.rows[r][k]
                    if e:
                        want = e * col_sign[k]
                        if row_sign[r] is None:
                            row_sign[r] = want
                            stack.append(("r", r))
                        elif row_sign[r] != want:
                            return None
    rows = tuple(tuple(abs(e) for e in r) for r in code.rows)
    return LinearCode(code.n, code.t, rows, code.ring)

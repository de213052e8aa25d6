"""Exhaustive survey of all digraphs on up to five vertices."""

from __future__ import annotations

import itertools
import json
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction

from ..bounds import mais_with_witness, minrank2, shannon_lower_bound
from ..codes import (CodeError, LinearCode, clique_code, gs_vector_code, length2_code_5v,
                     match_catalog, theorem1_code, verify_decodable)
from ..digraph import Digraph, canonical_form, edges, enumerate_nonisomorphic, induced_subgraph, is_acyclic, mask_of
from .reference import build_gs_set, catalog_entries, classify_gs

TABLE_I = {1: 1, 2: 3, 3: 16, 4: 218, 5: 9608}
KNOWN_BEFORE = {1: 1, 2: 3, 3: 9, 4: 41, 5: 334}


class SurveyError(AssertionError):
    def __init__(self, key: str, reason: str):
        super().__init__(f"graph {key}: {reason}")
        self.key = key


# -- "perfect" in the symmetric-digraph sense -----------------------------------------

def is_symmetric(g: Digraph) -> bool:
    return all(g.has_arc(j, i) for i, j in g.arcs)


def _is_cycle_graph(adj: list[int], verts: list[int]) -> bool:
    vm = mask_of(verts)
    if any(bin(adj[v] & vm).count("1") != 2 for v in verts):
        return False
    seen, frontier = 1 << verts[0], 1 << verts[0]
    while frontier:
        nxt = 0
        for v in verts:
            if (frontier >> v) & 1:
                nxt |= adj[v] & vm
        frontier = nxt & ~seen
        seen |= frontier
    return seen == vm


def is_perfect_symmetric(g: Digraph) -> bool:
    """Symmetric with no induced odd hole or odd antihole of length >= 5."""
    if not is_symmetric(g):
        return False
    adj = list(g.out)
    comp = [g.full_mask & ~(1 << v) & ~adj[v] for v in range(g.n)]
    for k in range(5, g.n + 1, 2):
        for verts in itertools.combinations(range(g.n), k):
            if _is_cycle_graph(adj, list(verts)) or _is_cycle_graph(comp, list(verts)):
                return False
    return True


def stratum(g: Digraph, in_gs: bool) -> str:
    if in_gs:
        return "gs"
    if is_acyclic(g) or is_perfect_symmetric(g):
        return "acyclic_or_perfect"
    return "other"


# -- per-graph report --------------------------------------------------------------

@dataclass
class RateReport:
    key: str
    n: int
    arcs: str
    mais: int
    minrank2: int
    shannon: Fraction
    gs: bool
    family: str | None
    rate: Fraction
    construction: str
    code: LinearCode
    stratum: str
    checks: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def to_json(self) -> dict:
        d = {k: v for k, v in asdict(self).items() if k not in ("code", "shannon", "rate")}
        d["shannon"] = str(self.shannon)
        d["rate"] = str(self.rate)
        d["code"] = self.code.to_json()
        return d


def construct(g: Digraph, k: int, in_gs: bool) -> tuple[str, LinearCode]:
    n = g.n
    if in_gs:
        return "gs_vector", gs_vector_code(g)
    if k >= n - 2:
        return "theorem1", theorem1_code(g)
    if k == 1:
        return "clique", clique_code(n)
    if n == 5 and k == 2:
        return "length2", length2_code_5v(g)
    raise CodeError(f"no construction for n={n}, mais={k}")


def analyze(g: Digraph, ms=(2, 3), extra_ms=()) -> RateReport:
    cf = canonical_form(g)
    key = cf.key
    k = mais_with_witness(g).size
    mr = minrank2(g, lower=k).rank
    lp = shannon_lower_bound(g)
    hit = classify_gs(g)
    in_gs = hit is not None
    name, code = construct(g, k, in_gs)
    checks = {}
    for m in tuple(ms) + tuple(extra_ms):
        checks[f"decodes_m{m}"] = verify_decodable(g, code, m)
    if in_gs:
        checks["mais_is_2"] = k == 2
        checks["shannon_is_5/2"] = lp == Fraction(5, 2)
        checks["code_p5_t2"] = (code.p, code.t) == (5, 2)
        checks["minrank_is_3"] = mr == 3
        rate = Fraction(5, 2)
    else:
        checks["minrank_eq_mais"] = mr == k
        checks["shannon_eq_mais"] = lp == k
        checks["scalar_length_eq_mais"] = code.t == 1 and code.p == k
        rate = Fraction(k)
    checks["sandwich"] = k <= lp <= mr
    return RateReport(key, g.n, g.arc_string(), k, mr, lp, in_gs,
                      hit.family if hit else None, rate, name, code,
                      stratum(g, in_gs), checks)


def _work(args):
    g, ms, extra = args
    return analyze(g, ms, extra)


def all_classes(n_max: int) -> list[Digraph]:
    if not 1 <= n_max <= 5:
        raise ValueError("survey covers 1 <= n_max <= 5")
    return [g for n in range(1, n_max + 1) for g in enumerate_nonisomorphic(n)]


def full_survey(n_max: int = 5, jobs: int = 1, ms=(2, 3), spot_fraction: float = 0.01,
                seed: int = 0, strict: bool = True) -> list[RateReport]:
    """Reports for every class with 1..n_max vertices, in enumeration order.

    A seeded ``spot_fraction`` of graphs is also checked at m = 4 and 5.
    With ``strict`` the first failed check raises :class:`SurveyError`.
    """
    graphs = all_classes(n_max)
    rng = random.Random(seed)
    tasks = [(g, ms, (4, 5) if rng.random() < spot_fraction else ()) for g in graphs]
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as pool:
            reports = list(pool.map(_work, tasks, chunksize=64))
    else:
        reports = [_work(t) for t in tasks]
    if strict:
        for r in reports:
            if not r.ok:
                failed = [k for k, v in r.checks.items() if not v]
                raise SurveyError(r.key, f"failed {failed}")
    return reports


@dataclass
class SurveySummary:
    classes: int
    r_eq_mais: int
    gs: int
    per_n: dict
    known_before: dict
    strata_5: dict
    # the alternative split (mais >= 3 or mais = 1) versus the rest
    alt_split_5: dict
    failures: int

    def line(self) -> str:
        return f"classes={self.classes} r_eq_mais={self.r_eq_mais} gs={self.gs}"

    def table_checks(self) -> dict[str, bool]:
        out = {f"count_n{n}": self.per_n.get(n) == TABLE_I[n] for n in self.per_n}
        out.update({f"known_n{n}": self.known_before.get(n) == KNOWN_BEFORE[n] for n in self.known_before})
        if 5 in self.per_n:
            out["strata_5"] = self.strata_5 == {"acyclic_or_perfect": 334, "gs": 28, "other": 9246}
        return out


def summarize(reports: list[RateReport]) -> SurveySummary:
    per_n: dict[int, int] = {}
    known: dict[int, int] = {}
    strata = {"acyclic_or_perfect": 0, "gs": 0, "other": 0}
    alt = {"mais>=3_or_1": 0, "mais=2_non_gs": 0, "gs": 0}
    for r in reports:
        per_n[r.n] = per_n.get(r.n, 0) + 1
        if r.stratum == "acyclic_or_perfect":
            known[r.n] = known.get(r.n, 0) + 1
        if r.n == 5:
            strata[r.stratum] += 1
            if r.gs:
                alt["gs"] += 1
            elif r.mais == 2:
                alt["mais=2_non_gs"] += 1
            else:
                alt["mais>=3_or_1"] += 1
    for n in per_n:
        known.setdefault(n, 0)
    return SurveySummary(
        classes=len(reports),
        r_eq_mais=sum(1 for r in reports if not r.gs and r.rate == r.mais),
        gs=sum(1 for r in reports if r.gs),
        per_n=per_n, known_before=known, strata_5=strata, alt_split_5=alt,
        failures=sum(1 for r in reports if not r.ok))


def write_ndjson(reports: list[RateReport], path) -> None:
    with open(path, "w") as fh:
        for r in reports:
            fh.write(json.dumps(r.to_json(), sort_keys=True) + "\n")


# -- catalogue audit ---------------------------------------------------------------

@dataclass
class AuditRecord:
    graphs: int
    cycle_violations: list = field(default_factory=list)
    edge_violations: list = field(default_factory=list)
    catalog_misses: list = field(default_factory=list)
    per_entry: dict = field(default_factory=dict)

    @property
    def clean(self) -> bool:
        return not (self.cycle_violations or self.edge_violations or self.catalog_misses)


def appendix_b_audit(graphs: list[Digraph] | None = None) -> AuditRecord:
    """Structural facts about five-vertex graphs with mais 2.

    Every 3-vertex induced subgraph must hold a cycle, every 4-vertex one an
    edge, and every such graph outside G_s must contain a catalogue graph.
    """
    from ..bounds import mais

    if graphs is None:
        graphs = [g for g in enumerate_nonisomorphic(5) if mais(g) == 2]
    rec = AuditRecord(len(graphs), per_entry={e.name: 0 for e in catalog_entries() if e.code})
    for g in graphs:
        key = canonical_form(g).key
        for s in itertools.combinations(range(5), 3):
            if is_acyclic(induced_subgraph(g, s)[0]):
                rec.cycle_violations.append((key, s))
        for s in itertools.combinations(range(5), 4):
            if not edges(induced_subgraph(g, s)[0]):
                rec.edge_violations.append((key, s))
        if classify_gs(g) is None:
            hit = match_catalog(g)
            if hit is None:
                rec.catalog_misses.append(key)
            else:
                rec.per_entry[hit.name] += 1
    return rec


__all__ = [
    "AuditRecord", "RateReport", "SurveyError", "SurveySummary", "TABLE_I", "analyze",
    "appendix_b_audit", "build_gs_set", "full_survey", "is_perfect_symmetric", "summarize",
    "write_ndjson",
]

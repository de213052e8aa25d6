"""Reference graphs: the G_s family and the five-vertex catalogue.

All graphs use 1-based vertex labels in their definitions.  ``G_A`` and
``G_B`` follow the labelling under which the entropy chain is written.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from ..digraph import Digraph, canonical_form, isomorphism, permute


def _g(spec: str) -> Digraph:
    return Digraph.parse(5, spec)


def _arcs(spec: str) -> list[tuple[int, int]]:
    return sorted(_g(spec).arcs)


# -- G_s -------------------------------------------------------------------------

G_A_BASE = _g("1<->2, 3<->4, 4<->5, 5<->1, 2->3, 3->5, 5->2")
G_A_DOTTED = _arcs("3->1, 4->1, 4->2")
G_B_BASE = _g("1<->2<->3<->4<->5<->1")
G_B_DOTTED = _arcs("5->2, 4->1, 4->2, 3->1, 3->5")
G_A = G_A_BASE.with_arcs(G_A_DOTTED)
G_B = G_B_BASE.with_arcs(G_B_DOTTED)

# the same two graphs in the labelling of the figure that introduces G_s
G_A_ALT_BASE = _g("1<->2, 2<->3, 3<->4, 4<->5, 5->1, 1->3, 3->5")
G_A_ALT_DOTTED = _arcs("1->4, 2->4, 2->5")
G_B_ALT_BASE = _g("1<->2<->3<->4<->5<->1")
G_B_ALT_DOTTED = _arcs("1->3, 3->5, 2->5, 2->4, 1->4")

# G5.5a: five-cycle 1-3-5-2-4-1 plus five arcs
G5_5A = _g("1<->3<->5<->2<->4<->1, 1->2, 2->3, 4->3, 4->5, 1->5")

# t = 2 codes on the bases, as (message, slot) sums; slots are 1 and 2
_B_CODE = ["1.1+2.1", "2.2+3.2", "3.1+4.1", "4.2+5.2", "5.1+1.2"]
_A_CODE = ["3.1+4.1+5.1", "2.1+3.1", "3.2+4.2", "5.2+1.1", "1.2+2.2"]
# the G_A base code as printed, valid in the alternative labelling
_A_ALT_CODE = ["1.1+2.1+3.1", "5.1+1.1", "1.2+2.2", "3.2+4.1", "4.2+5.2"]


def _vector_code(rows: list[str]):
    from ..codes import LinearCode

    out = []
    for row in rows:
        r = [0] * 10
        for term in row.split("+"):
            v, k = term.split(".")
            r[(int(v) - 1) * 2 + int(k) - 1] = 1
        out.append(tuple(r))
    return LinearCode(5, 2, tuple(out))


def gs_family_code(family: str):
    """Normalised length 5/2 code valid on the base of the given family."""
    return _vector_code(_B_CODE if family == "B" else _A_CODE)


def gs_alt_a_code():
    return _vector_code(_A_ALT_CODE)


@dataclass(frozen=True)
class GsMember:
    family: str
    graph: Digraph
    dotted: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class GsReference:
    members: dict  # canonical code -> GsMember
    family_counts: dict  # family -> number of classes

    def __len__(self) -> int:
        return len(self.members)


@lru_cache(maxsize=1)
def build_gs_set() -> GsReference:
    """All dotted-arc subsets of G_A and G_B, deduplicated up to isomorphism."""
    members: dict[int, GsMember] = {}
    counts = {}
    for family, base, dotted in (("A", G_A_BASE, G_A_DOTTED), ("B", G_B_BASE, G_B_DOTTED)):
        seen = set()
        for k in range(len(dotted) + 1):
            for subset in itertools.combinations(dotted, k):
                h = base.with_arcs(subset)
                code = canonical_form(h).code
                seen.add(code)
                members.setdefault(code, GsMember(family, h, subset))
        counts[family] = len(seen)
    if len(members) != 28 or counts != {"A": 8, "B": 20}:
        raise AssertionError(f"G_s construction gave {len(members)} classes, split {counts}")
    return GsReference(members, counts)


@dataclass(frozen=True)
class GsMatch:
    family: str
    member: Digraph
    # permute(g, perm) == member
    perm: tuple[int, ...]


def classify_gs(g: Digraph) -> GsMatch | None:
    if g.n != 5:
        return None
    ref = build_gs_set()
    hit = ref.members.get(canonical_form(g).code)
    if hit is None:
        return None
    perm = isomorphism(g, hit.graph)
    assert perm is not None and permute(g, perm) == hit.graph
    return GsMatch(hit.family, hit.graph, perm)


# -- length-2 catalogue ---------------------------------------------------------------

@dataclass(frozen=True)
class CatalogEntry:
    name: str
    graph: Digraph
    code: str | None  # 1-based sums, e.g. "1+2+3, 4+5"


_G04C = "1<->2<->3<->4<->5, 5->1, 1->3, 3->5"

# matching priority for the length-2 search; graphs without a code are kept
# for reference only
_ENTRIES = (
    ("G0.2b", "1<->2, 3<->4, 2->3, 5->1, 1->3, 3->5, 4->5, 5->2, 2->4, 1->4", "1+2+3+4, 5+1+2"),
    ("G0.3c", "1<->2<->3, 4<->5, 3->4, 5->1, 1->3, 3->5, 4->1", "1+2+3, 4+5+1"),
    ("G0.4e", _G04C + ", 4->2", "1+2+3, 1+4+5"),
    ("G0.4f", _G04C + ", 5->2", "3+4+5, 1+2+3"),
    ("G3.4a", "1<->2<->3<->1, 4<->5", "1+2+3, 4+5"),
    ("G3.3", "1<->2<->3<->1, 4->5, 5->1, 1->4, 5->2, 2->4, 5->3, 3->4", "4+5, 1+2+3+4"),
    ("G3.4b", "1<->2<->3<->1, 1<->4, 4->5, 5->2, 2->4, 5->3, 3->4", "1+2+3+4, 5+2+3"),
    ("G3.4c", "1<->2<->3<->1, 1<->4, 4->2, 2->5, 5->4, 4->3, 3->5", "1+2+3+4, 5+4"),
    ("G3.5c", "1<->2<->3<->1, 5<->1, 5<->2, 4->5, 5->3, 3->4", "1+2+3+5, 4+5"),
    ("G3.6a", "1<->2<->3<->4<->1, 1<->3, 2<->4", "1+2+3+4, 5"),
    ("G4.4", "1<->2<->3<->4<->1, 4->5, 5->1, 1->3, 3->5, 5->2, 2->4", "1+2+3+4, 5+1+2"),
    ("G0.4c", _G04C, None),
    ("G0.4d", _G04C + ", 4->1", None),
)


@lru_cache(maxsize=1)
def catalog_entries() -> tuple[CatalogEntry, ...]:
    return tuple(CatalogEntry(name, _g(spec), code) for name, spec, code in _ENTRIES)


def catalog_entry(name: str) -> CatalogEntry:
    for e in catalog_entries():
        if e.name == name:
            return e
    raise KeyError(name)

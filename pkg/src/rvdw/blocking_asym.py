"""Asymmetric 2-blocking structures in ``(q1, q2)``-uniform AP hypergraphs.

Notation: long edges have ``q1`` vertices, short edges ``q2 < q1``.  A
*cover* of an edge ``E`` is one edge of the other cardinality per vertex
``a_i`` of ``E``, meeting ``E`` exactly in ``a_i``; it is *simple* when
the covering edges are pairwise disjoint.  A *block* is a short edge with
a simple cover, and a *simple path* chains blocks ``1..l`` so that block
``i + 1`` reuses the last covering edge of block ``i`` as its first one,
with no two edges of equal cardinality meeting.

Certificate kinds: ``non_simple_cover``, ``spoiled_path``, ``saw`` and
``spoiled_extension``.  A saw is anchored at the first long edge of the
path; the search also looks at the last long edge and then stores the
reversed path, recording the match in ``orientation``.

Path search proceeds block by block.  Short edges, covers and designated
last covering edges are tried in lexicographic order, so results are
deterministic.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterator, Optional

from .aps import DomainError
from .blocking_sym import LONGEST_PATH_BUDGET, ExtractionError, SearchBudgetExceeded, default_max_path_len
from .coloring import DEFAULT_BUDGET, extract_edge_critical
from .hypergraph import APHypergraph, Edge

COVER_SIMPLE = "simple"
COVER_GENERIC = "generic"
COVER_DEGENERATE = "degenerate"


def _t(e) -> Edge:
    return tuple(sorted(e))


# ---------------------------------------------------------------------------
# covers


@dataclass(frozen=True)
class Cover:
    covered_edge: Edge
    covering_edges: tuple[Edge, ...]

    def __post_init__(self):
        object.__setattr__(self, "covered_edge", _t(self.covered_edge))
        object.__setattr__(self, "covering_edges", tuple(_t(e) for e in self.covering_edges))

    def is_valid(self) -> bool:
        e = set(self.covered_edge)
        if len(self.covering_edges) != len(e):
            return False
        hits = []
        for c in self.covering_edges:
            inter = e & set(c)
            if len(c) == len(e) or len(inter) != 1:
                return False
            hits.append(next(iter(inter)))
        return len(set(hits)) == len(e)

    def overlaps(self) -> list[int]:
        """``|E_i ∩ ⋃_{j≠i} E_j|`` for each covering edge."""
        cs = [set(c) for c in self.covering_edges]
        out = []
        for i, c in enumerate(cs):
            rest = set().union(*(cs[j] for j in range(len(cs)) if j != i))
            out.append(len(c & rest))
        return out

    def classification(self) -> list[str]:
        return [COVER_SIMPLE if k == 0 else COVER_GENERIC if k == 1 else COVER_DEGENERATE
                for k in self.overlaps()]

    @property
    def is_simple(self) -> bool:
        return not any(self.overlaps())


def _cover_candidates(edge: Edge, h: APHypergraph) -> dict[int, list[Edge]]:
    """For each vertex ``a`` of ``edge``: other-cardinality edges meeting it exactly in ``a``."""
    es = set(edge)
    out = {}
    for a in sorted(edge):
        cand = []
        for f in h.incident(a):
            fe = h.edges[f]
            if len(fe) != len(edge) and h.edge_sets[f] & es == {a}:
                cand.append(fe)
        out[a] = sorted(cand)
    return out


def _simple_covers(edge: Edge, h: APHypergraph, fixed: Optional[dict] = None,
                   avoid: frozenset = frozenset()) -> Iterator[tuple[Edge, ...]]:
    """Simple covers of ``edge`` in lexicographic order (by vertex, then edge).

    ``fixed`` pins the covering edge at some vertices; covering edges not
    pinned must avoid the vertex set ``avoid``.
    """
    fixed = fixed or {}
    cands = _cover_candidates(edge, h)
    verts = sorted(edge)
    for a, e in fixed.items():
        cands[a] = [e] if e in cands[a] else []
    for a in verts:
        if a not in fixed:
            cands[a] = [c for c in cands[a] if not avoid & set(c)]
    chosen: list[Edge] = []
    used: set = set()

    def rec(k):
        if k == len(verts):
            yield tuple(chosen)
            return
        for c in cands[verts[k]]:
            cs = set(c)
            if cs & used:
                continue
            chosen.append(c)
            used.update(cs)
            yield from rec(k + 1)
            chosen.pop()
            used.difference_update(cs)

    yield from rec(0)


def find_covers(edge, h: APHypergraph) -> Optional[Cover]:
    """A cover of ``edge`` in ``h``: the least simple one if any, else the least cover.

    Returns None when some vertex of ``edge`` has no one-point covering
    edge.  Use ``Cover.classification`` for the per-edge labels.
    """
    edge = _t(edge)
    h.id_of(edge)
    for cov in _simple_covers(edge, h):
        return Cover(edge, cov)
    cands = _cover_candidates(edge, h)
    if any(not c for c in cands.values()):
        return None
    return Cover(edge, tuple(cands[a][0] for a in sorted(edge)))


def is_covered(h: APHypergraph) -> bool:
    """Every edge has a cover (vacuously true without edges)."""
    return all(all(_cover_candidates(e, h).values()) for e in h.edges)


def non_simple_cover(edge, h: APHypergraph) -> Optional[Cover]:
    """Some cover of ``edge`` that is not simple, if one exists."""
    edge = _t(edge)
    cands = _cover_candidates(edge, h)
    verts = sorted(edge)
    if any(not cands[a] for a in verts):
        return None
    for i, j in combinations(range(len(verts)), 2):
        for f in cands[verts[i]]:
            for g in cands[verts[j]]:
                if set(f) & set(g):
                    pick = {a: cands[a][0] for a in verts}
                    pick[verts[i]], pick[verts[j]] = f, g
                    return Cover(edge, tuple(pick[a] for a in verts))
    return None


def verify_minimal_cover_bound(cover_subset) -> bool:
    """``|E_1 ∪ ... ∪ E_r| > 2 q1 (1 - 1/r)`` for ``r`` covering edges of one edge."""
    es = [set(e) for e in cover_subset]
    r = len(es)
    if r == 0:
        raise DomainError("need at least one covering edge")
    q1 = max(len(e) for e in es)
    return len(set().union(*es)) > 2 * q1 * (1 - 1 / r)


# ---------------------------------------------------------------------------
# paths


@dataclass(frozen=True)
class SimplePathAsym:
    """Blocks ``(E_i, (E_{i,1}, ..., E_{i,q2}))``; ``single`` holds the long edge of a length-0 path."""

    short_edges: tuple[Edge, ...]
    covers: tuple[tuple[Edge, ...], ...]
    single: Optional[Edge] = None

    def __post_init__(self):
        object.__setattr__(self, "short_edges", tuple(_t(e) for e in self.short_edges))
        object.__setattr__(self, "covers", tuple(tuple(_t(c) for c in cov) for cov in self.covers))
        if self.single is not None:
            object.__setattr__(self, "single", _t(self.single))

    def __len__(self) -> int:
        return len(self.short_edges)

    def long_edges(self) -> tuple[Edge, ...]:
        if self.single is not None:
            return (self.single,)
        out = []
        for cov in self.covers:
            for c in cov:
                if c not in out:
                    out.append(c)
        return tuple(out)

    def edges(self) -> tuple[Edge, ...]:
        return self.short_edges + self.long_edges()

    def vertices(self) -> set:
        return set().union(*map(set, self.edges())) if self.edges() else set()

    @property
    def first_long(self) -> Edge:
        return self.single if self.single is not None else self.covers[0][0]

    @property
    def last_long(self) -> Edge:
        return self.single if self.single is not None else self.covers[-1][-1]

    def reversed(self) -> "SimplePathAsym":
        if self.single is not None:
            return self
        return SimplePathAsym(self.short_edges[::-1], tuple(cov[::-1] for cov in self.covers[::-1]))

    def is_valid(self) -> bool:
        if self.single is not None:
            return not self.short_edges and not self.covers
        if not self.short_edges or len(self.covers) != len(self.short_edges):
            return False
        q2 = len(self.short_edges[0])
        if any(len(e) != q2 for e in self.short_edges):
            return False
        for e, cov in zip(self.short_edges, self.covers):
            if not Cover(e, cov).is_valid():
                return False
        if any(a[-1] != b[0] for a, b in zip(self.covers, self.covers[1:])):
            return False
        q1 = len(self.covers[0][0])
        longs = self.long_edges()
        if any(len(c) != q1 for c in longs) or q1 <= q2:
            return False
        # a cover lists each long edge once; shared edges appear in two blocks only as E_{i,q2}=E_{i+1,1}
        if sum(len(c) for c in self.covers) - (len(self.covers) - 1) != len(longs):
            return False
        for group in (self.short_edges, longs):
            if len(set(group)) != len(group):
                return False
            for a, b in combinations(group, 2):
                if set(a) & set(b):
                    return False
        return True


class BlockingCertificateAsym:
    kind: str = ""

    def edges(self) -> tuple[Edge, ...]:
        raise NotImplementedError


@dataclass(frozen=True)
class NonSimpleCover(BlockingCertificateAsym):
    cover: Cover
    kind: str = field(default="non_simple_cover", init=False)

    def edges(self):
        return (self.cover.covered_edge,) + self.cover.covering_edges

    def auxiliary(self):
        return {"covered": self.cover.covered_edge, "covering": list(self.cover.covering_edges),
                "classification": self.cover.classification()}


@dataclass(frozen=True)
class SpoiledSimplePath(BlockingCertificateAsym):
    path: SimplePathAsym
    spoiler: Edge
    kind: str = field(default="spoiled_path", init=False)

    def __post_init__(self):
        object.__setattr__(self, "spoiler", _t(self.spoiler))

    def edges(self):
        return self.path.edges() + (self.spoiler,)

    def auxiliary(self):
        return {**_path_aux(self.path), "spoiler": self.spoiler}


@dataclass(frozen=True)
class PathWithSaw(BlockingCertificateAsym):
    """Saw edges are listed in the order of the vertices of ``E_{1,1} \\ E_1``.

    ``orientation`` is ``"first"`` when the saw was found at the first long
    edge of the searched path and ``"last"`` when it was found at the last
    one (the stored path is then the reversal).
    """

    path: SimplePathAsym
    saw_edges: tuple[Edge, ...]
    orientation: str = "first"
    kind: str = field(default="saw", init=False)

    def __post_init__(self):
        object.__setattr__(self, "saw_edges", tuple(_t(e) for e in self.saw_edges))

    def edges(self):
        return self.path.edges() + self.saw_edges

    def auxiliary(self):
        return {**_path_aux(self.path), "saw": list(self.saw_edges), "orientation": self.orientation}


@dataclass(frozen=True)
class PathWithSpoiledExtension(BlockingCertificateAsym):
    path: SimplePathAsym
    extension_edge: Edge
    extension_cover: tuple[Edge, ...]
    kind: str = field(default="spoiled_extension", init=False)

    def __post_init__(self):
        object.__setattr__(self, "extension_edge", _t(self.extension_edge))
        object.__setattr__(self, "extension_cover", tuple(_t(e) for e in self.extension_cover))

    def edges(self):
        extra = tuple(c for c in self.extension_cover if c not in self.path.edges())
        return self.path.edges() + (self.extension_edge,) + extra

    def auxiliary(self):
        return {**_path_aux(self.path), "extension": self.extension_edge,
                "extension_cover": list(self.extension_cover)}


def _path_aux(p: SimplePathAsym) -> dict:
    return {"short": list(p.short_edges), "covers": [list(c) for c in p.covers]}


# ---------------------------------------------------------------------------
# verification


def _saw_ok(p: SimplePathAsym, saws, h: APHypergraph) -> bool:
    if len(p) < 1:
        return False
    anchor = set(p.first_long)
    need = sorted(anchor - set(p.short_edges[0]))
    vp = p.vertices()
    q2 = len(p.short_edges[0])
    if len(saws) != len(need):
        return False
    for v, s in zip(need, saws):
        ss = set(s)
        if len(s) != q2 or ss & anchor != {v} or len(ss & vp) != 2:
            return False
    return True


def _spoiled_ok(p: SimplePathAsym, e: Edge) -> bool:
    if len(p) < 1 or e in p.edges():
        return False
    es = set(e)
    hit = es & set(p.last_long)
    return len(es & p.vertices()) >= 3 and len(hit) == 1 and not hit & set(p.short_edges[-1])


def _extension_ok(p: SimplePathAsym, e: Edge, cov, h: APHypergraph) -> bool:
    if len(p) < 1 or len(e) != len(p.short_edges[0]) or e in p.edges():
        return False
    c = Cover(e, cov)
    if not c.is_valid() or not c.is_simple:
        return False
    last = p.last_long
    vp = p.vertices()
    inter = set(e) & vp
    if len(inter) != 1:
        return False
    (v,) = inter
    if v not in set(last) - set(p.short_edges[-1]):
        return False
    if c.covering_edges[0] != last:
        return False
    return any(set(x) & vp for x in c.covering_edges[1:])


def verify_certificate_asym(cert: BlockingCertificateAsym, h: APHypergraph) -> bool:
    """Definition check for ``cert`` inside ``h``; DomainError on dangling edges."""
    for e in cert.edges():
        h.id_of(e)
    lens = h.lengths()
    if len(lens) != 2:
        return False
    q1, q2 = lens
    if isinstance(cert, NonSimpleCover):
        c = cert.cover
        return len(c.covered_edge) == q2 and c.is_valid() and not c.is_simple
    path = cert.path
    if not path.is_valid() or len(path) < 1 or len(path.short_edges[0]) != q2:
        return False
    if isinstance(cert, SpoiledSimplePath):
        return _spoiled_ok(path, cert.spoiler)
    if isinstance(cert, PathWithSaw):
        return cert.orientation in ("first", "last") and _saw_ok(path, cert.saw_edges, h)
    if isinstance(cert, PathWithSpoiledExtension):
        return _extension_ok(path, cert.extension_edge, cert.extension_cover, h)
    raise DomainError(f"unknown certificate type {type(cert).__name__}")


# ---------------------------------------------------------------------------
# search


class _PathSearch:
    """Block-by-block enumeration of simple paths (every orientation)."""

    def __init__(self, h: APHypergraph, max_len: int, budget: Optional[int]):
        self.h = h
        self.max_len = max_len
        self.budget = budget
        self.nodes = 0
        lens = h.lengths()
        self.q2 = lens[-1]
        self.shorts = [e for e in h.edges if len(e) == self.q2]

    def _tick(self):
        self.nodes += 1
        if self.budget is not None and self.nodes > self.budget:
            raise SearchBudgetExceeded(f"path search exceeded {self.budget} nodes")

    def _designations(self, cov: tuple, first_fixed: bool):
        """Orderings of a simple cover: first edge, middle (sorted), last edge."""
        if first_fixed:
            first = cov[0]
            rest = cov[1:]
            for last in rest:
                mid = sorted(c for c in rest if c != last)
                yield (first, *mid, last)
        else:
            for first in cov:
                for last in cov:
                    if last != first:
                        mid = sorted(c for c in cov if c not in (first, last))
                        yield (first, *mid, last)

    def paths(self) -> Iterator[SimplePathAsym]:
        h = self.h
        shorts: list[Edge] = []
        covers: list[tuple] = []
        long_vs: set = set()

        def rec():
            p = SimplePathAsym(tuple(shorts), tuple(covers))
            yield p
            if len(shorts) >= self.max_len:
                return
            last = covers[-1][-1]
            lastset = set(last)
            for v in sorted(lastset - set(shorts[-1])):
                for f in h.incident(v):
                    s = h.edges[f]
                    if len(s) != self.q2 or set(s) & long_vs != {v}:
                        continue
                    # s meets V(P) only at v, so it avoids every earlier short edge
                    for cov in _simple_covers(s, h, fixed={v: last}, avoid=frozenset(long_vs)):
                        order = {c: i for i, c in enumerate(cov)}
                        cov = (last, *sorted((c for c in cov if c != last), key=order.get))
                        for des in self._designations(cov, True):
                            self._tick()
                            new = [c for c in des[1:]]
                            shorts.append(s)
                            covers.append(des)
                            for c in new:
                                long_vs.update(c)
                            yield from rec()
                            for c in new:
                                long_vs.difference_update(c)
                            covers.pop()
                            shorts.pop()

        for s in self.shorts:
            for cov in _simple_covers(s, h):
                for des in self._designations(cov, False):
                    self._tick()
                    shorts.append(s)
                    covers.append(des)
                    for c in des:
                        long_vs.update(c)
                    yield from rec()
                    long_vs.clear()
                    covers.pop()
                    shorts.pop()


def _find_spoiler(h: APHypergraph, p: SimplePathAsym) -> Optional[Edge]:
    vp = p.vertices()
    for f in h.edges_meeting(p.last_long):
        e = h.edges[f]
        if _spoiled_ok(p, e):
            return e
    return None


def _find_saw(h: APHypergraph, p: SimplePathAsym) -> Optional[tuple]:
    anchor = set(p.first_long)
    vp = p.vertices()
    out = []
    for v in sorted(anchor - set(p.short_edges[0])):
        pick = None
        for f in h.incident(v):
            s = h.edge_sets[f]
            if len(s) == len(p.short_edges[0]) and s & anchor == {v} and len(s & vp) == 2:
                pick = h.edges[f]
                break
        if pick is None:
            return None
        out.append(pick)
    return tuple(out)


def _find_extension(h: APHypergraph, p: SimplePathAsym, shorts_only_at=None):
    last = p.last_long
    vp = p.vertices()
    for v in sorted(set(last) - set(p.short_edges[-1])):
        for f in h.incident(v):
            s = h.edges[f]
            if len(s) != len(p.short_edges[0]) or set(s) & vp != {v}:
                continue
            for cov in _simple_covers(s, h, fixed={v: last}):
                order = (last, *[c for c in cov if c != last])
                if any(set(c) & vp for c in order[1:]):
                    return s, order
    return None


def extension_class(p: SimplePathAsym, cover) -> int:
    """Class of a spoiled extension of ``p`` with cover ``cover`` (shared long edge first).

    1 if no other cover edge meets V(P) in two or more vertices, 2 if
    exactly one does, 3 if at least two do.
    """
    vp = p.vertices()
    heavy = sum(len(set(c) & vp) >= 2 for c in cover[1:])
    return 1 + min(heavy, 2)


def _extension_classes(h: APHypergraph, p: SimplePathAsym) -> set:
    last = p.last_long
    vp = p.vertices()
    found = set()
    for v in sorted(set(last) - set(p.short_edges[-1])):
        for f in h.incident(v):
            s = h.edges[f]
            if len(s) != len(p.short_edges[0]) or set(s) & vp != {v}:
                continue
            for cov in _simple_covers(s, h, fixed={v: last}):
                order = (last, *[c for c in cov if c != last])
                if any(set(c) & vp for c in order[1:]):
                    found.add(extension_class(p, order))
                    if len(found) == 3:
                        return found
    return found


def _check_path(h: APHypergraph, p: SimplePathAsym) -> Optional[BlockingCertificateAsym]:
    sp = _find_spoiler(h, p)
    if sp is not None:
        return SpoiledSimplePath(p, sp)
    saw = _find_saw(h, p)
    if saw is not None:
        return PathWithSaw(p, saw, "first")
    rp = p.reversed()
    saw = _find_saw(h, rp)
    if saw is not None:
        return PathWithSaw(rp, saw, "last")
    ext = _find_extension(h, p)
    if ext is not None:
        return PathWithSpoiledExtension(p, ext[0], ext[1])
    return None


def _require_two_lengths(h: APHypergraph):
    if len(h.lengths()) > 2:
        raise DomainError("asymmetric routines need at most two edge lengths")


def detect_blocking_asym(h: APHypergraph, max_path_len: Optional[int] = None,
                         budget: Optional[int] = None) -> Optional[BlockingCertificateAsym]:
    """First asymmetric 2-blocking structure of ``h`` within the path-length bound.

    Order: non-simple covers of short edges (edge order), then every
    simple path in search order, checking spoiling edges, saws (both
    ends) and spoiled extensions.
    """
    _require_two_lengths(h)
    if not h.edges or len(h.lengths()) < 2:
        return None
    if max_path_len is None:
        max_path_len = default_max_path_len(h.n)
    q2 = h.lengths()[1]
    for e in h.edges:
        if len(e) == q2:
            c = non_simple_cover(e, h)
            if c is not None:
                return _checked(NonSimpleCover(c), h)
    for p in _PathSearch(h, max_path_len, budget).paths():
        cert = _check_path(h, p)
        if cert is not None:
            return _checked(cert, h)
    return None


def _checked(cert, h):
    if not verify_certificate_asym(cert, h):
        raise AssertionError(f"search produced an invalid {cert.kind}")
    return cert


def longest_simple_path_asym(h: APHypergraph, budget: Optional[int] = None) -> Optional[SimplePathAsym]:
    best = None
    try:
        for p in _PathSearch(h, max(1, h.num_edges), budget).paths():
            if best is None or len(p) > len(best):
                best = p
    except SearchBudgetExceeded:
        pass
    return best


@dataclass(frozen=True)
class ExtractionAsym:
    certificate: BlockingCertificateAsym
    core: APHypergraph
    route: str


def _proof_step(core: APHypergraph, p: SimplePathAsym):
    """Case analysis at ``E = E_{l,q2}``; returns a certificate or a longer path."""
    last = p.last_long
    vp = p.vertices()
    q2 = len(p.short_edges[0])
    per_vertex = {}
    for v in sorted(set(last) - set(p.short_edges[-1])):
        ss = [core.edges[f] for f in core.incident(v)
              if len(core.edges[f]) == q2 and core.edge_sets[f] & set(last) == {v}]
        per_vertex[v] = ss
        for s in ss:
            if set(s) & vp == {v}:
                covs = list(_simple_covers(s, core, fixed={v: last}))
                for cov in covs:
                    order = (last, *[c for c in cov if c != last])
                    if any(set(c) & vp for c in order[1:]):
                        return PathWithSpoiledExtension(p, s, order)
                if covs:
                    cov = covs[0]
                    order = (last, *[c for c in cov if c != last])
                    return SimplePathAsym(p.short_edges + (s,), p.covers + (order,))
    for v, ss in per_vertex.items():
        for s in ss:
            if len(set(s) & vp) >= 3:
                return SpoiledSimplePath(p, s)
    if all(any(len(set(s) & vp) == 2 for s in ss) for ss in per_vertex.values()):
        saws = tuple(next(s for s in ss if len(set(s) & vp) == 2) for ss in per_vertex.values())
        return PathWithSaw(p.reversed(), saws, "last")
    return None


def extract_blocking_asym_traced(h: APHypergraph, budget: int = DEFAULT_BUDGET) -> ExtractionAsym:
    _require_two_lengths(h)
    core = extract_edge_critical(h, budget, symmetric=False)
    q2 = min(len(e) for e in core.edges)
    for e in core.edges:
        if len(e) == q2 and next(_simple_covers(e, core), None) is None:
            c = find_covers(e, core)
            if c is not None and not c.is_simple:
                cert = NonSimpleCover(c)
                if verify_certificate_asym(cert, core):
                    return ExtractionAsym(cert, core, "proof")
    # the case analysis only needs P to be non-extendable at its last block;
    # _proof_step hands back a longer path whenever it finds an extension
    p = longest_simple_path_asym(core, min(budget, LONGEST_PATH_BUDGET))
    steps = 0
    while p is not None and steps <= core.num_edges:
        res = _proof_step(core, p)
        if isinstance(res, SimplePathAsym):
            p = res if res.is_valid() else None
            steps += 1
            continue
        if res is not None and verify_certificate_asym(res, core):
            return ExtractionAsym(res, core, "proof")
        break
    for host in (core, h):
        try:
            cert = detect_blocking_asym(host, max(host.num_edges, 1), budget)
        except SearchBudgetExceeded:
            cert = None
        if cert is not None:
            return ExtractionAsym(cert, core, "search")
    raise ExtractionError("no asymmetric 2-blocking structure found in a non-colourable hypergraph")


def extract_blocking_asym(h: APHypergraph, budget: int = DEFAULT_BUDGET) -> BlockingCertificateAsym:
    """A verified asymmetric 2-blocking certificate for the non-colourable ``h``.

    Shrinks to an edge-critical core; if a short edge of the core has no
    simple cover its (non-simple) cover is returned.  Otherwise a longest
    simple path ``P`` is taken and the short edges meeting its last long
    edge at one new vertex decide between a spoiled extension, a spoiling
    edge and a saw.  Raises ContractError on colourable input.
    """
    return extract_blocking_asym_traced(h, budget).certificate


# ---------------------------------------------------------------------------
# census


@dataclass
class AsymCensus:
    paths_by_length: dict[int, int] = field(default_factory=dict)
    saws: int = 0
    spoiled_paths: int = 0
    spoiled_extensions: int = 0
    non_simply_covered: int = 0
    extensions_by_class: dict[int, int] = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "paths_by_length": dict(sorted(self.paths_by_length.items())),
            "saws": self.saws,
            "spoiled_paths": self.spoiled_paths,
            "spoiled_extensions": self.spoiled_extensions,
            "non_simply_covered": self.non_simply_covered,
            "extensions_by_class": dict(sorted(self.extensions_by_class.items())),
        }


def census_asym(h: APHypergraph, max_len: Optional[int] = None, budget: Optional[int] = None) -> AsymCensus:
    """Counts of simple paths (as edge sets) by length and of the blocking configurations.

    A path edge set is counted once per property, whichever orientation
    exhibits it.  ``non_simply_covered`` counts short edges that have a
    cover but no simple one.  ``extensions_by_class`` splits the paths
    with a spoiled extension by ``extension_class``; a path with
    extensions of several classes counts once in each.
    """
    out = AsymCensus()
    if not h.edges or len(h.lengths()) < 2:
        return out
    _require_two_lengths(h)
    if max_len is None:
        max_len = default_max_path_len(h.n)
    q2 = h.lengths()[1]
    for e in h.edges:
        if len(e) == q2 and find_covers(e, h) is not None and next(_simple_covers(e, h), None) is None:
            out.non_simply_covered += 1
    seen: dict = {}
    for p in _PathSearch(h, max_len, budget).paths():
        key = frozenset(p.edges())
        flags = seen.setdefault(key, [len(p), False, False, set()])
        flags[1] = flags[1] or _find_saw(h, p) is not None
        flags[2] = flags[2] or _find_spoiler(h, p) is not None
        flags[3] |= _extension_classes(h, p)
    for ell, saw, spoiled, classes in seen.values():
        out.paths_by_length[ell] = out.paths_by_length.get(ell, 0) + 1
        out.saws += saw
        out.spoiled_paths += spoiled
        out.spoiled_extensions += bool(classes)
        for k in classes:
            out.extensions_by_class[k] = out.extensions_by_class.get(k, 0) + 1
    return out

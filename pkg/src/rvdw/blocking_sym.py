"""Symmetric 2-blocking structures in ``q``-uniform AP hypergraphs.

Four witness kinds certify that a hypergraph cannot be 2-coloured:

* ``special_cycle``: a fairly simple cycle whose closing edge meets the
  last path edge in ``s >= 2`` vertices;
* ``cycle_with_handle``: a simple cycle (``s = 1``) plus an edge meeting
  its vertex set in at least two but not all of its vertices;
* ``spoiled_path``: a simple path plus an edge outside it lying inside
  its vertex set;
* ``reduced_fano``: for ``q = 3``, four edges on six vertices, every
  vertex in two edges and any two edges sharing at most one vertex.

Edges are referred to by their sorted vertex tuple, which for an AP
hypergraph is the identity of the progression.

Search order, used wherever "the first" structure is returned: reduced
Fano copies by base edge id, then simple paths in depth-first order
(start edge id ascending, extensions by edge id ascending).  At every
path prefix the spoiling edges are tried first (by edge id), then
closing edges for special cycles, then simple cycles with handles.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations, product
from typing import Iterator, Optional

from .aps import DomainError
from .coloring import ContractError, DEFAULT_BUDGET, extract_edge_critical
from .hypergraph import APHypergraph, Edge

_HALF = Fraction(1, 2)
# (alpha, beta) with base = alpha*u + beta*w for a 3-AP {base, u, w}
COEFFICIENT_PAIRS = ((_HALF, _HALF), (Fraction(2), Fraction(-1)), (Fraction(-1), Fraction(2)))


LONGEST_PATH_BUDGET = 2_000


class SearchBudgetExceeded(RuntimeError):
    """Bounded structure search ran out of nodes."""


class ExtractionError(RuntimeError):
    """No certificate could be produced for a non-colourable input."""


def default_max_path_len(n: int) -> int:
    """``ceil(10 * ln n)``, the path cutoff of the probabilistic argument."""
    return max(1, math.ceil(10 * math.log(max(n, 2))))


# ---------------------------------------------------------------------------
# structures


def _inter(a, b) -> int:
    return len(set(a) & set(b))


@dataclass(frozen=True)
class SimplePathSym:
    edges: tuple[Edge, ...]

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(tuple(sorted(e)) for e in self.edges))

    def __len__(self) -> int:
        return len(self.edges)

    def vertices(self) -> set:
        return set().union(*map(set, self.edges)) if self.edges else set()

    def is_simple(self) -> bool:
        es = self.edges
        if not es:
            return False
        for i in range(len(es)):
            for j in range(i + 1, len(es)):
                if _inter(es[i], es[j]) != (1 if j == i + 1 else 0):
                    return False
        return True

    def reversed(self) -> "SimplePathSym":
        return SimplePathSym(self.edges[::-1])


@dataclass(frozen=True)
class FairlySimpleCycle:
    closing_edge: Edge
    path: SimplePathSym

    def __post_init__(self):
        object.__setattr__(self, "closing_edge", tuple(sorted(self.closing_edge)))

    @property
    def s(self) -> int:
        return _inter(self.closing_edge, self.path.edges[-1])

    @property
    def special(self) -> bool:
        return self.s >= 2

    def edges(self) -> tuple[Edge, ...]:
        return (self.closing_edge,) + self.path.edges

    def vertices(self) -> set:
        return self.path.vertices() | set(self.closing_edge)

    def is_valid(self) -> bool:
        es = self.path.edges
        e0 = set(self.closing_edge)
        if len(es) < 2 or not self.path.is_simple() or self.closing_edge in es:
            return False
        if len(e0 & set(es[0])) != 1 or any(e0 & set(e) for e in es[1:-1]):
            return False
        if not e0 & set(es[-1]):
            return False
        return not (e0 & set(es[0]) & set(es[-1]))


class BlockingCertificateSym:
    kind: str = ""

    def edges(self) -> tuple[Edge, ...]:
        raise NotImplementedError

    def auxiliary(self) -> dict:
        return {}


@dataclass(frozen=True)
class SpecialCycle(BlockingCertificateSym):
    cycle: FairlySimpleCycle
    kind: str = field(default="special_cycle", init=False)

    def edges(self):
        return self.cycle.edges()

    def auxiliary(self):
        return {"closing": self.cycle.closing_edge, "path": list(self.cycle.path.edges), "s": self.cycle.s}


@dataclass(frozen=True)
class SimpleCycleWithHandle(BlockingCertificateSym):
    cycle: FairlySimpleCycle
    handle: Edge
    kind: str = field(default="cycle_with_handle", init=False)

    def __post_init__(self):
        object.__setattr__(self, "handle", tuple(sorted(self.handle)))

    def edges(self):
        return self.cycle.edges() + (self.handle,)

    def auxiliary(self):
        return {"closing": self.cycle.closing_edge, "path": list(self.cycle.path.edges), "handle": self.handle}


@dataclass(frozen=True)
class SpoiledPath(BlockingCertificateSym):
    path: SimplePathSym
    spoiler: Edge
    kind: str = field(default="spoiled_path", init=False)

    def __post_init__(self):
        object.__setattr__(self, "spoiler", tuple(sorted(self.spoiler)))

    def edges(self):
        return self.path.edges + (self.spoiler,)

    def auxiliary(self):
        return {"path": list(self.path.edges), "spoiler": self.spoiler}


@dataclass(frozen=True)
class ReducedFano(BlockingCertificateSym):
    fano_edges: tuple[Edge, ...]
    kind: str = field(default="reduced_fano", init=False)

    def __post_init__(self):
        object.__setattr__(self, "fano_edges", tuple(sorted(tuple(sorted(e)) for e in self.fano_edges)))

    def edges(self):
        return self.fano_edges


# ---------------------------------------------------------------------------
# predicates


def is_reduced_fano(edges) -> bool:
    es = [tuple(sorted(e)) for e in edges]
    if len(es) != 4 or len(set(es)) != 4 or any(len(e) != 3 for e in es):
        return False
    deg = Counter(v for e in es for v in e)
    if len(deg) != 6 or any(d != 2 for d in deg.values()):
        return False
    return all(_inter(a, b) <= 1 for i, a in enumerate(es) for b in es[i + 1:])


def _has_handle(h: APHypergraph, vs: set, edge: Edge) -> bool:
    e = set(edge)
    return len(e) > len(e & vs) >= 2


def verify_certificate_sym(cert: BlockingCertificateSym, h: APHypergraph) -> bool:
    """Check ``cert`` against its definition inside host ``h``.

    Raises DomainError when the certificate names an edge absent from ``h``.
    """
    for e in cert.edges():
        h.id_of(e)
    if len({len(e) for e in h.edges}) > 1 or len({len(e) for e in cert.edges()}) != 1:
        return False
    if isinstance(cert, SpecialCycle):
        return cert.cycle.is_valid() and cert.cycle.special
    if isinstance(cert, SimpleCycleWithHandle):
        c = cert.cycle
        return c.is_valid() and c.s == 1 and _has_handle(h, c.vertices(), cert.handle)
    if isinstance(cert, SpoiledPath):
        p = cert.path
        return p.is_simple() and cert.spoiler not in p.edges and set(cert.spoiler) <= p.vertices()
    if isinstance(cert, ReducedFano):
        return is_reduced_fano(cert.fano_edges)
    raise DomainError(f"unknown certificate type {type(cert).__name__}")


# ---------------------------------------------------------------------------
# path search


class _Search:
    """Depth-first enumeration of simple paths as edge-id sequences."""

    def __init__(self, h: APHypergraph, max_len: int, budget: Optional[int]):
        self.h = h
        self.max_len = max_len
        self.budget = budget
        self.nodes = 0
        # neighbours: edges meeting e in exactly one vertex
        self.nbr = []
        for i, e in enumerate(h.edges):
            cnt = Counter(j for v in e for j in h.incident(v) if j != i)
            self.nbr.append(sorted(j for j, c in cnt.items() if c == 1))

    def _tick(self):
        self.nodes += 1
        if self.budget is not None and self.nodes > self.budget:
            raise SearchBudgetExceeded(f"path search exceeded {self.budget} nodes")

    def paths(self, starts=None) -> Iterator[list[int]]:
        h = self.h
        mult: Counter = Counter()
        path: list[int] = []

        def rec():
            yield path
            if len(path) >= self.max_len:
                return
            last = path[-1]
            for f in self.nbr[last]:
                hit = [v for v in h.edges[f] if mult[v]]
                if len(hit) != 1 or mult[hit[0]] != 1 or hit[0] not in h.edge_sets[last]:
                    continue
                self._tick()
                path.append(f)
                for v in h.edges[f]:
                    mult[v] += 1
                yield from rec()
                for v in h.edges[f]:
                    mult[v] -= 1
                path.pop()

        for s in (range(h.num_edges) if starts is None else starts):
            self._tick()
            path.append(s)
            for v in h.edges[s]:
                mult[v] += 1
            yield from rec()
            for v in h.edges[s]:
                mult[v] -= 1
            path.pop()


def _edges_touching(h: APHypergraph, vs) -> list[int]:
    return h.edges_meeting(vs)


def _spoilers(h: APHypergraph, ids: list[int], vs: set) -> list[int]:
    inside = set(ids)
    out = []
    for f in _edges_touching(h, vs):
        if f not in inside and h.edge_sets[f] <= vs:
            out.append(f)
    return out


def _closings(h: APHypergraph, ids: list[int]) -> list[tuple[int, int]]:
    """``(closing id, s)`` for every fairly simple cycle closing the path ``ids``."""
    if len(ids) < 2:
        return []
    first, last = h.edge_sets[ids[0]], h.edge_sets[ids[-1]]
    middle = set().union(*(h.edge_sets[i] for i in ids[1:-1])) if len(ids) > 2 else set()
    corner = first & last
    out = []
    for f in _edges_touching(h, first):
        if f in ids:
            continue
        e0 = h.edge_sets[f]
        if len(e0 & first) != 1 or e0 & middle or e0 & corner:
            continue
        s = len(e0 & last)
        if s >= 1:
            out.append((f, s))
    return out


def _handles(h: APHypergraph, vs: set) -> list[int]:
    return [f for f in _edges_touching(h, vs) if len(h.edge_sets[f]) > len(h.edge_sets[f] & vs) >= 2]


def _path_obj(h, ids) -> SimplePathSym:
    return SimplePathSym(tuple(h.edges[i] for i in ids))


# ---------------------------------------------------------------------------
# reduced Fano copies


def _solve3(coefs, v):
    (a, b), (c, d), (e, f) = coefs
    # rows: a*x4 + b*x5 = v1 ; c*x5 + d*x6 = v2 ; e*x4 + f*x6 = v3
    det = a * c * f + b * d * e
    if det == 0:
        return None
    v1, v2, v3 = v
    x4 = (v1 * c * f - b * (v2 * f - d * v3)) / det
    x5 = (v1 - a * x4) / b
    x6 = (v3 - e * x4) / f
    return x4, x5, x6


def fano_completions(base: Edge, n: Optional[int] = None) -> set:
    """All reduced Fano copies (as frozensets of four edges) containing ``base``.

    Each triple ``(x4, x5, x6)`` is the solution of ``A x = v`` for one of
    the 27 coefficient matrices and 6 orderings of the base vertices, so
    there are O(1) completions per base edge.  Only the AP condition is
    enforced here; callers check that the three new edges are present.
    """
    out = set()
    for v in permutations(base):
        for coefs in product(COEFFICIENT_PAIRS, repeat=3):
            sol = _solve3(coefs, v)
            if sol is None or any(x.denominator != 1 for x in sol):
                continue
            x4, x5, x6 = (int(x) for x in sol)
            pts = {x4, x5, x6}
            if len(pts) != 3 or pts & set(base) or min(pts) < 1 or (n is not None and max(pts) > n):
                continue
            edges = [tuple(sorted(base)), tuple(sorted((v[0], x4, x5))),
                     tuple(sorted((v[1], x5, x6))), tuple(sorted((v[2], x4, x6)))]
            if is_reduced_fano(edges):
                out.add(frozenset(edges))
    return out


def reduced_fano_copies(h: APHypergraph) -> list[frozenset]:
    """Every reduced Fano copy in a 3-uniform ``h``, ordered by least base edge id."""
    if not h.edges or any(len(e) != 3 for e in h.edges):
        return []
    seen = set()
    out = []
    for e in h.edges:
        for copy in sorted(fano_completions(e), key=sorted):
            if copy not in seen and all(h.has_edge(x) for x in copy):
                seen.add(copy)
                out.append(copy)
    return out


def count_reduced_fano_full(n: int) -> int:
    """Reduced Fano copies in the full 3-AP hypergraph on ``[n]`` (O(n^2) work)."""
    from .aps import enumerate_aps

    copies = set()
    for ap in enumerate_aps(n, 3):
        copies |= fano_completions(ap.elements(), n)
    return len(copies)


# ---------------------------------------------------------------------------
# detection


def _check_prefix(h: APHypergraph, ids: list[int]):
    vs = set().union(*(h.edge_sets[i] for i in ids))
    sp = _spoilers(h, ids, vs)
    if sp:
        return SpoiledPath(_path_obj(h, ids), h.edges[sp[0]])
    closings = _closings(h, ids)
    for f, s in closings:
        if s >= 2:
            return SpecialCycle(FairlySimpleCycle(h.edges[f], _path_obj(h, ids)))
    for f, s in closings:
        cyc_vs = vs | h.edge_sets[f]
        hs = _handles(h, cyc_vs)
        if hs:
            return SimpleCycleWithHandle(FairlySimpleCycle(h.edges[f], _path_obj(h, ids)), h.edges[hs[0]])
    return None


def detect_blocking_sym(h: APHypergraph, max_path_len: Optional[int] = None,
                        budget: Optional[int] = None) -> Optional[BlockingCertificateSym]:
    """First 2-blocking structure of ``h`` with path length at most ``max_path_len``.

    Returns None only after the bounded search is exhausted; raises
    SearchBudgetExceeded if ``budget`` path nodes do not suffice.
    """
    if not h.symmetric:
        raise DomainError("symmetric detection needs a single-length hypergraph")
    if max_path_len is None:
        max_path_len = default_max_path_len(h.n)
    if h.edges and len(h.edges[0]) == 3:
        copies = reduced_fano_copies(h)
        if copies:
            cert = ReducedFano(tuple(copies[0]))
            assert verify_certificate_sym(cert, h)
            return cert
    for ids in _Search(h, max_path_len, budget).paths():
        cert = _check_prefix(h, ids)
        if cert is not None:
            if not verify_certificate_sym(cert, h):
                raise AssertionError(f"detector produced an invalid {cert.kind}")
            return cert
    return None


# ---------------------------------------------------------------------------
# extraction


def longest_simple_path(h: APHypergraph, budget: Optional[int] = None) -> list[int]:
    """A longest simple path (edge ids); the first in search order among the longest.

    With a ``budget`` the search stops early and the best path seen so far
    is returned.
    """
    best: list[int] = []
    search = _Search(h, max(1, h.num_edges), budget)
    try:
        for ids in search.paths():
            if len(ids) > len(best):
                best = list(ids)
                if len(best) == h.num_edges:
                    break
    except SearchBudgetExceeded:
        pass
    return best


def extend_front(h: APHypergraph, path: list[int]) -> list[int]:
    """Prepend edges while some edge meets the path only in a vertex private to ``E_1``."""
    path = list(path)
    while path:
        vp = set().union(*(h.edge_sets[i] for i in path))
        private = h.edge_sets[path[0]] - (h.edge_sets[path[1]] if len(path) > 1 else set())
        for f in h.edges_meeting(private):
            hit = h.edge_sets[f] & vp
            if f not in path and len(hit) == 1 and hit <= private:
                path.insert(0, f)
                break
        else:
            return path
    return path


def _proof_candidates(h: APHypergraph, path: list[int]) -> Iterator[BlockingCertificateSym]:
    """Certificates suggested by the case analysis for the maximal path ``path``."""
    es = [h.edge_sets[i] for i in path]
    ed = [h.edges[i] for i in path]
    if len(es) < 2:
        return
    vp = set().union(*es)
    e1 = es[0]
    own = sorted(e1 - es[1])
    cover = {z: [f for f in h.incident(z) if h.edge_sets[f] & e1 == {z}] for z in own}

    def first_hit(f):
        return min((i for i in range(1, len(es)) if h.edge_sets[f] & es[i]), default=None)

    for x in own:
        for y in own:
            if y <= x:
                continue
            for fx in cover[x]:
                for fy in cover[y]:
                    ex, ey = h.edge_sets[fx], h.edge_sets[fy]
                    # overlaps of two or more give special cycles directly
                    if len(ex & ey) >= 2:
                        yield SpecialCycle(FairlySimpleCycle(h.edges[fy], SimplePathSym((ed[0], h.edges[fx]))))
                    for fz in (fx, fy):
                        iz = first_hit(fz)
                        if iz is not None and len(h.edge_sets[fz] & es[iz]) >= 2:
                            yield SpecialCycle(FairlySimpleCycle(h.edges[fz], SimplePathSym(tuple(ed[: iz + 1]))))
                    for fz in (fx, fy):
                        if h.edge_sets[fz] <= vp and fz not in path:
                            yield SpoiledPath(SimplePathSym(tuple(ed)), h.edges[fz])
                    ix, iy = first_hit(fx), first_hit(fy)
                    if ix is None or iy is None:
                        continue
                    if iy > ix:
                        fx, fy, ix, iy = fy, fx, iy, ix
                    cyc = FairlySimpleCycle(h.edges[fx], SimplePathSym(tuple(ed[: ix + 1])))
                    yield SimpleCycleWithHandle(cyc, h.edges[fy])
                    if iy < ix:
                        cyc = FairlySimpleCycle(h.edges[fy], SimplePathSym(tuple(ed[: iy + 1])))
                        yield SimpleCycleWithHandle(cyc, h.edges[fx])
                    else:
                        i = ix
                        for a, b, c in permutations((h.edges[fx], ed[i], h.edges[fy])):
                            yield SimpleCycleWithHandle(FairlySimpleCycle(c, SimplePathSym((a, b))), ed[0])
                        yield ReducedFano((ed[0], ed[i], h.edges[fx], h.edges[fy]))


@dataclass(frozen=True)
class Extraction:
    certificate: BlockingCertificateSym
    core: APHypergraph
    route: str  # "proof" or "search"


def extract_blocking_sym_traced(h: APHypergraph, budget: int = DEFAULT_BUDGET) -> Extraction:
    core = extract_edge_critical(h, budget, symmetric=True)
    # the argument only uses that no edge can be prepended to the path
    path = extend_front(core, longest_simple_path(core, min(budget, LONGEST_PATH_BUDGET)))
    for cert in _proof_candidates(core, path):
        try:
            ok = verify_certificate_sym(cert, core)
        except DomainError:
            ok = False
        if ok:
            return Extraction(cert, core, "proof")
    for host in (core, h):
        try:
            cert = detect_blocking_sym(host, max(host.num_edges, 1), budget)
        except SearchBudgetExceeded:
            cert = None
        if cert is not None:
            return Extraction(cert, core, "search")
    raise ExtractionError("no 2-blocking structure found in a non-colourable hypergraph")


def extract_blocking_sym(h: APHypergraph, budget: int = DEFAULT_BUDGET) -> BlockingCertificateSym:
    """A verified 2-blocking certificate for the non-2-colourable ``h``.

    Follows the constructive argument: shrink to an edge-critical core,
    take a longest simple path, pick one-point cover edges at two vertices
    private to the first path edge and run the case analysis.  Candidates
    are checked against their definitions; if none holds (possible when the
    path search was cut short) a full bounded search over the core, then
    over ``h``, takes over.  Raises ContractError for colourable input.
    """
    return extract_blocking_sym_traced(h, budget).certificate


# ---------------------------------------------------------------------------
# census


@dataclass
class SymCensus:
    paths_by_length: dict[int, int] = field(default_factory=dict)
    special_cycles: int = 0
    cycles_with_handles: int = 0
    spoiled_paths: int = 0
    reduced_fano: int = 0

    def as_dict(self) -> dict:
        return {
            "paths_by_length": dict(sorted(self.paths_by_length.items())),
            "special_cycles": self.special_cycles,
            "cycles_with_handles": self.cycles_with_handles,
            "spoiled_paths": self.spoiled_paths,
            "reduced_fano": self.reduced_fano,
        }


def census_sym(h: APHypergraph, max_len: Optional[int] = None, budget: Optional[int] = None) -> SymCensus:
    """Exact counts of the structures with path length at most ``max_len``.

    Paths and cycles are counted as edge sets (a path and its reversal, or
    the different ways to read a cycle, count once).  Cycles with handles
    count distinct (cycle, handle) pairs; spoiled paths count paths having
    at least one spoiling edge.
    """
    if max_len is None:
        max_len = default_max_path_len(h.n)
    out = SymCensus()
    if not h.edges:
        return out
    if not h.symmetric:
        raise DomainError("symmetric census needs a single-length hypergraph")
    seen_paths = set()
    special = set()
    handled = set()
    for ids in _Search(h, max_len, budget).paths():
        if len(ids) >= 2 and ids[0] > ids[-1]:
            continue
        key = frozenset(ids)
        if key in seen_paths:
            continue
        seen_paths.add(key)
        ell = len(ids)
        out.paths_by_length[ell] = out.paths_by_length.get(ell, 0) + 1
        vs = set().union(*(h.edge_sets[i] for i in ids))
        if _spoilers(h, ids, vs):
            out.spoiled_paths += 1
        # closings are read from both ends of the path
        for seq in (ids, ids[::-1]) if ell >= 2 else ():
            for f, s in _closings(h, seq):
                cyc = key | {f}
                if s >= 2:
                    special.add(cyc)
                else:
                    for g in _handles(h, vs | h.edge_sets[f]):
                        handled.add((cyc, g))
    out.special_cycles = len(special)
    out.cycles_with_handles = len(handled)
    if len(h.edges[0]) == 3:
        out.reduced_fano = len(reduced_fano_copies(h))
    return out

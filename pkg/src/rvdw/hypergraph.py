"""Hypergraphs whose edges are arithmetic progressions.

Edges are kept as sorted vertex tuples; that tuple is the edge's identity
inside a host.  Edge ids number the long edges first (``0 .. L-1``), then
the short ones.  A hypergraph with no short edges is in symmetric
(single-length) mode.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from . import _core
from .aps import ArithmeticProgression, DomainError, ap_from_elements
from .sampling import GroundSubset

Edge = tuple  # sorted tuple of ints


def _norm(e) -> Edge:
    if isinstance(e, ArithmeticProgression):
        return e.elements()
    t = tuple(sorted(set(e)))
    if len(t) != len(tuple(e)):
        raise DomainError(f"edge {e} repeats a vertex")
    return t


@dataclass(frozen=True)
class APHypergraph:
    n: int
    vertices: tuple[int, ...]
    long_edges: tuple[Edge, ...]
    short_edges: tuple[Edge, ...] = ()
    # derived
    edges: tuple[Edge, ...] = field(init=False, repr=False, compare=False)
    edge_sets: tuple[frozenset, ...] = field(init=False, repr=False, compare=False)
    edge_id: dict = field(init=False, repr=False, compare=False)
    vertex_index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        vs = set(self.vertices)
        edges = self.long_edges + self.short_edges
        if len(set(self.long_edges)) != len(self.long_edges) or len(set(self.short_edges)) != len(
            self.short_edges
        ):
            raise DomainError("duplicate edge within a length class")
        index: dict[int, list[int]] = {v: [] for v in self.vertices}
        ids = {}
        for i, e in enumerate(edges):
            for v in e:
                if v not in vs:
                    raise DomainError(f"edge {e} leaves the vertex set")
                index[v].append(i)
            ids.setdefault(e, i)
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "edge_sets", tuple(frozenset(e) for e in edges))
        object.__setattr__(self, "edge_id", ids)
        object.__setattr__(self, "vertex_index", {v: tuple(ix) for v, ix in index.items()})

    # construction -------------------------------------------------------

    @classmethod
    def build(cls, long_edges: Iterable, short_edges: Iterable = (), vertices=None, n=None):
        longs = tuple(sorted(_norm(e) for e in long_edges))
        shorts = tuple(sorted(_norm(e) for e in short_edges))
        if vertices is None:
            vertices = {v for e in longs + shorts for v in e}
        vertices = tuple(sorted(set(vertices)))
        if n is None:
            n = vertices[-1] if vertices else 0
        return cls(n, vertices, longs, shorts)

    def subhypergraph(self, edge_ids: Iterable[int]) -> "APHypergraph":
        keep = sorted(set(edge_ids))
        L = self.num_long
        longs = tuple(self.edges[i] for i in keep if i < L)
        shorts = tuple(self.edges[i] for i in keep if i >= L)
        return APHypergraph(self.n, self.vertices, longs, shorts)

    # queries --------------------------------------------------------------

    @property
    def num_long(self) -> int:
        return len(self.long_edges)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @property
    def symmetric(self) -> bool:
        return not self.short_edges

    def is_long(self, eid: int) -> bool:
        return eid < len(self.long_edges)

    def lengths(self) -> tuple[int, ...]:
        return tuple(sorted({len(e) for e in self.edges}, reverse=True))

    def ap(self, eid: int) -> ArithmeticProgression:
        return ap_from_elements(self.edges[eid])

    def id_of(self, edge) -> int:
        """Edge id of ``edge`` (tuple, set or progression); DomainError if absent."""
        try:
            return self.edge_id[_norm(edge)]
        except KeyError:
            raise DomainError(f"edge {tuple(edge)} is not in the host hypergraph") from None

    def has_edge(self, edge) -> bool:
        return _norm(edge) in self.edge_id

    def incident(self, v: int) -> tuple[int, ...]:
        return self.vertex_index.get(v, ())

    def degree(self, v: int) -> int:
        return len(self.incident(v))

    def edges_meeting(self, vertices: Iterable[int]) -> list[int]:
        out = set()
        for v in vertices:
            out.update(self.incident(v))
        return sorted(out)


def induced_hypergraph(subset: GroundSubset, lengths: Sequence[int]) -> APHypergraph:
    """Hypergraph on ``subset`` whose edges are the progressions it contains.

    The largest length gives the long edges; a second, smaller length gives
    the short ones.  Repeated lengths collapse (``(3, 3)`` is symmetric).
    """
    ls = sorted(set(lengths), reverse=True)
    if not ls or any(q < 3 for q in ls):
        raise DomainError("lengths must be nonempty and at least 3")
    if len(ls) > 2:
        raise DomainError("at most two distinct lengths are supported")
    classes = [
        tuple(tuple(range(a, a + q * d, d)) for a, d in _core.aps_in_sorted(subset.elements, q))
        for q in ls
    ]
    longs = classes[0]
    shorts = classes[1] if len(classes) > 1 else ()
    return APHypergraph(subset.n, subset.elements, longs, shorts)


def full_hypergraph(n: int, lengths: Sequence[int]) -> APHypergraph:
    return induced_hypergraph(GroundSubset.full(n), lengths)

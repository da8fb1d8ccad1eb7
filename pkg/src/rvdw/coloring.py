"""Exact colourability of AP hypergraphs.

A colouring assigns each vertex a colour ``1 .. r``; it is proper for
``ColorSpec((q_1, ..., q_r))`` when no ``q_i``-AP is monochromatic in
colour ``i``.  In the two-length (asymmetric) setting colour 1 is *red*
and colour 2 is *blue*: long edges may not be all red, short edges may
not be all blue.

Two-colour instances go to the DPLL kernel in ``_core`` after two sound
reductions applied to a fixpoint:

* a vertex lying only in constraints that forbid the same colour gets the
  other colour (for ``(q_1, q_2)`` this fixes every element outside all
  ``q_1``-APs to colour 1, i.e. the "good colouring" rule);
* a vertex whose live constraints all sit on one vertex set is peeled and
  coloured last, once the rest of that set is known.

What remains is split into connected components, solved one by one under
a shared node budget.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from types import MappingProxyType
from typing import Mapping, Sequence

import numpy as np

from . import _core
from .aps import DomainError, enumerate_aps
from .hypergraph import APHypergraph, induced_hypergraph
from .sampling import GroundSubset

DEFAULT_BUDGET = 2_000_000
MAX_ENUMERATION = 1 << 21


class Decision(enum.Enum):
    COLORABLE = "colorable"
    NOT_COLORABLE = "not_colorable"
    INDETERMINATE = "indeterminate"


class ContractError(RuntimeError):
    """A precondition the caller was responsible for does not hold."""


class ShrinkError(RuntimeError):
    """Edge-critical shrinking hit an undecided sub-instance."""


@dataclass(frozen=True)
class ColorSpec:
    lengths: tuple[int, ...]

    def __post_init__(self):
        ls = tuple(self.lengths)
        object.__setattr__(self, "lengths", ls)
        if not ls:
            raise DomainError("a colour spec needs at least one length")
        if any(q < 3 for q in ls):
            raise DomainError("lengths must be at least 3")
        if any(b > a for a, b in zip(ls, ls[1:])):
            raise DomainError("lengths must be nonincreasing")

    @classmethod
    def parse(cls, text: str) -> "ColorSpec":
        return cls(tuple(int(t) for t in str(text).replace(" ", "").split(",") if t))

    @property
    def r(self) -> int:
        return len(self.lengths)

    @property
    def q1(self) -> int:
        return self.lengths[0]

    @property
    def q2(self) -> int:
        return self.lengths[1] if self.r > 1 else self.lengths[0]

    @property
    def symmetric(self) -> bool:
        return self.q1 == self.q2

    def threshold_exponent(self) -> float:
        """``q2 / (q1 (q2 - 1))``; ``p = c * n**-exponent`` is the threshold scale."""
        return self.q2 / (self.q1 * (self.q2 - 1))


@dataclass(frozen=True)
class Coloring:
    assignment: Mapping[int, int]

    def __post_init__(self):
        object.__setattr__(self, "assignment", MappingProxyType(dict(self.assignment)))

    def __getitem__(self, v: int) -> int:
        return self.assignment[v]

    def __len__(self) -> int:
        return len(self.assignment)

    def classes(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {}
        for v in sorted(self.assignment):
            out.setdefault(self.assignment[v], []).append(v)
        return out


@dataclass(frozen=True)
class DecisionResult:
    status: Decision
    coloring: Coloring | None = None
    nodes: int = 0

    @property
    def colorable(self) -> bool:
        return self.status is Decision.COLORABLE

    @property
    def not_colorable(self) -> bool:
        return self.status is Decision.NOT_COLORABLE

    @property
    def indeterminate(self) -> bool:
        return self.status is Decision.INDETERMINATE


# ---------------------------------------------------------------------------
# counting


def count_monochromatic_aps(ground: GroundSubset, coloring: Coloring, spec: ColorSpec) -> list[int]:
    """Per colour ``i``, the ``q_i``-APs inside ``ground`` coloured entirely ``i``."""
    missing = [v for v in ground.elements if v not in coloring.assignment]
    if missing:
        raise DomainError(f"colouring is not total on the ground set (missing {missing[:5]})")
    counts = []
    for i, q in enumerate(spec.lengths, start=1):
        members = [v for v in ground.elements if coloring[v] == i]
        counts.append(len(_core.aps_in_sorted(members, q)))
    return counts


def min_mono_count_over_colorings(n: int, r: int, q: int, cap: int = MAX_ENUMERATION) -> int:
    """Minimum number of monochromatic ``q``-APs over all ``r``-colourings of ``[n]``."""
    if r < 1 or n < 0:
        raise DomainError("need r >= 1 and n >= 0")
    total = r**n
    if total > cap:
        raise DomainError(f"{r}^{n} colourings exceed the enumeration cap {cap}")
    aps = enumerate_aps(n, q) if n >= q else []
    if not aps:
        return 0
    codes = np.arange(total, dtype=np.int64)
    digits = np.empty((n, total), dtype=np.int8)
    for i in range(n):
        digits[i] = (codes // r**i) % r
    mono = np.zeros(total, dtype=np.int32)
    for ap in aps:
        idx = [x - 1 for x in ap]
        same = np.ones(total, dtype=bool)
        for j in idx[1:]:
            same &= digits[j] == digits[idx[0]]
        mono += same
    return int(mono.min())


# ---------------------------------------------------------------------------
# two-colour engine


def _reduce(constraints):
    """Apply the pure-colour and peeling rules to a fixpoint.

    ``constraints`` is a list of ``(vertex tuple, forbidden colour)``.
    Returns ``(alive ids, fixed colours, peel stack)``.
    """
    alive = [True] * len(constraints)
    occ: dict[int, list[int]] = {}
    for c, (vs, _) in enumerate(constraints):
        for v in vs:
            occ.setdefault(v, []).append(c)
    fixed: dict[int, int] = {}
    peeled: list[tuple[int, list[int]]] = []
    changed = True
    while changed:
        changed = False
        for v in sorted(occ):
            if v in fixed:
                continue
            live = [c for c in occ[v] if alive[c]]
            if not live:
                continue
            bads = {constraints[c][1] for c in live}
            if len(bads) == 1:
                fixed[v] = 1 - bads.pop()
            elif len({constraints[c][0] for c in live}) == 1:
                peeled.append((v, live))
            else:
                continue
            for c in live:
                alive[c] = False
            changed = True
    return [c for c in range(len(constraints)) if alive[c]], fixed, peeled


def _components(ids, constraints):
    parent: dict[int, int] = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for c in ids:
        vs = constraints[c][0]
        for v in vs:
            parent.setdefault(v, v)
        r0 = find(vs[0])
        for v in vs[1:]:
            rv = find(v)
            if rv != r0:
                parent[max(rv, r0)] = min(rv, r0)
                r0 = min(rv, r0)
    groups: dict[int, list[int]] = {}
    for c in ids:
        groups.setdefault(find(constraints[c][0][0]), []).append(c)
    return [groups[k] for k in sorted(groups)]


def _swap_closed(ids, constraints) -> bool:
    present = {(constraints[c][0], constraints[c][1]) for c in ids}
    return all((vs, 1 - b) in present for vs, b in present)


def _violations(colour: Mapping[int, int], constraints) -> list[int]:
    return [c for c, (vs, b) in enumerate(constraints) if all(colour[v] == b for v in vs)]


def solve_constraints(vertices: Sequence[int], constraints, budget: int, preprocess: bool = True):
    """Decide a two-colour instance given as ``(vertex tuple, forbidden colour)`` pairs.

    Returns ``(status, colours (0/1 per vertex) or None, nodes, unsat_ids)``;
    ``unsat_ids`` lists the constraints of the component proven unsatisfiable.
    """
    if preprocess:
        ids, fixed, peeled = _reduce(constraints)
    else:
        ids, fixed, peeled = list(range(len(constraints))), {}, []
    colour = {v: 0 for v in vertices}
    colour.update(fixed)
    nodes = 0
    status = _core.SAT
    for comp in _components(ids, constraints):
        local = sorted({v for c in comp for v in constraints[c][0]})
        pos = {v: i for i, v in enumerate(local)}
        ptr = [0]
        verts = []
        kind = []
        for c in comp:
            vs, b = constraints[c]
            verts.extend(pos[v] for v in vs)
            ptr.append(len(verts))
            kind.append(b)
        st, cols, used = _core.solve_two_color(
            len(local), ptr, verts, kind, _swap_closed(comp, constraints), budget - nodes
        )
        nodes += used
        if st == _core.UNSAT:
            return _core.UNSAT, None, nodes, comp
        if st == _core.BUDGET:
            status = _core.BUDGET
            break
        for v, cv in zip(local, cols):
            colour[v] = cv
    if status == _core.BUDGET:
        return status, None, nodes, None
    for v, live in reversed(peeled):
        vs = constraints[live[0]][0]
        others = {colour[u] for u in vs if u != v}
        forbidden = {constraints[c][1] for c in live}
        colour[v] = 0
        if len(others) == 1:
            (o,) = others
            if o in forbidden:
                colour[v] = 1 - o
    bad = _violations(colour, constraints)
    if bad:
        raise AssertionError(f"solver returned an improper colouring (violates {bad[:3]})")
    return _core.SAT, colour, nodes, None


def hypergraph_constraints(h: APHypergraph, symmetric: bool | None = None):
    """Constraints of ``h``: symmetric mode forbids both colours on every edge,
    otherwise long edges may not be all red (0) and short ones not all blue (1)."""
    if symmetric is None:
        symmetric = h.symmetric
    out = []
    owner = []
    for eid, e in enumerate(h.edges):
        if symmetric:
            out.append((e, 0))
            out.append((e, 1))
            owner += [eid, eid]
        else:
            out.append((e, 0 if h.is_long(eid) else 1))
            owner.append(eid)
    return out, owner


def _result(status, colour, nodes, offset=1):
    if status == _core.SAT:
        return DecisionResult(Decision.COLORABLE, Coloring({v: c + offset for v, c in colour.items()}), nodes)
    if status == _core.UNSAT:
        return DecisionResult(Decision.NOT_COLORABLE, None, nodes)
    return DecisionResult(Decision.INDETERMINATE, None, nodes)


def _check_budget(budget):
    if budget is None or budget <= 0:
        raise DomainError("budget must be a positive node count")


def decide_hypergraph(h: APHypergraph, budget: int = DEFAULT_BUDGET, symmetric: bool | None = None,
                      preprocess: bool = True) -> DecisionResult:
    """Two-colourability of ``h`` (symmetric or asymmetric by its edge classes)."""
    _check_budget(budget)
    cons, _ = hypergraph_constraints(h, symmetric)
    st, colour, nodes, _ = solve_constraints(h.vertices, cons, budget, preprocess)
    return _result(st, colour, nodes)


def asym_2_colorable(h: APHypergraph, budget: int = DEFAULT_BUDGET, preprocess: bool = True) -> DecisionResult:
    """Red (1) / blue (2) colouring with a blue vertex on every long edge and a
    red vertex on every short edge."""
    if h.symmetric and h.long_edges and len(h.lengths()) == 1 and h.short_edges == ():
        pass  # only long edges: all blue is always fine, handled by the engine
    return decide_hypergraph(h, budget, symmetric=False, preprocess=preprocess)


def find_proper_coloring(subset: GroundSubset, spec: ColorSpec, budget: int = DEFAULT_BUDGET,
                         preprocess: bool = True) -> DecisionResult:
    """Decide whether ``subset`` admits a proper colouring for ``spec``."""
    _check_budget(budget)
    if spec.r == 1:
        aps = _core.aps_in_sorted(subset.elements, spec.q1)
        if aps:
            return DecisionResult(Decision.NOT_COLORABLE, None, 0)
        return DecisionResult(Decision.COLORABLE, Coloring({v: 1 for v in subset.elements}), 0)
    h = induced_hypergraph(subset, spec.lengths[:2])
    res = decide_hypergraph(h, budget, symmetric=spec.symmetric, preprocess=preprocess)
    if spec.r > 2 and res.not_colorable:
        res = _general_search(subset, spec, budget - res.nodes, res.nodes, preprocess)
    elif spec.r > 2 and res.indeterminate:
        res = DecisionResult(Decision.INDETERMINATE, None, res.nodes)
    if res.colorable:
        counts = count_monochromatic_aps(subset, res.coloring, spec)
        if any(counts):
            raise AssertionError(f"improper colouring returned: {counts}")
    return res


def _general_search(subset, spec, budget, spent, preprocess):
    """Backtracking for three or more colours (only reached when two fail)."""
    fams = [[tuple(range(a, a + q * d, d)) for a, d in _core.aps_in_sorted(subset.elements, q)]
            for q in spec.lengths]
    colour = {}
    if preprocess:
        in_long = {v for e in fams[0] for v in e}
        colour = {v: 0 for v in subset.elements if v not in in_long}
    free = [v for v in subset.elements if v not in colour]
    by_vertex: dict[int, list[tuple[int, tuple]]] = {v: [] for v in subset.elements}
    for i, fam in enumerate(fams):
        for e in fam:
            for v in e:
                by_vertex[v].append((i, e))
    free.sort(key=lambda v: (-len(by_vertex[v]), v))
    r = spec.r
    nodes = 0

    def ok(v, c):
        for i, e in by_vertex[v]:
            if i == c and all(colour.get(u) == c for u in e):
                return False
        return True

    stack = [0]
    k = 0
    while True:
        if k == len(free):
            return DecisionResult(
                Decision.COLORABLE, Coloring({v: c + 1 for v, c in colour.items()}), spent + nodes)
        v = free[k]
        c = stack[k]
        colour.pop(v, None)
        placed = False
        while c < r:
            nodes += 1
            if nodes > budget:
                return DecisionResult(Decision.INDETERMINATE, None, spent + nodes - 1)
            colour[v] = c
            if ok(v, c):
                placed = True
                break
            del colour[v]
            c += 1
        if placed:
            stack[k] = c + 1
            k += 1
            if k == len(stack):
                stack.append(0)
            else:
                stack[k] = 0
        else:
            stack[k] = 0
            k -= 1
            if k < 0:
                return DecisionResult(Decision.NOT_COLORABLE, None, spent + nodes)


# ---------------------------------------------------------------------------
# edge-critical cores


def _edge_solver(h: APHypergraph, symmetric: bool, budget: int):
    """Decide sub-hypergraphs of ``h`` given by edge-id lists without rebuilding ``h``."""
    cons, owner = hypergraph_constraints(h, symmetric)
    per_edge: dict[int, list[int]] = {}
    for c, e in enumerate(owner):
        per_edge.setdefault(e, []).append(c)

    def solve(ids):
        sel = [c for e in ids for c in per_edge[e]]
        st, _, _, comp = solve_constraints(h.vertices, [cons[c] for c in sel], budget)
        core = sorted({owner[sel[c]] for c in comp}) if comp is not None else None
        return st, core

    return solve


def extract_edge_critical(h: APHypergraph, budget: int = DEFAULT_BUDGET,
                          symmetric: bool | None = None) -> APHypergraph:
    """A non-colourable subhypergraph of ``h`` that every single edge deletion makes colourable.

    Edges are tried for deletion in id order (long edges first, then
    lexicographic).  One pass suffices: non-colourability is monotone, so
    an edge that was needed once stays needed.  Whenever a deletion keeps
    the instance unsatisfiable, the working set is narrowed to the
    component the solver proved unsatisfiable; edges kept earlier always
    belong to it, so the pass continues where it was.
    """
    _check_budget(budget)
    if symmetric is None:
        symmetric = h.symmetric
    solve = _edge_solver(h, symmetric, budget)
    st, keep = solve(range(h.num_edges))
    if st == _core.SAT:
        raise ContractError("input hypergraph is colourable")
    if st == _core.BUDGET:
        raise ShrinkError("budget exhausted deciding the input")
    i = 0
    while i < len(keep):
        trial = keep[:i] + keep[i + 1:]
        st, unsat = solve(trial)
        if st == _core.BUDGET:
            raise ShrinkError(f"budget exhausted while testing edge {h.edges[keep[i]]}")
        if st == _core.UNSAT:
            keep = unsat
        else:
            i += 1
    core = h.subhypergraph(keep)
    if not is_edge_critical(core, budget, symmetric):
        raise AssertionError("shrinking produced a non-critical core")
    return core


def is_edge_critical(h: APHypergraph, budget: int = DEFAULT_BUDGET, symmetric: bool | None = None) -> bool:
    """Not colourable, and colourable after deleting any single edge."""
    if symmetric is None:
        symmetric = h.symmetric
    solve = _edge_solver(h, symmetric, budget)
    ids = list(range(h.num_edges))
    for trial in [ids] + [ids[:i] + ids[i + 1:] for i in ids]:
        st, _ = solve(trial)
        if st == _core.BUDGET:
            raise ShrinkError("budget exhausted")
        if (st == _core.SAT) == (trial is ids):
            return False
    return True


def exhaustive_colorable(subset: GroundSubset, spec: ColorSpec) -> bool:
    """Brute force over all ``r^|subset|`` colourings; a test oracle."""
    els = subset.elements
    fams = [[set(range(a, a + q * d, d)) for a, d in _core.aps_in_sorted(els, q)] for q in spec.lengths]
    for combo in itertools.product(range(spec.r), repeat=len(els)):
        col = dict(zip(els, combo))
        if all(not all(col[v] == i for v in e) for i, fam in enumerate(fams) for e in fam):
            return True
    return False

"""Seeded Monte Carlo experiments around the threshold ``p = c n^{-q2/(q1(q2-1))}``.

Every trial is driven by its own Philox stream keyed by
``derive_seed(master_seed, n, c_index, trial_index)``.  A cell can
therefore be re-run alone, and results do not depend on how trials are
spread over worker processes: workers return integer counts which are
summed in trial order.

Estimates use the Wilson score interval at 95% (``z = 1.959963984540054``):
with ``m`` decided trials and ``k`` successes, ``phat = k/m``,

    centre = (phat + z^2/(2m)) / (1 + z^2/m)
    half   = z * sqrt(phat (1 - phat)/m + z^2/(4 m^2)) / (1 + z^2/m)

Indeterminate trials (solver budget exhausted) are excluded from ``m``
and reported separately.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import NamedTuple, Optional, Sequence

from . import _core
from .aps import DomainError
from .blocking_asym import census_asym, extract_blocking_asym
from .blocking_sym import census_sym, extract_blocking_sym
from .coloring import DEFAULT_BUDGET, ColorSpec, Decision, find_proper_coloring
from .hypergraph import induced_hypergraph
from .sampling import GroundSubset, SamplingParams, derive_seed, random_subset

Z95 = 1.959963984540054


class AllIndeterminate(RuntimeError):
    """Every trial of a cell exhausted the solver budget."""


def wilson_interval(successes: int, m: int, z: float = Z95) -> tuple[float, float]:
    if m <= 0:
        raise DomainError("Wilson interval needs at least one decided trial")
    ph = successes / m
    denom = 1 + z * z / m
    centre = (ph + z * z / (2 * m)) / denom
    half = z * math.sqrt(ph * (1 - ph) / m + z * z / (4 * m * m)) / denom
    lo = 0.0 if successes == 0 else max(0.0, centre - half)
    hi = 1.0 if successes == m else min(1.0, centre + half)
    return lo, hi


def threshold_p(n: int, spec: ColorSpec, c: float) -> float:
    return min(1.0, c * n ** (-spec.threshold_exponent()))


# ---------------------------------------------------------------------------
# isolation


@dataclass(frozen=True)
class IsolationStats:
    q_size: int
    qi_size: int
    delta: float
    threshold_value: float
    mostly_independent: bool

    @property
    def non_isolated(self) -> int:
        return self.q_size - self.qi_size


def isolation_delta(q1: int, q2: int) -> float:
    return min(q2, q1 - q2) / (2 * q1 * (q2 - 1))


def isolation_stats(subset: GroundSubset, q1: int, q2: int) -> IsolationStats:
    """``Q`` (union of ``q1``-APs), ``Q_I`` (union of isolated ones) and the verdict.

    ``Q`` is mostly independent when ``|Q \\ Q_I| < n^(1 - 1/(q2-1) - delta)``.
    """
    if not q1 > q2 >= 3:
        raise DomainError("need q1 > q2 >= 3")
    aps = [range(a, a + q1 * d, d) for a, d in _core.aps_in_sorted(subset.elements, q1)]
    count: dict[int, int] = {}
    for ap in aps:
        for v in ap:
            count[v] = count.get(v, 0) + 1
    qi = set()
    for ap in aps:
        if all(count[v] == 1 for v in ap):
            qi.update(ap)
    delta = isolation_delta(q1, q2)
    thr = subset.n ** (1 - 1 / (q2 - 1) - delta)
    return IsolationStats(len(count), len(qi), delta, thr, len(count) - len(qi) < thr)


# ---------------------------------------------------------------------------
# census


@dataclass
class CensusRecord:
    ap_counts: dict[int, int] = field(default_factory=dict)
    overlap_pairs: dict[int, int] = field(default_factory=dict)
    paths_by_length: dict[int, int] = field(default_factory=dict)
    special_cycles: int = 0
    cycles_with_handles: int = 0
    spoiled_paths: int = 0
    reduced_fano: int = 0
    saws: int = 0
    spoiled_extensions: int = 0
    non_simply_covered: int = 0

    SCALARS = ("special_cycles", "cycles_with_handles", "spoiled_paths", "reduced_fano",
               "saws", "spoiled_extensions", "non_simply_covered")

    def as_dict(self) -> dict:
        d = asdict(self)
        for k in ("ap_counts", "overlap_pairs", "paths_by_length"):
            d[k] = {int(a): b for a, b in sorted(d[k].items())}
        return d


def _overlap_pairs(elements, q: int) -> dict[int, int]:
    """Pairs of ``q``-APs in the set, keyed by intersection size ``m >= 1``."""
    aps = [frozenset(range(a, a + q * d, d)) for a, d in _core.aps_in_sorted(elements, q)]
    inc: dict[int, list[int]] = {}
    for i, ap in enumerate(aps):
        for v in ap:
            inc.setdefault(v, []).append(i)
    out: dict[int, int] = {}
    for i, ap in enumerate(aps):
        others = {j for v in ap for j in inc[v] if j > i}
        for j in others:
            m = len(ap & aps[j])
            out[m] = out.get(m, 0) + 1
    return out


def configuration_census(subset: GroundSubset, spec: ColorSpec, max_len: Optional[int] = None,
                         budget: Optional[int] = None) -> CensusRecord:
    """AP counts, overlapping ``q1``-AP pairs and the blocking-structure censuses."""
    rec = CensusRecord()
    for q in sorted(set(spec.lengths), reverse=True):
        rec.ap_counts[q] = len(_core.aps_in_sorted(subset.elements, q))
    rec.overlap_pairs = _overlap_pairs(subset.elements, spec.q1)
    if spec.symmetric:
        c = census_sym(induced_hypergraph(subset, (spec.q1,)), max_len, budget)
        rec.special_cycles = c.special_cycles
        rec.cycles_with_handles = c.cycles_with_handles
        rec.spoiled_paths = c.spoiled_paths
        rec.reduced_fano = c.reduced_fano
    else:
        c = census_asym(induced_hypergraph(subset, (spec.q1, spec.q2)), max_len, budget)
        rec.saws = c.saws
        rec.spoiled_paths = c.spoiled_paths
        rec.spoiled_extensions = c.spoiled_extensions
        rec.non_simply_covered = c.non_simply_covered
    rec.paths_by_length = dict(c.paths_by_length)
    return rec


# ---------------------------------------------------------------------------
# trials


@dataclass
class TrialRecord:
    n: int
    p: float
    seed: int
    subset_size: int
    decision: str
    certificate_kind: Optional[str] = None
    census: Optional[dict] = None
    isolation: Optional[dict] = None
    wall_time: float = 0.0


@dataclass(frozen=True)
class TrialTask:
    n: int
    spec: ColorSpec
    p: float
    seed: int
    budget: int = DEFAULT_BUDGET
    certify: bool = False
    census_max_len: Optional[int] = None
    isolation: bool = False


def run_trial(task: TrialTask) -> TrialRecord:
    t0 = time.perf_counter()
    subset = random_subset(SamplingParams(task.n, task.p, task.seed))
    res = find_proper_coloring(subset, task.spec, task.budget)
    rec = TrialRecord(task.n, task.p, task.seed, len(subset), res.status.value)
    if task.certify and res.not_colorable and task.spec.r == 2:
        h = induced_hypergraph(subset, task.spec.lengths)
        cert = extract_blocking_sym(h, task.budget) if task.spec.symmetric else extract_blocking_asym(h, task.budget)
        rec.certificate_kind = cert.kind
    if task.census_max_len is not None:
        rec.census = configuration_census(subset, task.spec, task.census_max_len).as_dict()
    if task.isolation and task.spec.q1 > task.spec.q2:
        rec.isolation = asdict(isolation_stats(subset, task.spec.q1, task.spec.q2))
    rec.wall_time = time.perf_counter() - t0
    return rec


def run_tasks(tasks: Sequence[TrialTask], workers: int = 1) -> list[TrialRecord]:
    """Run trials, in order, on ``workers`` processes (1 = in-process)."""
    if workers <= 1 or len(tasks) <= 1:
        return [run_trial(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(run_trial, tasks, chunksize=max(1, len(tasks) // (4 * workers))))


class RamseyEstimate(NamedTuple):
    phat: float
    ci_low: float
    ci_high: float
    indeterminate_rate: float


@dataclass(frozen=True)
class CellCounts:
    trials: int
    successes: int
    indeterminate: int

    @property
    def decided(self) -> int:
        return self.trials - self.indeterminate

    def estimate(self) -> RamseyEstimate:
        if self.decided == 0:
            raise AllIndeterminate(f"all {self.trials} trials were indeterminate")
        lo, hi = wilson_interval(self.successes, self.decided)
        return RamseyEstimate(self.successes / self.decided, lo, hi, self.indeterminate / self.trials)


def _count(records: Sequence[TrialRecord]) -> CellCounts:
    succ = sum(r.decision == Decision.NOT_COLORABLE.value for r in records)
    ind = sum(r.decision == Decision.INDETERMINATE.value for r in records)
    return CellCounts(len(records), succ, ind)


def trial_seeds(master_seed: int, n: int, c_index: int, trials: int) -> list[int]:
    return [derive_seed(master_seed, n, c_index, t) for t in range(trials)]


def ramsey_probability(n: int, spec: ColorSpec, p: float, trials: int, master_seed: int,
                       budget: int = DEFAULT_BUDGET, c_index: int = 0, workers: int = 1) -> RamseyEstimate:
    """Estimate ``P([n]_p -> spec)``: the fraction of decided trials that are not colourable."""
    if trials < 1:
        raise DomainError("trials must be positive")
    tasks = [TrialTask(n, spec, p, s, budget) for s in trial_seeds(master_seed, n, c_index, trials)]
    return _count(run_tasks(tasks, workers)).estimate()


# ---------------------------------------------------------------------------
# sweeps


@dataclass(frozen=True)
class SweepConfig:
    ns: tuple[int, ...]
    spec: ColorSpec
    cs: tuple[float, ...]
    trials: int
    master_seed: int
    budget: int = DEFAULT_BUDGET
    census_max_len: Optional[int] = None
    isolation: bool = False
    workers: int = 1

    def __post_init__(self):
        object.__setattr__(self, "ns", tuple(int(n) for n in self.ns))
        object.__setattr__(self, "cs", tuple(float(c) for c in self.cs))
        if not self.ns or any(n < 1 for n in self.ns):
            raise DomainError("n grid must be nonempty and positive")
        if not self.cs or any(c < 0 for c in self.cs):
            raise DomainError("c grid must be nonempty and nonnegative")
        if self.trials < 1 or self.budget < 1:
            raise DomainError("trials and budget must be positive")

    @property
    def exponent(self) -> float:
        return self.spec.threshold_exponent()


@dataclass
class SweepRow:
    n: int
    q1: int
    q2: int
    r: int
    c: float
    p: float
    trials: int
    successes: int
    indeterminate: int
    phat: float
    ci_low: float
    ci_high: float
    seed: int
    error: Optional[str] = None
    census_means: Optional[dict] = None
    isolation: Optional[dict] = None
    wall_time: float = 0.0


def _census_means(records) -> Optional[dict]:
    cs = [r.census for r in records if r.census is not None]
    if not cs:
        return None
    out = {}
    for k in CensusRecord.SCALARS:
        out[k] = sum(c[k] for c in cs) / len(cs)
    for k in ("ap_counts", "overlap_pairs", "paths_by_length"):
        keys = sorted({kk for c in cs for kk in c[k]})
        out[k] = {kk: sum(c[k].get(kk, 0) for c in cs) / len(cs) for kk in keys}
    return out


def _isolation_summary(records) -> Optional[dict]:
    iso = [r.isolation for r in records if r.isolation is not None]
    if not iso:
        return None
    return {
        "trials": len(iso),
        "mostly_independent": sum(i["mostly_independent"] for i in iso),
        "fraction": sum(i["mostly_independent"] for i in iso) / len(iso),
        "mean_q_size": sum(i["q_size"] for i in iso) / len(iso),
        "mean_non_isolated": sum(i["q_size"] - i["qi_size"] for i in iso) / len(iso),
        "threshold_value": iso[0]["threshold_value"],
        "delta": iso[0]["delta"],
    }


def threshold_sweep(config: SweepConfig) -> list[SweepRow]:
    """One row per ``(n, c)`` cell, ordered by ``n`` then ``c``.

    A failing cell yields a row with ``error`` set and NaN estimates; the
    sweep carries on.
    """
    spec = config.spec
    cells = sorted(((n, ci, c) for n in config.ns for ci, c in enumerate(config.cs)),
                   key=lambda t: (t[0], t[2], t[1]))
    rows = []
    for n, ci, c in cells:
        p = threshold_p(n, spec, c)
        t0 = time.perf_counter()
        tasks = [TrialTask(n, spec, p, s, config.budget, False, config.census_max_len, config.isolation)
                 for s in trial_seeds(config.master_seed, n, ci, config.trials)]
        base = dict(n=n, q1=spec.q1, q2=spec.q2, r=spec.r, c=c, p=p, trials=config.trials,
                    seed=config.master_seed)
        try:
            records = run_tasks(tasks, config.workers)
            counts = _count(records)
            est = counts.estimate()
            row = SweepRow(**base, successes=counts.successes, indeterminate=counts.indeterminate,
                           phat=est.phat, ci_low=est.ci_low, ci_high=est.ci_high,
                           census_means=_census_means(records), isolation=_isolation_summary(records))
        except Exception as exc:  # flagged, never fatal to the sweep
            row = SweepRow(**base, successes=0, indeterminate=0, phat=math.nan, ci_low=math.nan,
                           ci_high=math.nan, error=f"{type(exc).__name__}: {exc}")
        row.wall_time = time.perf_counter() - t0
        rows.append(row)
    return rows


def monotonicity_violations(rows: Sequence[SweepRow]) -> list[tuple[SweepRow, SweepRow]]:
    """Pairs ``(i, j)`` at equal ``n`` with ``c_i < c_j`` whose intervals show a strict decrease."""
    out = []
    by_n: dict[int, list[SweepRow]] = {}
    for r in rows:
        if r.error is None:
            by_n.setdefault(r.n, []).append(r)
    for rs in by_n.values():
        rs.sort(key=lambda r: r.c)
        for i, a in enumerate(rs):
            for b in rs[i + 1:]:
                if b.ci_high < a.ci_low:
                    out.append((a, b))
    return out


def crossing_point(rows: Sequence[SweepRow], n: int, level: float = 0.5) -> Optional[float]:
    """First ``c`` where ``phat`` reaches ``level``, interpolated linearly in ``log c``."""
    rs = sorted((r for r in rows if r.n == n and r.error is None), key=lambda r: r.c)
    prev = None
    for r in rs:
        if r.phat >= level:
            if prev is None or prev.c <= 0:
                return r.c
            if r.phat == prev.phat:
                return r.c
            t = (level - prev.phat) / (r.phat - prev.phat)
            return math.exp(math.log(prev.c) + t * (math.log(r.c) - math.log(prev.c)))
        prev = r
    return None

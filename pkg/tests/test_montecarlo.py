import math
import random
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rvdw.aps import DomainError
from rvdw.coloring import ColorSpec
from rvdw.montecarlo import (AllIndeterminate, CellCounts, SweepConfig, SweepRow, TrialTask,
                             configuration_census, crossing_point, isolation_delta,
                             isolation_stats, monotonicity_violations, ramsey_probability,
                             run_tasks, threshold_p, threshold_sweep, trial_seeds,
                             wilson_interval)
from rvdw.sampling import GroundSubset

from oracles import aps_in

SYM = ColorSpec((3, 3))
ASYM = ColorSpec((4, 3))


def test_wilson_reference_values():
    lo, hi = wilson_interval(5, 10)
    assert lo == pytest.approx(0.2366, abs=1e-4) and hi == pytest.approx(0.7634, abs=1e-4)
    lo, hi = wilson_interval(0, 10)
    assert lo == 0.0 and hi == pytest.approx(0.2775, abs=1e-4)
    lo, hi = wilson_interval(10, 10)
    assert hi == 1.0 and lo == pytest.approx(0.7225, abs=1e-4)
    with pytest.raises(DomainError):
        wilson_interval(0, 0)


@given(st.integers(1, 500), st.data())
def test_wilson_contains_phat(m, data):
    k = data.draw(st.integers(0, m))
    lo, hi = wilson_interval(k, m)
    assert 0 <= lo <= k / m <= hi <= 1


def test_threshold_p():
    assert threshold_p(4096, SYM, 1.0) == pytest.approx(1 / 64)
    assert threshold_p(2 ** 16, ASYM, 0.5) == pytest.approx(0.5 * 2 ** -6)
    assert threshold_p(4, SYM, 100.0) == 1.0


def test_isolation_delta():
    assert isolation_delta(4, 3) == pytest.approx(1 / 16)
    assert isolation_delta(5, 3) == pytest.approx(2 / 20)


@settings(max_examples=80, deadline=None)
@given(st.sets(st.integers(1, 40), max_size=22))
def test_isolation_stats_against_brute_force(elements):
    sub = GroundSubset.of(40, elements)
    s = isolation_stats(sub, 4, 3)
    aps = [set(t) for t in aps_in(elements, 4)]
    Q = set().union(*aps) if aps else set()
    iso = [a for a in aps if not any(b is not a and a & b for b in aps)]
    QI = set().union(*iso) if iso else set()
    assert (s.q_size, s.qi_size) == (len(Q), len(QI))
    assert s.mostly_independent == (len(Q - QI) < 40 ** (1 - 1 / 2 - 1 / 16))
    with pytest.raises(DomainError):
        isolation_stats(sub, 3, 3)


def test_configuration_census_overlaps():
    rng = random.Random(0)
    els = sorted(rng.sample(range(1, 50), 18))
    rec = configuration_census(GroundSubset.of(50, els), SYM, max_len=3)
    aps = [set(t) for t in aps_in(els, 3)]
    want = {}
    for a, b in combinations(aps, 2):
        m = len(a & b)
        if m:
            want[m] = want.get(m, 0) + 1
    assert rec.overlap_pairs == want
    assert rec.ap_counts == {3: len(aps)}
    d = rec.as_dict()
    assert set(d) >= {"special_cycles", "spoiled_paths", "reduced_fano", "paths_by_length"}
    arec = configuration_census(GroundSubset.of(50, els), ASYM, max_len=3)
    assert set(arec.ap_counts) == {4, 3}


def test_ramsey_probability_is_reproducible_and_worker_independent():
    a = ramsey_probability(40, SYM, 0.5, 30, master_seed=9)
    b = ramsey_probability(40, SYM, 0.5, 30, master_seed=9, workers=2)
    assert a == b
    assert 0 <= a.phat <= 1 and a.ci_low <= a.phat <= a.ci_high
    assert ramsey_probability(40, SYM, 1.0, 5, master_seed=1).phat == 1.0
    assert ramsey_probability(40, SYM, 0.0, 5, master_seed=1).phat == 0.0
    with pytest.raises(DomainError):
        ramsey_probability(40, SYM, 0.5, 0, master_seed=1)


def test_cell_counts_all_indeterminate():
    with pytest.raises(AllIndeterminate):
        CellCounts(4, 0, 4).estimate()


def test_trial_seeds_distinct_per_cell():
    s = trial_seeds(1, 512, 0, 100) + trial_seeds(1, 512, 1, 100) + trial_seeds(1, 1024, 0, 100)
    assert len(set(s)) == 300


def test_run_tasks_order_independent_of_workers():
    tasks = [TrialTask(60, SYM, 0.2, s, census_max_len=3) for s in trial_seeds(3, 60, 0, 12)]
    a = run_tasks(tasks, 1)
    b = run_tasks(tasks, 3)
    strip = lambda rs: [(r.seed, r.subset_size, r.decision, r.census) for r in rs]
    assert strip(a) == strip(b)


def test_threshold_sweep_rows_and_flags():
    cfg = SweepConfig(ns=(64, 32), spec=SYM, cs=(4.0, 0.5), trials=10, master_seed=5)
    rows = threshold_sweep(cfg)
    assert [(r.n, r.c) for r in rows] == [(32, 0.5), (32, 4.0), (64, 0.5), (64, 4.0)]
    assert all(r.error is None and r.trials == 10 for r in rows)
    # a one-node budget cannot decide dense samples: the cell is flagged, not fatal
    bad = threshold_sweep(SweepConfig(ns=(200,), spec=SYM, cs=(30.0,), trials=3, master_seed=1, budget=1))
    assert bad[0].error is not None and math.isnan(bad[0].phat)
    with pytest.raises(DomainError):
        SweepConfig(ns=(), spec=SYM, cs=(1.0,), trials=1, master_seed=0)


def _row(n, c, phat, lo, hi):
    return SweepRow(n, 3, 3, 2, c, 0.0, 100, int(phat * 100), 0, phat, lo, hi, 0)


def test_monotonicity_and_crossing():
    rows = [_row(512, 0.5, 0.1, 0.05, 0.2), _row(512, 1.0, 0.4, 0.3, 0.5), _row(512, 2.0, 0.8, 0.7, 0.9)]
    assert monotonicity_violations(rows) == []
    c = crossing_point(rows, 512)
    assert 1.0 < c < 2.0
    assert c == pytest.approx(math.exp(math.log(1.0) + 0.25 * math.log(2.0)))
    # a dip inside the noise is tolerated, a clear one is not
    noisy = rows + [_row(512, 4.0, 0.75, 0.65, 0.85)]
    assert monotonicity_violations(noisy) == []
    broken = rows + [_row(512, 4.0, 0.2, 0.1, 0.3)]
    assert len(monotonicity_violations(broken)) == 1  # only c = 2 clears the noise
    assert crossing_point(rows[:1], 512) is None

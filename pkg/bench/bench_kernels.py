"""Compare the compiled kernel with the pure-Python fallback.

Times the two hot kernels, AP enumeration inside a sorted set and the
2-colouring search, on the same seeded inputs for both backends and checks
that they agree.  Usage::

    python bench/bench_kernels.py [--repeat 1]
"""

import argparse
import time

from rvdw import _kernel, _pykernel
from rvdw.coloring import ColorSpec, find_proper_coloring
from rvdw.sampling import GroundSubset, SamplingParams, random_subset


def best_of(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def solver_inputs(instances):
    """Constraint arrays the solver wrapper hands to the kernel for ``instances``."""
    from rvdw import _core
    captured = []
    real = _core.solve_two_color

    def spy(*args):
        captured.append(args)
        return real(*args)

    _core.solve_two_color = spy
    try:
        for subset, spec in instances:
            find_proper_coloring(subset, spec)
    finally:
        _core.solve_two_color = real
    return captured


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=1)
    args = ap.parse_args(argv)

    print(f"{'kernel':<28}{'cython (s)':>12}{'python (s)':>12}{'speed-up':>10}")
    subsets = [random_subset(SamplingParams(n, 0.3, 1)) for n in (2000, 4000)]
    for q in (3, 4):
        def run(mod):
            return [mod.aps_in_sorted(list(s.elements), q) for s in subsets]
        tc, a = best_of(lambda: run(_kernel), args.repeat)
        tp, b = best_of(lambda: run(_pykernel), args.repeat)
        assert [sorted(map(tuple, x)) for x in a] == [sorted(map(tuple, x)) for x in b]
        print(f"{f'aps_in_sorted q={q}':<28}{tc:>12.4f}{tp:>12.4f}{tp / tc:>9.1f}x")

    boundary = [(GroundSubset.full(n), ColorSpec(qs))
                for n, qs in ((8, (3, 3)), (9, (3, 3)), (17, (4, 3)), (18, (4, 3)), (34, (4, 4)))]
    # samples at the symmetric crossing, where sweeps spend their time
    near = [(random_subset(SamplingParams(4096, 3 / 64, s)), ColorSpec((3, 3))) for s in range(5)]
    for label, pick in (("solve_two_color boundary", solver_inputs(boundary)),
                        ("solve_two_color near c*", solver_inputs(near))):
        def run(mod):
            return [mod.solve_two_color(*a) for a in pick]
        tc, a = best_of(lambda: run(_kernel), args.repeat)
        tp, b = best_of(lambda: run(_pykernel), args.repeat)
        assert [(x[0], x[2]) for x in a] == [(x[0], x[2]) for x in b], "backends disagree"
        print(f"{label:<28}{tc:>12.4f}{tp:>12.4f}{tp / tc:>9.1f}x")


if __name__ == "__main__":
    main()

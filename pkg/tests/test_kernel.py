"""The compiled kernel and the pure-Python fallback must agree exactly."""

import os
import random
import subprocess
import sys

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rvdw import _core, _pykernel

try:
    from rvdw import _kernel
except ImportError:  # pragma: no cover - extension not built
    _kernel = None

needs_ext = pytest.mark.skipif(_kernel is None, reason="compiled extension not built")


def _random_instance(rng, nv, m, symmetric):
    ptr, verts, kind = [0], [], []
    for _ in range(m):
        size = rng.randint(2, min(5, nv))
        verts.extend(rng.sample(range(nv), size))
        ptr.append(len(verts))
        kind.append(rng.randint(0, 1) if not symmetric else 0)
    if symmetric:
        # symmetric mode: each edge appears once per colour
        k2 = []
        p2, v2 = [0], []
        for c in range(m):
            for col in (0, 1):
                v2.extend(verts[ptr[c]:ptr[c + 1]])
                p2.append(len(v2))
                k2.append(col)
        ptr, verts, kind = p2, v2, k2
    return ptr, verts, kind


def _brute(nv, ptr, verts, kind):
    for mask in range(1 << nv):
        col = [(mask >> v) & 1 for v in range(nv)]
        if all(any(col[verts[k]] != kind[c] for k in range(ptr[c], ptr[c + 1]))
               for c in range(len(kind))):
            return True
    return False


@pytest.mark.parametrize("symmetric", [False, True])
def test_python_kernel_against_brute_force(symmetric):
    rng = random.Random(11)
    for _ in range(300):
        nv = rng.randint(2, 10)
        ptr, verts, kind = _random_instance(rng, nv, rng.randint(1, 25), symmetric)
        st_, col, _nodes = _pykernel.solve_two_color(nv, ptr, verts, kind, symmetric, 10 ** 6)
        assert (st_ == _pykernel.SAT) == _brute(nv, ptr, verts, kind)
        if col is not None:
            for c in range(len(kind)):
                assert any(col[verts[k]] != kind[c] for k in range(ptr[c], ptr[c + 1]))


@needs_ext
@pytest.mark.parametrize("symmetric", [False, True])
def test_backends_identical_including_node_counts(symmetric):
    rng = random.Random(5)
    for _ in range(400):
        nv = rng.randint(2, 14)
        ptr, verts, kind = _random_instance(rng, nv, rng.randint(1, 40), symmetric)
        for budget in (3, 50, 10 ** 6):
            a = _pykernel.solve_two_color(nv, ptr, verts, kind, symmetric, budget)
            b = _kernel.solve_two_color(nv, ptr, verts, kind, symmetric, budget)
            assert tuple(a[:1]) + (a[1] and list(a[1]), a[2]) == tuple(b[:1]) + (b[1] and list(b[1]), b[2])


@needs_ext
@settings(max_examples=100, deadline=None)
@given(st.sets(st.integers(1, 80), max_size=40), st.sampled_from([3, 4, 5]))
def test_backends_same_progressions(elements, q):
    els = sorted(elements)
    assert list(_pykernel.aps_in_sorted(els, q)) == [tuple(t) for t in _kernel.aps_in_sorted(els, q)]


def test_pure_python_switch():
    env = dict(os.environ, RVDW_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "import rvdw; print(rvdw.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


@needs_ext
def test_default_backend_is_compiled():
    if os.environ.get("RVDW_PURE_PYTHON", "") not in ("", "0"):
        pytest.skip("fallback forced by environment")
    assert _core.BACKEND == "cython"

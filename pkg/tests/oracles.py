"""Brute-force oracles.  Deliberately naive and independent of the package code."""

from itertools import combinations, product


def brute_aps(n, q):
    """All q-APs of [n] as sorted tuples, by scanning every (first, diff)."""
    out = []
    for a in range(1, n + 1):
        for d in range(1, n + 1):
            if a + (q - 1) * d <= n:
                out.append(tuple(a + i * d for i in range(q)))
    return sorted(out, key=lambda t: (t[0], t[1] - t[0]))


def is_ap_set(s):
    t = sorted(s)
    if len(t) < 3:
        return False
    d = t[1] - t[0]
    return d > 0 and all(t[i + 1] - t[i] == d for i in range(len(t) - 1))


def aps_in(elements, q):
    return [c for c in combinations(sorted(elements), q) if is_ap_set(c)]


def two_colorable_exhaustive(elements, q1, q2):
    """Some red/blue colouring with no q1-AP all colour 0 and no q2-AP all colour 1."""
    els = sorted(elements)
    longs = aps_in(els, q1)
    shorts = longs if q1 == q2 else aps_in(els, q2)
    idx = {v: i for i, v in enumerate(els)}
    lm = [sum(1 << idx[v] for v in e) for e in longs]
    sm = [sum(1 << idx[v] for v in e) for e in shorts]
    full = (1 << len(els)) - 1
    for ones in range(1 << len(els)):
        zeros = full & ~ones
        if any(m & zeros == m for m in lm):
            continue
        if any(m & ones == m for m in sm):
            continue
        return True
    return False


def edges_colorable_exhaustive(vertices, long_edges, short_edges=None):
    """Exhaustive colourability of an abstract hypergraph.

    With ``short_edges`` None: symmetric (no edge monochromatic).
    Otherwise: long edges not all 0, short edges not all 1.
    """
    vs = sorted(vertices)
    for combo in product((0, 1), repeat=len(vs)):
        col = dict(zip(vs, combo))
        if short_edges is None:
            ok = all(len({col[v] for v in e}) > 1 for e in long_edges)
        else:
            ok = all(any(col[v] == 1 for v in e) for e in long_edges) and all(
                any(col[v] == 0 for v in e) for e in short_edges)
        if ok:
            return True
    return False


def simple_paths_rec(edges, max_len):
    """Edge sets of simple paths (symmetric definition), by plain recursion over sequences."""
    edges = [frozenset(e) for e in edges]
    found = set()

    def ok(seq):
        for i in range(len(seq)):
            for j in range(i + 1, len(seq)):
                want = 1 if j == i + 1 else 0
                if len(edges[seq[i]] & edges[seq[j]]) != want:
                    return False
        return True

    def rec(seq):
        found.add(frozenset(seq))
        if len(seq) == max_len:
            return
        for k in range(len(edges)):
            if k not in seq and ok(seq + [k]):
                rec(seq + [k])

    for k in range(len(edges)):
        rec([k])
    by_len = {}
    for s in found:
        by_len[len(s)] = by_len.get(len(s), 0) + 1
    return by_len


def common_cover_pairs_exhaustive(x, y, q, n):
    aps = [set(t) for t in brute_aps(n, q)]
    out = []
    for a in range(1, n + 1):
        for b in range(1, n + 1):
            if a == b:
                continue
            if any({x, a, b} <= s for s in aps) and any({y, a, b} <= s for s in aps):
                out.append((a, b))
    return out


def min_cover_union_exhaustive(n, q1=4, q2=3):
    """Smallest |E_1 u E_2 u E_3| over every cover of a q2-AP of [n] by q1-APs.

    Returns ``(minimum, number of covers examined)``.  Progressions are
    bitmasks (n <= 63) and each short edge's covers are scored at once with
    numpy broadcasting.
    """
    import numpy as np

    assert n <= 63 and q2 == 3
    longs = [frozenset(t) for t in brute_aps(n, q1)]
    masks = {L: sum(1 << (v - 1) for v in L) for L in longs}
    best, seen = None, 0
    for E in brute_aps(n, q2):
        es = set(E)
        per = [np.array([masks[L] for L in longs if L & es == {a}], dtype=np.uint64) for a in E]
        if any(len(p) == 0 for p in per):
            continue
        u = per[0][:, None, None] | per[1][None, :, None] | per[2][None, None, :]
        sizes = np.bitwise_count(u)
        seen += sizes.size
        m = int(sizes.min())
        best = m if best is None else min(best, m)
    return best, seen

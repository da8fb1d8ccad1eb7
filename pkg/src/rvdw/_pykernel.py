"""Pure-Python kernels; the reference semantics for ``_kernel.pyx``.

Both backends must return identical results, including node counts.
"""

SAT = 1
UNSAT = 0
BUDGET = 2


def aps_in_sorted(elements, q):
    """``(first, diff)`` of every ``q``-AP inside a sorted set, lexicographic."""
    members = set(elements)
    out = []
    m = len(elements)
    for i in range(m):
        a = elements[i]
        for j in range(i + 1, m):
            d = elements[j] - a
            ok = True
            x = a + 2 * d
            for _ in range(q - 2):
                if x not in members:
                    ok = False
                    break
                x += d
            if ok:
                out.append((a, d))
    return out


def solve_two_color(nv, ptr, verts, kind, symmetric, budget):
    """DPLL over clauses "not every vertex of ``c`` has colour ``kind[c]``".

    Vertices are ``0 .. nv-1``; clause ``c`` spans ``verts[ptr[c]:ptr[c+1]]``.
    Branching picks the unassigned vertex in the most unsatisfied clauses
    (lowest index on ties) and first tries the colour satisfying more of
    them.  With ``symmetric`` set the colour swap is a symmetry and the
    root decision is not flipped.  Every decision or flip costs one node.

    Returns ``(status, colours or None, nodes)``.
    """
    m = len(kind)
    occ = [[] for _ in range(nv)]
    for c in range(m):
        for k in range(ptr[c], ptr[c + 1]):
            occ[verts[k]].append(c)
    size = [ptr[c + 1] - ptr[c] for c in range(m)]
    nbad = [0] * m
    ngood = [0] * m
    active = [len(o) for o in occ]
    color = [-1] * nv
    trail = []
    queue = []

    def assign(v, col):
        color[v] = col
        trail.append(v)
        conflict = False
        for c in occ[v]:
            if kind[c] == col:
                nbad[c] += 1
                if ngood[c] == 0:
                    if nbad[c] == size[c]:
                        conflict = True
                    elif nbad[c] == size[c] - 1:
                        for k in range(ptr[c], ptr[c + 1]):
                            u = verts[k]
                            if color[u] < 0:
                                queue.append((u, 1 - col))
                                break
            else:
                ngood[c] += 1
                if ngood[c] == 1:
                    for k in range(ptr[c], ptr[c + 1]):
                        active[verts[k]] -= 1
        return conflict

    def unassign(v):
        col = color[v]
        for c in occ[v]:
            if kind[c] == col:
                nbad[c] -= 1
            else:
                ngood[c] -= 1
                if ngood[c] == 0:
                    for k in range(ptr[c], ptr[c + 1]):
                        active[verts[k]] += 1
        color[v] = -1

    def set_and_propagate(v, col):
        del queue[:]
        queue.append((v, col))
        head = 0
        while head < len(queue):
            u, cu = queue[head]
            head += 1
            if color[u] == cu:
                continue
            if color[u] >= 0 or assign(u, cu):
                return False
        return True

    def undo_to(pos):
        while len(trail) > pos:
            unassign(trail.pop())

    nodes = 0
    decisions = []  # [trail position, vertex, colour, flip available]
    while True:
        best = -1
        bestdeg = 0
        for v in range(nv):
            if color[v] < 0 and active[v] > bestdeg:
                best = v
                bestdeg = active[v]
        if best < 0:
            return SAT, [0 if c < 0 else c for c in color], nodes
        want1 = want0 = 0
        for c in occ[best]:
            if ngood[c] == 0:
                if kind[c] == 0:
                    want1 += 1
                else:
                    want0 += 1
        first = 1 if want1 > want0 else 0
        nodes += 1
        if nodes > budget:
            return BUDGET, None, nodes - 1
        flip = not (symmetric and not decisions and not trail)
        decisions.append([len(trail), best, first, flip])
        ok = set_and_propagate(best, first)
        while not ok:
            while decisions and not decisions[-1][3]:
                undo_to(decisions.pop()[0])
            if not decisions:
                return UNSAT, None, nodes
            d = decisions[-1]
            undo_to(d[0])
            d[2] = 1 - d[2]
            d[3] = False
            nodes += 1
            if nodes > budget:
                return BUDGET, None, nodes - 1
            ok = set_and_propagate(d[1], d[2])

# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels.  Semantics are defined by ``_pykernel``; keep in sync."""

from libc.stdlib cimport malloc, calloc, free

cdef enum:
    UNSAT = 0
    SAT = 1
    BUDGET = 2


def aps_in_sorted(elements, int q):
    cdef Py_ssize_t m = len(elements)
    if m == 0:
        return []
    cdef long top = elements[m - 1]
    cdef unsigned char *member = <unsigned char *> calloc(top + 1, 1)
    cdef long *els = <long *> malloc(m * sizeof(long))
    cdef Py_ssize_t i, j
    cdef long a, d, x
    cdef int t
    cdef bint ok
    out = []
    try:
        for i in range(m):
            els[i] = elements[i]
            member[els[i]] = 1
        for i in range(m):
            a = els[i]
            for j in range(i + 1, m):
                d = els[j] - a
                x = a + 2 * d
                ok = True
                for t in range(q - 2):
                    if x > top or not member[x]:
                        ok = False
                        break
                    x += d
                if ok:
                    out.append((a, d))
    finally:
        free(member)
        free(els)
    return out


cdef struct State:
    int nv
    int m
    int *ptr
    int *verts
    signed char *kind
    int *occ_ptr
    int *occ
    int *size
    int *nbad
    int *ngood
    int *active
    signed char *color
    int *trail
    int ntrail
    int *qv
    signed char *qc
    int qlen


cdef bint assign(State *s, int v, int col) nogil:
    cdef int k, c, u, w
    cdef bint conflict = False
    s.color[v] = col
    s.trail[s.ntrail] = v
    s.ntrail += 1
    for k in range(s.occ_ptr[v], s.occ_ptr[v + 1]):
        c = s.occ[k]
        if s.kind[c] == col:
            s.nbad[c] += 1
            if s.ngood[c] == 0:
                if s.nbad[c] == s.size[c]:
                    conflict = True
                elif s.nbad[c] == s.size[c] - 1:
                    for w in range(s.ptr[c], s.ptr[c + 1]):
                        u = s.verts[w]
                        if s.color[u] < 0:
                            s.qv[s.qlen] = u
                            s.qc[s.qlen] = 1 - col
                            s.qlen += 1
                            break
        else:
            s.ngood[c] += 1
            if s.ngood[c] == 1:
                for w in range(s.ptr[c], s.ptr[c + 1]):
                    s.active[s.verts[w]] -= 1
    return conflict


cdef void unassign(State *s, int v) nogil:
    cdef int k, c, w
    cdef int col = s.color[v]
    for k in range(s.occ_ptr[v], s.occ_ptr[v + 1]):
        c = s.occ[k]
        if s.kind[c] == col:
            s.nbad[c] -= 1
        else:
            s.ngood[c] -= 1
            if s.ngood[c] == 0:
                for w in range(s.ptr[c], s.ptr[c + 1]):
                    s.active[s.verts[w]] += 1
    s.color[v] = -1


cdef bint set_and_propagate(State *s, int v, int col) nogil:
    cdef int head = 0
    cdef int u, cu
    s.qlen = 1
    s.qv[0] = v
    s.qc[0] = col
    while head < s.qlen:
        u = s.qv[head]
        cu = s.qc[head]
        head += 1
        if s.color[u] == cu:
            continue
        if s.color[u] >= 0 or assign(s, u, cu):
            return False
    return True


cdef void undo_to(State *s, int pos) nogil:
    while s.ntrail > pos:
        s.ntrail -= 1
        unassign(s, s.trail[s.ntrail])


def solve_two_color(int nv, ptr_in, verts_in, kind_in, bint symmetric, long long budget):
    cdef int m = len(kind_in)
    cdef int total = len(verts_in)
    cdef State s
    cdef int c, k, v, best, bestdeg, want0, want1, first, nd, i
    cdef long long nodes = 0
    cdef bint ok
    cdef int status = UNSAT
    # decision stack
    cdef int *d_pos
    cdef int *d_var
    cdef signed char *d_col
    cdef signed char *d_flip

    s.nv = nv
    s.m = m
    s.ptr = <int *> malloc((m + 1) * sizeof(int))
    s.verts = <int *> malloc((total + 1) * sizeof(int))
    s.kind = <signed char *> malloc((m + 1) * sizeof(signed char))
    s.occ_ptr = <int *> calloc(nv + 1, sizeof(int))
    s.occ = <int *> malloc((total + 1) * sizeof(int))
    s.size = <int *> malloc((m + 1) * sizeof(int))
    s.nbad = <int *> calloc(m + 1, sizeof(int))
    s.ngood = <int *> calloc(m + 1, sizeof(int))
    s.active = <int *> calloc(nv + 1, sizeof(int))
    s.color = <signed char *> malloc((nv + 1) * sizeof(signed char))
    s.trail = <int *> malloc((nv + 1) * sizeof(int))
    # a vertex is queued at most once per clause it occurs in, plus the seed
    s.qv = <int *> malloc((total + 2) * sizeof(int))
    s.qc = <signed char *> malloc((total + 2) * sizeof(signed char))
    d_pos = <int *> malloc((nv + 1) * sizeof(int))
    d_var = <int *> malloc((nv + 1) * sizeof(int))
    d_col = <signed char *> malloc((nv + 1) * sizeof(signed char))
    d_flip = <signed char *> malloc((nv + 1) * sizeof(signed char))
    s.ntrail = 0
    s.qlen = 0
    colours = None
    try:
        for c in range(m + 1):
            s.ptr[c] = ptr_in[c]
        for k in range(total):
            s.verts[k] = verts_in[k]
        for c in range(m):
            s.kind[c] = kind_in[c]
            s.size[c] = s.ptr[c + 1] - s.ptr[c]
        for v in range(nv):
            s.color[v] = -1
        # occurrence lists in clause order (CSR)
        for k in range(total):
            s.occ_ptr[s.verts[k] + 1] += 1
        for v in range(nv):
            s.occ_ptr[v + 1] += s.occ_ptr[v]
            s.active[v] = s.occ_ptr[v + 1] - s.occ_ptr[v]
        fill = [0] * (nv + 1)
        for c in range(m):
            for k in range(s.ptr[c], s.ptr[c + 1]):
                v = s.verts[k]
                s.occ[s.occ_ptr[v] + fill[v]] = c
                fill[v] += 1

        nd = 0
        with nogil:
            while True:
                best = -1
                bestdeg = 0
                for v in range(nv):
                    if s.color[v] < 0 and s.active[v] > bestdeg:
                        best = v
                        bestdeg = s.active[v]
                if best < 0:
                    status = SAT
                    break
                want0 = 0
                want1 = 0
                for k in range(s.occ_ptr[best], s.occ_ptr[best + 1]):
                    c = s.occ[k]
                    if s.ngood[c] == 0:
                        if s.kind[c] == 0:
                            want1 += 1
                        else:
                            want0 += 1
                first = 1 if want1 > want0 else 0
                nodes += 1
                if nodes > budget:
                    nodes -= 1
                    status = BUDGET
                    break
                d_pos[nd] = s.ntrail
                d_var[nd] = best
                d_col[nd] = first
                d_flip[nd] = 0 if (symmetric and nd == 0 and s.ntrail == 0) else 1
                nd += 1
                ok = set_and_propagate(&s, best, first)
                while not ok:
                    while nd > 0 and not d_flip[nd - 1]:
                        nd -= 1
                        undo_to(&s, d_pos[nd])
                    if nd == 0:
                        break
                    i = nd - 1
                    undo_to(&s, d_pos[i])
                    d_col[i] = 1 - d_col[i]
                    d_flip[i] = 0
                    nodes += 1
                    if nodes > budget:
                        break
                    ok = set_and_propagate(&s, d_var[i], d_col[i])
                if not ok:
                    if nd == 0:
                        status = UNSAT
                    else:
                        nodes -= 1
                        status = BUDGET
                    break
        if status == SAT:
            colours = [0 if s.color[v] < 0 else s.color[v] for v in range(nv)]
    finally:
        free(s.ptr); free(s.verts); free(s.kind); free(s.occ_ptr); free(s.occ)
        free(s.size); free(s.nbad); free(s.ngood); free(s.active); free(s.color)
        free(s.trail); free(s.qv); free(s.qc)
        free(d_pos); free(d_var); free(d_col); free(d_flip)
    return status, colours, nodes

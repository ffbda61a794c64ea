# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled induced-copy search kernel (masks up to 64 bits).

Mirrors ``posetsat._search.find_copy`` exactly: backtracking with forward
checking, run without the GIL.
"""

from libc.stdint cimport uint64_t
from libc.stdlib cimport malloc, free

from posetsat._search import forced_plan

MAX_BITS = 64


cdef inline bint _fits(uint64_t b, uint64_t a, int code) noexcept nogil:
    if code == 1:
        return b != a and (b & a) == b
    if code == 2:
        return b != a and (b & a) == a
    return (b & ~a) != 0 and (a & ~b) != 0


cdef bint _search(const uint64_t* members, int m, int p, const int* rel,
                  const int* order, int* assigned, int* cursor, int* dom,
                  int* size, int* rank, int start) noexcept nogil:
    # dom[(L*p + j)*m ...] holds the members still allowed at depth j once
    # depths below L are fixed; size[L*p + j] is its length
    cdef int L, j, k, i, v, c, code, cnt, best, tmp, nr
    cdef int* src
    cdef int* dst
    cdef uint64_t b, x
    cdef bint ok
    for j in range(start, p):
        v = order[j]
        cnt = 0
        dst = dom + (start * p + j) * m
        for i in range(m):
            x = members[i]
            ok = True
            for k in range(start):
                if not _fits(x, members[assigned[order[k]]], rel[v * p + order[k]]):
                    ok = False
                    break
            if ok:
                dst[cnt] = i
                cnt += 1
        if cnt == 0:
            return False
        size[start * p + j] = cnt
    L = start
    cursor[L] = 0
    while L >= start:
        if L == p:
            return True
        v = order[L]
        src = dom + (L * p + L) * m
        # tightest domains first
        nr = 0
        for j in range(L + 1, p):
            rank[nr] = j
            nr += 1
        for i in range(1, nr):
            tmp = rank[i]
            k = i - 1
            while k >= 0 and size[L * p + rank[k]] > size[L * p + tmp]:
                rank[k + 1] = rank[k]
                k -= 1
            rank[k + 1] = tmp
        ok = False
        while cursor[L] < size[L * p + L]:
            c = src[cursor[L]]
            cursor[L] += 1
            b = members[c]
            ok = True
            for i in range(nr):
                j = rank[i]
                code = rel[order[j] * p + v]
                cnt = 0
                dst = dom + ((L + 1) * p + j) * m
                for k in range(size[L * p + j]):
                    tmp = dom[(L * p + j) * m + k]
                    if _fits(members[tmp], b, code):
                        dst[cnt] = tmp
                        cnt += 1
                if cnt == 0:
                    ok = False
                    break
                size[(L + 1) * p + j] = cnt
            if ok:
                assigned[v] = c
                break
        if ok:
            L += 1
            if L < p:
                cursor[L] = 0
        else:
            L -= 1
    return False


def find_copy(members, int p, rel, order, int forced=-1):
    """Member indices per poset element for the first induced copy, or None."""
    cdef int m = len(members)
    if p == 0:
        return []
    if p > m:
        return None

    cdef uint64_t* mem = <uint64_t*> malloc(m * sizeof(uint64_t))
    cdef int* crel = <int*> malloc(p * p * sizeof(int))
    cdef int* vis = <int*> malloc(p * sizeof(int))
    cdef int* assigned = <int*> malloc(p * sizeof(int))
    cdef int* cursor = <int*> malloc(p * sizeof(int))
    cdef int* rank = <int*> malloc(p * sizeof(int))
    cdef int* size = <int*> malloc((p + 1) * p * sizeof(int))
    cdef int* dom = <int*> malloc(<size_t> p * p * m * sizeof(int))
    cdef int i, v, u, k, n_up, n_down, above, below
    cdef uint64_t f, x
    cdef bint hit = False
    if not (mem and crel and vis and assigned and cursor and rank and size and dom):
        free(mem); free(crel); free(vis); free(assigned); free(cursor)
        free(rank); free(size); free(dom)
        raise MemoryError()
    try:
        for i in range(m):
            mem[i] = <uint64_t> members[i]
        for i in range(p * p):
            crel[i] = rel[i]
        if forced < 0:
            for i in range(p):
                vis[i] = order[i]
                assigned[i] = -1
                cursor[i] = 0
            with nogil:
                hit = _search(mem, m, p, crel, vis, assigned, cursor, dom, size, rank, 0)
            if hit:
                return [assigned[i] for i in range(p)]
            return None

        f = mem[forced]
        above = 0
        below = 0
        for i in range(m):
            x = mem[i]
            if x != f and (x & f) == f:
                above += 1
            if x != f and (x & f) == x:
                below += 1
        for v, plan_vis in forced_plan(p, tuple(rel), tuple(order)):
            n_up = 0
            n_down = 0
            for u in range(p):
                if crel[v * p + u] == 1:
                    n_up += 1
                elif crel[v * p + u] == 2:
                    n_down += 1
            if n_up > above or n_down > below:
                continue
            for i in range(p):
                vis[i] = plan_vis[i]
            for i in range(p):
                assigned[i] = -1
                cursor[i] = 0
            assigned[v] = forced
            with nogil:
                hit = _search(mem, m, p, crel, vis, assigned, cursor, dom, size, rank, 1)
            if hit:
                return [assigned[i] for i in range(p)]
        return None
    finally:
        free(mem); free(crel); free(vis); free(assigned); free(cursor)
        free(rank); free(size); free(dom)

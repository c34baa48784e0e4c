# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; see ``_pykernels`` for the reference semantics."""
import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t, uint8_t

cnp.import_array()

BIG = 1 << 62
cdef int64_t CBIG = 1 << 62


def attractor(pred_ptr, pred_idx, outdeg, own, base, blocked):
    cdef const int64_t[:] ptr = np.ascontiguousarray(pred_ptr, dtype=np.int64)
    cdef const int64_t[:] idx = np.ascontiguousarray(pred_idx, dtype=np.int64)
    cdef int64_t[:] count = np.array(outdeg, dtype=np.int64)
    cdef const uint8_t[:] own_v = np.ascontiguousarray(own, dtype=np.uint8)
    cdef const uint8_t[:] base_v = np.ascontiguousarray(base, dtype=np.uint8)
    cdef const uint8_t[:] blk = np.ascontiguousarray(blocked, dtype=np.uint8)
    cdef Py_ssize_t n = count.shape[0]
    rank_arr = np.full(n, -1, dtype=np.int64)
    cdef int64_t[:] rank = rank_arr
    queue_arr = np.empty(n, dtype=np.int64)
    cdef int64_t[:] queue = queue_arr
    cdef Py_ssize_t head = 0, tail = 0, level_end, s, p, k
    cdef int64_t updates = 0, j = 0
    for s in range(n):
        if base_v[s]:
            rank[s] = 0
            queue[tail] = s
            tail += 1
    updates = tail
    while head < tail:
        j += 1
        level_end = tail
        while head < level_end:
            s = queue[head]
            head += 1
            for k in range(ptr[s], ptr[s + 1]):
                p = idx[k]
                if rank[p] >= 0 or blk[p]:
                    continue
                count[p] -= 1
                updates += 1
                if own_v[p] or count[p] == 0:
                    rank[p] = j
                    updates += 1
                    queue[tail] = p
                    tail += 1
    return rank_arr, int(updates)


def tree_pass(child_ptr, child_idx, owner, leafw1, leafw2, edge_ok):
    cdef const int64_t[:] cp = np.ascontiguousarray(child_ptr, dtype=np.int64)
    cdef const int64_t[:] ci = np.ascontiguousarray(child_idx, dtype=np.int64)
    cdef const int64_t[:] own = np.ascontiguousarray(owner, dtype=np.int64)
    cdef uint8_t[:] ok = edge_ok
    cdef Py_ssize_t n = own.shape[0]
    cdef Py_ssize_t s, c, k, arg1
    cdef int64_t visits = 0, removed = 0, m, m1, m2, v, b, alt, ws, rootv
    cdef int p

    alive_arr = np.zeros(n, dtype=np.int64)
    cdef int64_t[:] alive = alive_arr
    alive[0] = 1
    for s in range(n):
        if alive[s]:
            visits += 1
            for k in range(cp[s], cp[s + 1]):
                c = ci[k]
                alive[c] = 1 if ok[c] else 0

    out = {"alive": alive_arr}
    cdef const int64_t[:] w
    cdef int64_t[:] best, ba, nu, mm
    for p in (1, 2):
        w = np.ascontiguousarray(leafw1 if p == 1 else leafw2, dtype=np.int64)
        best_arr = np.full(n, CBIG, dtype=np.int64)
        ba_arr = np.full(n, CBIG, dtype=np.int64)
        nu_arr = np.full(n, CBIG, dtype=np.int64)
        mm_arr = np.full(n, CBIG, dtype=np.int64)
        best = best_arr
        ba = ba_arr
        nu = nu_arr
        mm = mm_arr
        for s in range(n - 1, -1, -1):
            if not alive[s]:
                continue
            visits += 1
            if cp[s] == cp[s + 1]:
                best[s] = w[s]
            else:
                m = CBIG
                for k in range(cp[s], cp[s + 1]):
                    c = ci[k]
                    if alive[c] and best[c] < m:
                        m = best[c]
                best[s] = m
        for s in range(n):
            if not alive[s]:
                continue
            visits += 1
            b = ba[s]
            if own[s] == p:
                m1 = CBIG
                m2 = CBIG
                arg1 = -1
                for k in range(cp[s], cp[s + 1]):
                    c = ci[k]
                    if alive[c]:
                        v = best[c]
                        if v < m1:
                            m2 = m1
                            m1 = v
                            arg1 = c
                        elif v < m2:
                            m2 = v
                for k in range(cp[s], cp[s + 1]):
                    c = ci[k]
                    if alive[c]:
                        alt = m2 if c == arg1 else m1
                        ba[c] = alt if alt < b else b
            else:
                for k in range(cp[s], cp[s + 1]):
                    c = ci[k]
                    if alive[c]:
                        ba[c] = b
        for s in range(n - 1, -1, -1):
            if not alive[s]:
                continue
            visits += 1
            if cp[s] == cp[s + 1]:
                ws = w[s]
                if ws >= CBIG:
                    nu[s] = CBIG
                else:
                    nu[s] = ws - (ba[s] if ba[s] < ws else ws)
                mm[s] = nu[s]
            elif own[s] == p:
                m = CBIG
                for k in range(cp[s], cp[s + 1]):
                    c = ci[k]
                    if alive[c] and mm[c] < m:
                        m = mm[c]
                mm[s] = m
            else:
                m = -1
                for k in range(cp[s], cp[s + 1]):
                    c = ci[k]
                    if alive[c] and mm[c] > m:
                        m = mm[c]
                mm[s] = m
        out["best%d" % p] = best_arr
        out["ba%d" % p] = ba_arr
        out["nu%d" % p] = nu_arr
        out["minmax%d" % p] = mm_arr

    cdef int64_t[:] mm1 = out["minmax1"]
    cdef int64_t[:] mm2 = out["minmax2"]
    for s in range(n):
        if not alive[s] or cp[s] == cp[s + 1]:
            continue
        visits += 1
        mm = mm1 if own[s] == 1 else mm2
        rootv = mm[0]
        for k in range(cp[s], cp[s + 1]):
            c = ci[k]
            if alive[c] and mm[c] > rootv:
                ok[c] = 0
                removed += 1

    out["removed"] = int(removed)
    out["visits"] = int(visits)
    return out

# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twin of ``_elim_py``; same algorithm, same operation log.

Indices are C integers; matrix values stay Python ints (arbitrary precision).
"""

from cpython.dict cimport PyDict_GetItem, PyDict_Next
from cpython.ref cimport PyObject
from heapq import heapify, heappop, heappush


cdef void _row_axpy(list rows, list cols, Py_ssize_t k, Py_ssize_t r, object q):
    # row_k -= q * row_r, touching the dicts through the C API
    cdef dict rk = <dict>rows[k]
    cdef dict rr = <dict>rows[r]
    cdef PyObject* old
    cdef Py_ssize_t pos = 0
    cdef PyObject* pj
    cdef PyObject* pv
    cdef object j, nv
    cdef bint unit = q == 1
    while PyDict_Next(rr, &pos, &pj, &pv):
        j = <object>pj
        old = PyDict_GetItem(rk, j)
        if unit:
            nv = <object>pv
        else:
            nv = q * <object>pv
        if old is NULL:
            (<set>cols[j]).add(k)
            rk[j] = -nv
        else:
            nv = <object>old - nv
            if nv:
                rk[j] = nv
            else:
                del rk[j]
                (<set>cols[j]).discard(k)


def eliminate(list rows, Py_ssize_t ncols):
    cdef list cols = [set() for _ in range(ncols)]
    cdef Py_ssize_t i, r, k, c, pc, cur, n
    cdef dict rr
    cdef object p, q, b, nb
    cdef bint dirty
    cdef list ops = []
    cdef list pivots = []
    cdef list rowop, colop, others
    for i in range(len(rows)):
        for j in <dict>rows[i]:
            (<set>cols[j]).add(i)
    heap = [(len(<set>cols[c]), c) for c in range(ncols) if cols[c]]
    heapify(heap)
    while heap:
        n, c = heappop(heap)
        cur = len(<set>cols[c])
        if cur == 0:
            continue
        if cur != n:
            heappush(heap, (cur, c))
            continue
        pc = c
        while True:
            best = None
            for i in <set>cols[pc]:
                rr = <dict>rows[i]
                key = (abs(rr[pc]), len(rr), i)
                if best is None or key < best:
                    best = key
            r = best[2]
            rr = <dict>rows[r]
            p = rr[pc]
            rowop = []
            dirty = False
            others = [i for i in <set>cols[pc] if i != r]
            for k in others:
                q = (<dict>rows[k])[pc] // p
                if q:
                    _row_axpy(rows, cols, k, r, q)
                    rowop.append((k, q))
                if pc in <dict>rows[k]:
                    dirty = True
            if rowop:
                ops.append((0, r, rowop))
            if dirty:
                continue
            colop = []
            for j in [j for j in rr if j != pc]:
                b = rr[j]
                q = b // p
                if q:
                    nb = b - q * p
                    colop.append((j, q))
                    if nb:
                        rr[j] = nb
                    else:
                        del rr[j]
                        (<set>cols[j]).discard(r)
            if colop:
                ops.append((1, pc, colop))
            if len(rr) == 1:
                break
            best = None
            for j, b in rr.items():
                key = (abs(b), len(<set>cols[j]), j)
                if best is None or key < best:
                    best = key
            pc = best[2]
        if p < 0:
            ops.append((2, r))
            p = -p
        del rr[pc]
        (<set>cols[pc]).discard(r)
        pivots.append((r, pc, p))
        if cols[c]:
            heappush(heap, (len(<set>cols[c]), c))
    return ops, pivots


def replay_rows(list ops, list vec):
    cdef tuple op
    cdef object zr, q
    cdef Py_ssize_t k
    for op in ops:
        if op[0] == 0:
            zr = vec[op[1]]
            if zr:
                for k, q in <list>op[2]:
                    vec[k] = vec[k] - q * zr
        elif op[0] == 2:
            vec[op[1]] = -vec[op[1]]
    return vec


def replay_rows_inverse(list ops, list vec):
    cdef tuple op
    cdef object zr, q
    cdef Py_ssize_t k, t
    for t in range(len(ops) - 1, -1, -1):
        op = <tuple>ops[t]
        if op[0] == 0:
            zr = vec[op[1]]
            if zr:
                for k, q in <list>op[2]:
                    vec[k] = vec[k] + q * zr
        elif op[0] == 2:
            vec[op[1]] = -vec[op[1]]
    return vec


def replay_cols(list ops, list vec):
    cdef tuple op
    cdef object acc, q, y1, y2
    cdef Py_ssize_t j, c, c1, c2, t
    for t in range(len(ops) - 1, -1, -1):
        op = <tuple>ops[t]
        if op[0] == 1:
            c = op[1]
            acc = vec[c]
            for j, q in <list>op[2]:
                acc = acc - q * vec[j]
            vec[c] = acc
        elif op[0] == 3:
            c1 = op[1]
            c2 = op[2]
            y1 = vec[c1]
            y2 = vec[c2]
            vec[c1] = op[3] * y1 + op[4] * y2
            vec[c2] = op[5] * y1 + op[6] * y2
    return vec

"""Sparse integer elimination kernel (pure Python reference).

``_elim_c.pyx`` is a line-for-line typed copy; both must produce identical
operation logs for identical input.

Operation log entries::

    (0, r, [(k, q), ...])          row_k -= q * row_r
    (1, c, [(j, q), ...])          col_j -= q * col_c
    (2, r)                         row_r = -row_r
    (3, c1, c2, a, b, c, d)        (col_c1, col_c2) <- (col_c1, col_c2) @ [[a, b], [c, d]]
"""

from heapq import heapify, heappop, heappush


def _row_axpy(rows, cols, k, r, q):
    # row_k -= q * row_r
    rk = rows[k]
    for j, v in rows[r].items():
        nv = rk.get(j, 0) - q * v
        if nv:
            if j not in rk:
                cols[j].add(k)
            rk[j] = nv
        elif j in rk:
            del rk[j]
            cols[j].discard(k)


def eliminate(rows, ncols):
    """Diagonalize ``rows`` (a list of ``{col: value}`` dicts, consumed).

    Returns ``(ops, pivots)`` where ``pivots`` lists ``(r, c, d)`` with
    ``d > 0``: after replaying ``ops`` the matrix is zero except for these
    entries.  Pivot columns are taken shortest-first; within a column the
    entry of least absolute value wins, ties broken by shorter row.
    """
    cols = [set() for _ in range(ncols)]
    for i, r in enumerate(rows):
        for j in r:
            cols[j].add(i)
    ops = []
    pivots = []
    heap = [(len(s), c) for c, s in enumerate(cols) if s]
    heapify(heap)
    while heap:
        n, c = heappop(heap)
        cur = len(cols[c])
        if cur == 0:
            continue
        if cur != n:
            heappush(heap, (cur, c))
            continue
        pc = c
        while True:
            best = None
            for i in cols[pc]:
                key = (abs(rows[i][pc]), len(rows[i]), i)
                if best is None or key < best:
                    best = key
            r = best[2]
            p = rows[r][pc]
            rowop = []
            dirty = False
            for k in [i for i in cols[pc] if i != r]:
                q = rows[k][pc] // p
                if q:
                    _row_axpy(rows, cols, k, r, q)
                    rowop.append((k, q))
                if pc in rows[k]:
                    dirty = True
            if rowop:
                ops.append((0, r, rowop))
            if dirty:
                continue
            rr = rows[r]
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
                        cols[j].discard(r)
            if colop:
                ops.append((1, pc, colop))
            if len(rr) == 1:
                break
            best = None
            for j, b in rr.items():
                key = (abs(b), len(cols[j]), j)
                if best is None or key < best:
                    best = key
            pc = best[2]
        if p < 0:
            ops.append((2, r))
            p = -p
        del rows[r][pc]
        cols[pc].discard(r)
        pivots.append((r, pc, p))
        if cols[c]:
            heappush(heap, (len(cols[c]), c))
    return ops, pivots


def replay_rows(ops, vec):
    """Apply the row part of ``ops`` (in order) to ``vec`` in place."""
    for op in ops:
        kind = op[0]
        if kind == 0:
            zr = vec[op[1]]
            if zr:
                for k, q in op[2]:
                    vec[k] -= q * zr
        elif kind == 2:
            vec[op[1]] = -vec[op[1]]
    return vec


def replay_rows_inverse(ops, vec):
    """Apply the inverse of the row part of ``ops`` to ``vec`` in place."""
    for op in reversed(ops):
        kind = op[0]
        if kind == 0:
            zr = vec[op[1]]
            if zr:
                for k, q in op[2]:
                    vec[k] += q * zr
        elif kind == 2:
            vec[op[1]] = -vec[op[1]]
    return vec


def replay_cols(ops, vec):
    """Multiply ``vec`` by the column-transform product (ops replayed in reverse)."""
    for op in reversed(ops):
        kind = op[0]
        if kind == 1:
            c = op[1]
            acc = vec[c]
            for j, q in op[2]:
                acc -= q * vec[j]
            vec[c] = acc
        elif kind == 3:
            _, c1, c2, a, b, c, d = op
            y1, y2 = vec[c1], vec[c2]
            vec[c1] = a * y1 + b * y2
            vec[c2] = c * y1 + d * y2
    return vec

# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernels: same contracts as tracesim._kernels._py.

Arithmetic stays on Python ints (arbitrary precision is required by the
exact mode), so the win over the fallback comes from typed loop indices
and the removal of interpreter dispatch in the inner loops.
"""

cimport cython


def echelon_int(list rows):
    cdef Py_ssize_t nrows = len(rows)
    cdef Py_ssize_t ncols = len(<list>rows[0]) if nrows else 0
    cdef list pivot_cols = []
    cdef int sign = 1
    cdef object prev = 1
    cdef object piv, head
    cdef list row_i, row_r
    cdef Py_ssize_t r = 0, c, i, j, pr
    for c in range(ncols):
        if r >= nrows:
            break
        pr = -1
        for i in range(r, nrows):
            if (<list>rows[i])[c] != 0:
                pr = i
                break
        if pr < 0:
            continue
        if pr != r:
            rows[r], rows[pr] = rows[pr], rows[r]
            sign = -sign
        row_r = <list>rows[r]
        piv = row_r[c]
        for i in range(r + 1, nrows):
            row_i = <list>rows[i]
            head = row_i[c]
            for j in range(c, ncols):
                row_i[j] = (row_i[j] * piv - head * row_r[j]) // prev
        prev = piv
        pivot_cols.append(c)
        r += 1
    return rows, pivot_cols, sign


def det_int(list rows):
    cdef Py_ssize_t n = len(rows)
    cdef list r0, r1, r2, r3
    if n == 1:
        return (<list>rows[0])[0]
    if n == 2:
        r0 = <list>rows[0]; r1 = <list>rows[1]
        return r0[0] * r1[1] - r0[1] * r1[0]
    if n == 3:
        r0 = <list>rows[0]; r1 = <list>rows[1]; r2 = <list>rows[2]
        return (r0[0] * (r1[1] * r2[2] - r1[2] * r2[1])
                - r0[1] * (r1[0] * r2[2] - r1[2] * r2[0])
                + r0[2] * (r1[0] * r2[1] - r1[1] * r2[0]))
    if n == 4:
        r0 = <list>rows[0]; r1 = <list>rows[1]
        r2 = <list>rows[2]; r3 = <list>rows[3]
        m01 = r0[0] * r1[1] - r0[1] * r1[0]
        m02 = r0[0] * r1[2] - r0[2] * r1[0]
        m03 = r0[0] * r1[3] - r0[3] * r1[0]
        m12 = r0[1] * r1[2] - r0[2] * r1[1]
        m13 = r0[1] * r1[3] - r0[3] * r1[1]
        m23 = r0[2] * r1[3] - r0[3] * r1[2]
        n01 = r2[0] * r3[1] - r2[1] * r3[0]
        n02 = r2[0] * r3[2] - r2[2] * r3[0]
        n03 = r2[0] * r3[3] - r2[3] * r3[0]
        n12 = r2[1] * r3[2] - r2[2] * r3[1]
        n13 = r2[1] * r3[3] - r2[3] * r3[1]
        n23 = r2[2] * r3[3] - r2[3] * r3[2]
        return m01 * n23 - m02 * n13 + m03 * n12 + m12 * n03 - m13 * n02 + m23 * n01
    cdef list work = [list(row) for row in rows]
    work, pivots, sign = echelon_int(work)
    if len(<list>pivots) < n:
        return 0
    return sign * (<list>work[n - 1])[(<list>pivots)[len(<list>pivots) - 1]]


@cython.boundscheck(False)
def min_rotation(codes):
    cdef tuple t = tuple(codes)
    cdef Py_ssize_t k = len(t)
    cdef Py_ssize_t r, i
    cdef tuple best = t
    cdef tuple variant, rot
    cdef list rev = [0] * k
    for i in range(k):
        rev[i] = <object>t[k - 1 - i] ^ 1
    cdef tuple variants = (t, tuple(rev))
    for variant in variants:
        for r in range(k):
            rot = variant[r:] + variant[:r]
            if rot < best:
                best = rot
    return best

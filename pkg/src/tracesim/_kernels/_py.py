"""Pure-Python kernels.

Reference implementations of the three hot inner loops: fraction-free
integer row reduction, small integer determinants, and the cyclic-orbit
minimum used for word canonicalization.  The compiled module in
``_speedups.pyx`` mirrors these signatures exactly; which one is active is
decided at import time in ``tracesim._kernels``.
"""


def echelon_int(rows):
    """Fraction-free (Bareiss) row echelon of an integer matrix.

    ``rows`` is a list of equal-length lists of ints and is consumed (the
    lists are mutated in place).  Returns ``(rows, pivot_cols, sign)``.
    Every intermediate entry is a minor of the input, so all divisions are
    exact and the arithmetic never leaves the integers.  For a square
    full-rank input the last pivot equals ``sign * det``... inverted:
    ``det = sign * last pivot``.
    """
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    pivot_cols = []
    sign = 1
    prev = 1
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        pr = -1
        for i in range(r, nrows):
            if rows[i][c] != 0:
                pr = i
                break
        if pr < 0:
            continue
        if pr != r:
            rows[r], rows[pr] = rows[pr], rows[r]
            sign = -sign
        piv = rows[r][c]
        for i in range(r + 1, nrows):
            row_i = rows[i]
            head = row_i[c]
            row_r = rows[r]
            for j in range(c, ncols):
                row_i[j] = (row_i[j] * piv - head * row_r[j]) // prev
        prev = piv
        pivot_cols.append(c)
        r += 1
    return rows, pivot_cols, sign


def det_int(rows):
    """Determinant of a square integer matrix (closed forms up to 4x4)."""
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    if n == 3:
        (a, b, c), (d, e, f), (g, h, i) = rows
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
    if n == 4:
        r0, r1, r2, r3 = rows
        # Laplace expansion along the first two rows via 2x2 minors.
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
    work = [list(row) for row in rows]
    work, pivots, sign = echelon_int(work)
    if len(pivots) < n:
        return 0
    return sign * work[n - 1][pivots[-1]]


def min_rotation(codes):
    """Minimum over all cyclic rotations of ``codes`` and of its star-reversal.

    Letter codes are ``2*(index-1) + starred`` so tuple order is exactly the
    fixed total order (lower index first, unstarred before starred).  The
    star-reversal reverses the sequence and toggles every star bit.
    """
    k = len(codes)
    best = tuple(codes)
    for variant in (best, tuple(codes[i] ^ 1 for i in range(k - 1, -1, -1))):
        for r in range(k):
            rot = variant[r:] + variant[:r]
            if rot < best:
                best = rot
    return best

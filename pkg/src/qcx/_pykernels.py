"""Pure-Python hot kernels on Python ints (arbitrary precision, never overflow).

Mirrors the compiled ``_ckernels`` module function for function.  The
tableau here is a list of row lists; the compiled module works on int64
arrays and reports overflow instead of wrapping.
"""

from __future__ import annotations

from itertools import product

BACKEND = "python"


def pivot(M, out, r, c, D):
    """Fraction-free pivot of the integer tableau ``M`` on entry (r, c).

    Every row except ``r`` becomes ``(p*row - row[c]*M[r]) / D`` where
    ``p = M[r][c]``; the division is exact.  Rows are updated in place and
    ``out`` is ignored (kept for signature parity with the int64 kernel).
    Always succeeds.
    """
    pivot_row = M[r]
    p = pivot_row[c]
    nz = [(j, v) for j, v in enumerate(pivot_row) if v]
    for i, row in enumerate(M):
        if i == r:
            continue
        f = row[c]
        if f == 0:
            if p != D:
                M[i] = [v * p // D if v else 0 for v in row]
            continue
        new = [v * p for v in row] if p != 1 else list(row)
        for j, v in nz:
            new[j] -= f * v
        if D != 1:
            new = [v // D for v in new]
        M[i] = new
    return True


def entering(objrow, eligible):
    """Smallest eligible column with a negative reduced cost, or -1."""
    for j, ok in enumerate(eligible):
        if ok and objrow[j] < 0:
            return j
    return -1


def leaving(M, c, basis, rhs):
    """Minimum-ratio row for entering column ``c``; ties go to the smallest basic index."""
    best = -1
    best_num = best_den = 0
    for i in range(len(basis)):
        a = M[i][c]
        if a <= 0:
            continue
        b = M[i][rhs]
        if best < 0:
            best, best_num, best_den = i, b, a
            continue
        lhs, rhs_ = b * best_den, best_num * a
        if lhs < rhs_ or (lhs == rhs_ and basis[i] < basis[best]):
            best, best_num, best_den = i, b, a
    return best


def face_scan(G, d, j, full, max_report):
    """Scan every j-dimensional cell of the {0,1,2}^d grid for negative volume.

    ``G`` holds grid values at flat index sum(g_m * 3**m).  Free axes run
    over grid intervals starting at index 0 or 1 (only 1 when ``full`` is
    false, i.e. the lower slab has zero width); fixed axes take grid index
    0, 1 or 2 (1 or 2 when not ``full``).  Returns ``(count, minimum,
    reports)`` where reports holds up to ``max_report`` tuples
    ``(axes_mask, base_flat_index, volume)`` of negative cells.
    """
    strides = [3 ** m for m in range(d)]
    free_start = (0, 1) if full else (1,)
    fixed_idx = (0, 1, 2) if full else (1, 2)
    count = 0
    minimum = None
    reports = []
    # enumeration order matches the compiled kernel: masks ascending, then a
    # counter whose first free axis varies fastest
    for mask in range(1 << d):
        if bin(mask).count("1") != j:
            continue
        axes = [m for m in range(d) if mask >> m & 1]
        others = [m for m in range(d) if not mask >> m & 1]
        offsets = []
        for bits in range(1 << j):
            off = sum(strides[axes[t]] for t in range(j) if bits >> t & 1)
            sign = -1 if (j - bin(bits).count("1")) % 2 else 1
            offsets.append((off, sign))
        order = axes + others
        ranges = [free_start] * j + [fixed_idx] * (d - j)
        for digits in product(*reversed(ranges)):
            base = sum(strides[m] * g for m, g in zip(order, reversed(digits)))
            vol = 0
            for off, sign in offsets:
                vol += sign * G[base + off]
            if minimum is None or vol < minimum:
                minimum = vol
            if vol < 0:
                count += 1
                if len(reports) < max_report:
                    reports.append((mask, base, vol))
    return count, (0 if minimum is None else minimum), reports

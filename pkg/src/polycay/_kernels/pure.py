"""Pure-Python lattice point enumeration (reference kernel).

Enumerates integer points x with lo <= x <= hi (componentwise) and
A x <= b by fixing coordinates left to right.  At level j the bound for
x_j from inequality i uses the minimum the not-yet-fixed coordinates can
still contribute, so every branch taken is feasible for each inequality
in isolation; at the last level the bounds are exact, hence no final
re-check is needed.

Arbitrary-precision: plain Python ints throughout.
"""

from __future__ import annotations

import numpy as np

from ..errors import ResourceCapError


def _prepare(A, b, lo, hi):
    m = len(A)
    dim = len(lo)
    # minrest[j][i] = min over the box of sum_{l >= j} A[i][l] * x_l
    minrest = [[0] * m for _ in range(dim + 1)]
    for j in range(dim - 1, -1, -1):
        for i in range(m):
            a = A[i][j]
            contrib = min(a * lo[j], a * hi[j])
            minrest[j][i] = minrest[j + 1][i] + contrib
    return m, dim, minrest


def _floordiv(a: int, c: int) -> int:
    return a // c


def _ceildiv(a: int, c: int) -> int:
    return -((-a) // c)


def enum_points(A, b, lo, hi, budget: int):
    """All lattice points; returns an (N, dim) int64 numpy array."""
    m, dim, minrest = _prepare(A, b, lo, hi)
    for i in range(m):
        if all(A[i][j] == 0 for j in range(dim)) and b[i] < 0:
            return np.empty((0, dim), dtype=np.int64)
    out: list[tuple[int, ...]] = []
    x = [0] * dim
    psum = [[0] * m for _ in range(dim + 1)]

    def rec(j: int):
        if j == dim:
            if len(out) >= budget:
                raise ResourceCapError(f"lattice point budget {budget} exceeded")
            out.append(tuple(x))
            return
        lo_j, hi_j = lo[j], hi[j]
        base = psum[j]
        rest = minrest[j + 1]
        for i in range(m):
            a = A[i][j]
            if a == 0:
                continue
            cap = b[i] - base[i] - rest[i]
            if a > 0:
                hi_j = min(hi_j, _floordiv(cap, a))
            else:
                lo_j = max(lo_j, _ceildiv(cap, a))
        nxt = psum[j + 1]
        for v in range(lo_j, hi_j + 1):
            x[j] = v
            for i in range(m):
                nxt[i] = base[i] + A[i][j] * v
            rec(j + 1)

    if dim == 0:
        if all(bi >= 0 for bi in b):
            return np.zeros((1, 0), dtype=np.int64)
        return np.empty((0, 0), dtype=np.int64)
    rec(0)
    if not out:
        return np.empty((0, dim), dtype=np.int64)
    try:
        return np.array(out, dtype=np.int64)
    except OverflowError:
        return np.array(out, dtype=object)


def exists_point(A, b, lo, hi) -> bool:
    """True iff at least one lattice point satisfies the system."""
    m, dim, minrest = _prepare(A, b, lo, hi)
    if dim == 0:
        return all(bi >= 0 for bi in b)
    for i in range(m):
        if all(A[i][j] == 0 for j in range(dim)) and b[i] < 0:
            return False
    psum = [[0] * m for _ in range(dim + 1)]

    def rec(j: int) -> bool:
        if j == dim:
            return True
        lo_j, hi_j = lo[j], hi[j]
        base = psum[j]
        rest = minrest[j + 1]
        for i in range(m):
            a = A[i][j]
            if a == 0:
                continue
            cap = b[i] - base[i] - rest[i]
            if a > 0:
                hi_j = min(hi_j, _floordiv(cap, a))
            else:
                lo_j = max(lo_j, _ceildiv(cap, a))
        nxt = psum[j + 1]
        for v in range(lo_j, hi_j + 1):
            for i in range(m):
                nxt[i] = base[i] + A[i][j] * v
            if rec(j + 1):
                return True
        return False

    return rec(0)

"""Exact integer linear algebra and the double description method.

Everything here is arbitrary-precision integer arithmetic: rank and
determinant by fraction-free (Bareiss) elimination, lattice index by
Hermite triangularization, and vertex-to-facet conversion by the double
description method on the polar cone.
"""

from __future__ import annotations

from math import gcd

from .errors import NotFullDimensionalError


def vec_gcd(v) -> int:
    g = 0
    for x in v:
        g = gcd(g, x)
    return g


def primitive(v) -> tuple[int, ...]:
    """Divide by the gcd of the entries; direction is preserved."""
    g = vec_gcd(v)
    if g <= 1:
        return tuple(v)
    return tuple(x // g for x in v)


def dot(a, b) -> int:
    return sum(x * y for x, y in zip(a, b))


def mat_rank(rows) -> int:
    """Rank over Q by fraction-free Gaussian elimination."""
    m = [list(r) for r in rows]
    if not m:
        return 0
    ncols = len(m[0])
    rank = 0
    prev = 1
    for col in range(ncols):
        piv = None
        for r in range(rank, len(m)):
            if m[r][col]:
                piv = r
                break
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        pv = m[rank][col]
        for r in range(rank + 1, len(m)):
            f = m[r][col]
            row = m[r]
            top = m[rank]
            for c in range(col, ncols):
                row[c] = (row[c] * pv - f * top[c]) // prev
        prev = pv
        rank += 1
        if rank == len(m):
            break
    return rank


def mat_det(rows) -> int:
    """Determinant of a square integer matrix (Bareiss)."""
    m = [list(r) for r in rows]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            piv = next((r for r in range(k + 1, n) if m[r][k]), None)
            if piv is None:
                return 0
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        pv = m[k][k]
        for r in range(k + 1, n):
            f = m[r][k]
            row = m[r]
            top = m[k]
            for c in range(k, n):
                row[c] = (row[c] * pv - f * top[c]) // prev
        prev = pv
    return sign * m[n - 1][n - 1]


def lattice_index(rows, n: int) -> int:
    """Index in Z^n of the lattice generated by rows; 0 if rank-deficient."""
    m = [list(r) for r in rows]
    pivot = 0
    result = 1
    for col in range(n):
        # Euclidean reduction until at most one nonzero below the pivot row
        while True:
            nz = [r for r in range(pivot, len(m)) if m[r][col]]
            if len(nz) <= 1:
                break
            nz.sort(key=lambda r: abs(m[r][col]))
            r0 = nz[0]
            for r in nz[1:]:
                q = m[r][col] // m[r0][col]
                m[r] = [a - q * b for a, b in zip(m[r], m[r0])]
        nz = [r for r in range(pivot, len(m)) if m[r][col]]
        if not nz:
            return 0
        m[pivot], m[nz[0]] = m[nz[0]], m[pivot]
        result *= abs(m[pivot][col])
        pivot += 1
    return result


def _adjugate_column(b, i: int) -> list[int]:
    """Column i of adj(B) via cofactors; adj(B) = det(B) * B^{-1}.

    Entry j is adj[j][i] = (-1)^{i+j} * minor(B; row i, column j)."""
    n = len(b)
    col = []
    for j in range(n):
        minor = [
            [b[r][c] for c in range(n) if c != j] for r in range(n) if r != i
        ]
        col.append((-1) ** (i + j) * mat_det(minor))
    return col


def dual_description(points, dim: int):
    """Facets of conv(points) as (normal, rhs) pairs with <a, x> <= b.

    points: integer tuples affinely spanning R^dim.  Output normals are
    primitive, one pair per facet, sorted lexicographically.  Works on the
    polar cone: facets correspond to the extreme rays of
    {y in R^{dim+1} : <(p,1), y> <= 0 for all p}.
    """
    rows = [tuple(p) + (1,) for p in points]
    n = dim + 1
    if mat_rank(rows) != n:
        raise NotFullDimensionalError(
            f"points span an affine subspace of dimension < {dim}"
        )

    # simplicial start: n rows forming a nonsingular matrix
    base_idx: list[int] = []
    base_rows: list[tuple[int, ...]] = []
    for k, r in enumerate(rows):
        if len(base_idx) == n:
            break
        if mat_rank(base_rows + [r]) > len(base_idx):
            base_idx.append(k)
            base_rows.append(r)
    det = mat_det(base_rows)
    sgn = 1 if det > 0 else -1
    rays = []
    zeros = []
    for i in range(n):
        col = _adjugate_column(base_rows, i)
        ray = primitive([-sgn * x for x in col])
        mask = 0
        for k in base_idx:
            if dot(rows[k], ray) == 0:
                mask |= 1 << k
        rays.append(tuple(ray))
        zeros.append(mask)

    for k, row in enumerate(rows):
        if k in base_idx:
            continue
        vals = [dot(row, r) for r in rays]
        if all(v <= 0 for v in vals):
            for t in range(len(rays)):
                if vals[t] == 0:
                    zeros[t] |= 1 << k
            continue
        neg = [t for t, v in enumerate(vals) if v < 0]
        zer = [t for t, v in enumerate(vals) if v == 0]
        pos = [t for t, v in enumerate(vals) if v > 0]
        new_rays = []
        new_zeros = []
        for tp in pos:
            for tn in neg:
                common = zeros[tp] & zeros[tn]
                adjacent = True
                for to in range(len(rays)):
                    if to in (tp, tn):
                        continue
                    if common & ~zeros[to] == 0:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                lam, mu = vals[tp], -vals[tn]
                combo = [lam * a + mu * b for a, b in zip(rays[tn], rays[tp])]
                new_rays.append(primitive(combo))
                new_zeros.append(common | (1 << k))
        keep_rays = [rays[t] for t in neg + zer]
        keep_zeros = [zeros[t] for t in neg] + [zeros[t] | (1 << k) for t in zer]
        rays = keep_rays + new_rays
        zeros = keep_zeros + new_zeros

    facets = sorted((tuple(r[:dim]), -r[dim]) for r in rays)
    return facets

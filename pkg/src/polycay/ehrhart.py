"""Ehrhart delta-polynomials, codegree, volume, Gorenstein/reflexive tests.

delta is computed from dilate counts L(1), .., L(D+2) by the alternating
binomial transform; the two top coefficients must vanish, which is
exactly the statement that the counts fit a degree-D polynomial.  The
codegree is computed both from deg(delta) and by direct interior-point
search, and the two must agree.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .errors import DimensionMismatchError, InternalCheckError
from .geometry import LatticePolytope, cayley_sum, chain_polytope, order_polytope
from .posets import Poset, induced_subposet, linear_extension_count, ordinal_sum


@dataclass(frozen=True)
class DeltaPolynomial:
    """Coefficients delta_0..delta_s (trailing zeros trimmed) of a
    D-dimensional polytope's Ehrhart delta-polynomial."""

    coeffs: tuple[int, ...]
    dim: int

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def codegree(self) -> int:
        return self.dim + 1 - self.degree

    @property
    def is_palindromic(self) -> bool:
        return self.coeffs == self.coeffs[::-1]

    @property
    def volume(self) -> int:
        return sum(self.coeffs)

    def count(self, n: int) -> int:
        """L(n) predicted by the delta coefficients."""
        d = self.dim
        return sum(c * comb(n - i + d, d) for i, c in enumerate(self.coeffs))


def ehrhart_counts(poly: LatticePolytope, up_to: int) -> list[int]:
    """Dilate counts L(1), .., L(up_to).  Whenever enough values are
    requested, the counts (with L(0) = 1) must fit a polynomial of degree
    dim, which the (dim+1)-th finite differences certify."""
    counts = [poly.lattice_point_count(n) for n in range(1, up_to + 1)]
    if up_to >= poly.dim + 1:
        diffs = [1] + counts
        for _ in range(poly.dim + 1):
            diffs = [b - a for a, b in zip(diffs, diffs[1:])]
        if any(diffs):
            raise InternalCheckError("dilate counts do not fit a degree-D polynomial")
    return counts


def delta_polynomial(poly: LatticePolytope) -> DeltaPolynomial:
    if poly.delta_cache is not None:
        return poly.delta_cache
    d = poly.dim
    counts = [1] + ehrhart_counts(poly, d + 2)
    deltas = []
    for i in range(d + 3):
        deltas.append(
            sum(
                (-1) ** j * comb(d + 1, j) * counts[i - j]
                for j in range(min(i, d + 1) + 1)
            )
        )
    if deltas[d + 1] != 0 or deltas[d + 2] != 0:
        raise InternalCheckError("dilate counts do not fit a degree-D polynomial")
    coeffs = deltas[: d + 1]
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    if coeffs[0] != 1:
        raise InternalCheckError("delta_0 != 1")
    if any(c < 0 for c in coeffs):
        raise InternalCheckError("negative delta coefficient")
    if len(coeffs) > 1 and coeffs[1] != counts[1] - d - 1:
        raise InternalCheckError("delta_1 does not match the point count")
    result = DeltaPolynomial(tuple(coeffs), d)
    poly.delta_cache = result
    return result


def codegree(poly: LatticePolytope) -> int:
    """Smallest dilation factor with an interior lattice point; computed
    from deg(delta) and re-derived by direct search (must agree)."""
    by_delta = delta_polynomial(poly).codegree
    by_search = None
    for ell in range(1, poly.dim + 2):
        if poly.contains_interior_lattice_point(ell):
            by_search = ell
            break
    if by_search != by_delta:
        raise InternalCheckError(
            f"codegree mismatch: delta gives {by_delta}, search gives {by_search}"
        )
    return by_delta


def normalized_volume(poly: LatticePolytope) -> int:
    return delta_polynomial(poly).volume


def gorenstein_index(poly: LatticePolytope):
    """codegree when delta is palindromic, else None."""
    delta = delta_polynomial(poly)
    if delta.is_palindromic:
        return codegree(poly)
    return None


def is_reflexive(poly: LatticePolytope) -> bool:
    """Origin interior and every facet at lattice distance one.

    With primitive normals this is exactly: all right-hand sides equal 1
    (then each dual vertex a/b is integral)."""
    return all(b == 1 for _, b in poly.facets)


def volume_by_linear_extensions(p: Poset, q: Poset) -> int:
    """Sum over subsets W of [d] of e(P|_W stacked under Q|_complement).

    Combinatorial side of the volume identity for O_P * C_Q."""
    if p.d != q.d:
        raise DimensionMismatchError("posets must share a ground set size")
    d = p.d
    full = (1 << d) - 1
    total = 0
    for w in range(1 << d):
        delta_poset = ordinal_sum(
            induced_subposet(p, w), induced_subposet(q, full & ~w)
        )
        total += linear_extension_count(delta_poset)
    return total


def cayley_order_chain_volume(p: Poset, q: Poset) -> int:
    """Geometric side: normalized volume of O_P * C_Q."""
    return normalized_volume(cayley_sum([order_polytope(p), chain_polytope(q)]))

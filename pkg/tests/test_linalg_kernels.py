"""Exact linear algebra and enumeration kernels against independent oracles."""

import random
from itertools import combinations, product

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from polycay._kernels import BACKEND, pure
from polycay._linalg import (
    dual_description,
    lattice_index,
    mat_det,
    mat_rank,
    primitive,
    vec_gcd,
)
from polycay.errors import NotFullDimensionalError, ResourceCapError

try:
    from polycay._kernels import _speedups
except ImportError:
    _speedups = None


def brute_hull_facets(points, dim):
    """Facet set via hyperplanes through dim-subsets of the points."""
    out = set()
    for subset in combinations(points, dim):
        rows = [tuple(a - b for a, b in zip(p, subset[0])) for p in subset[1:]]
        if mat_rank(rows) != dim - 1:
            continue
        normal = []
        for j in range(dim):
            minor = [[r[c] for c in range(dim) if c != j] for r in rows]
            normal.append((-1) ** j * mat_det(minor))
        if all(x == 0 for x in normal):
            continue
        normal = primitive(normal)
        b = sum(a * x for a, x in zip(normal, subset[0]))
        values = [sum(a * x for a, x in zip(normal, p)) for p in points]
        if all(v <= b for v in values):
            out.add((tuple(normal), b))
        if all(v >= b for v in values):
            out.add((tuple(-a for a in normal), -b))
    return out


def box_scan(A, b, lo, hi):
    pts = set()
    for x in product(*[range(l, h + 1) for l, h in zip(lo, hi)]):
        if all(
            sum(a * v for a, v in zip(row, x)) <= bb for row, bb in zip(A, b)
        ):
            pts.add(x)
    return pts


class TestIntLinalg:
    def test_gcd_primitive(self):
        assert vec_gcd((4, -6, 8)) == 2
        assert primitive((4, -6, 8)) == (2, -3, 4)
        assert primitive((0, 0)) == (0, 0)

    def test_rank(self):
        assert mat_rank([(1, 0), (0, 1)]) == 2
        assert mat_rank([(1, 2), (2, 4)]) == 1
        assert mat_rank([(0, 0)]) == 0
        assert mat_rank([(2, 0, 1), (0, 3, 1), (2, 3, 2)]) == 2

    def test_det(self):
        assert mat_det([(1, 2), (3, 4)]) == -2
        assert mat_det([(2, 0), (0, 3)]) == 6
        assert mat_det([(0, 1), (1, 0)]) == -1

    @settings(max_examples=50, deadline=None)
    @given(
        st.lists(
            st.lists(st.integers(-6, 6), min_size=3, max_size=3),
            min_size=3,
            max_size=3,
        )
    )
    def test_det_against_numpy_on_small_ints(self, rows):
        expected = round(np.linalg.det(np.array(rows, dtype=float)))
        assert mat_det(rows) == expected

    def test_lattice_index_examples(self):
        assert lattice_index([(1, 0), (0, 1)], 2) == 1
        assert lattice_index([(2, 0), (0, 2)], 2) == 4
        assert lattice_index([(1, 0)], 2) == 0
        assert lattice_index([(2, 1), (1, 1), (0, 3)], 2) == 1

    @settings(max_examples=40, deadline=None)
    @given(
        st.lists(
            st.lists(st.integers(-5, 5), min_size=3, max_size=3),
            min_size=3,
            max_size=5,
        )
    )
    def test_lattice_index_matches_sympy_hnf(self, rows):
        import sympy
        from sympy.matrices.normalforms import hermite_normal_form

        m = sympy.Matrix(rows)
        if m.rank() < 3:
            assert lattice_index(rows, 3) == 0
            return
        h = hermite_normal_form(m.T)
        expected = abs(h.det())
        assert lattice_index(rows, 3) == expected


class TestDoubleDescription:
    def test_not_full_dimensional(self):
        with pytest.raises(NotFullDimensionalError):
            dual_description([(0, 0), (1, 1)], 2)

    def test_simplex(self):
        facets = set(dual_description([(0, 0), (1, 0), (0, 1)], 2))
        assert facets == {((-1, 0), 0), ((0, -1), 0), ((1, 1), 1)}

    def test_interior_points_are_ignored(self):
        facets = set(dual_description([(0, 0), (2, 0), (0, 2), (1, 1), (1, 0)], 2))
        assert facets == {((-1, 0), 0), ((0, -1), 0), ((1, 1), 2)}

    @settings(max_examples=40, deadline=None)
    @given(
        st.integers(2, 3).flatmap(
            lambda d: st.lists(
                st.tuples(*[st.integers(-3, 3)] * d), min_size=d + 1, max_size=9
            )
        )
    )
    def test_against_brute_hull(self, points):
        dim = len(points[0])
        rows = [p + (1,) for p in points]
        if mat_rank(rows) != dim + 1:
            with pytest.raises(NotFullDimensionalError):
                dual_description(points, dim)
            return
        facets = dual_description(points, dim)
        assert set(facets) == brute_hull_facets(points, dim)
        # every generator satisfies every inequality
        for a, b in facets:
            assert all(sum(x * y for x, y in zip(a, p)) <= b for p in points)


class TestKernels:
    def test_backend_available(self):
        assert BACKEND in ("pure", "speedups")

    def test_budget_enforced(self):
        A = [[1]]
        with pytest.raises(ResourceCapError):
            pure.enum_points(A, [100], [0], [100], budget=10)
        if _speedups is not None:
            with pytest.raises(ResourceCapError):
                _speedups.enum_points(
                    np.array(A, dtype=np.int64),
                    np.array([100], dtype=np.int64),
                    np.array([0], dtype=np.int64),
                    np.array([100], dtype=np.int64),
                    10,
                )

    def test_infeasible_constant_row(self):
        pts = pure.enum_points([[0, 0]], [-1], [0, 0], [1, 1], 100)
        assert pts.shape[0] == 0

    @settings(max_examples=60, deadline=None)
    @given(st.data())
    def test_backends_match_box_scan(self, data):
        dim = data.draw(st.integers(1, 4))
        m = data.draw(st.integers(1, 6))
        A = data.draw(
            st.lists(
                st.lists(st.integers(-3, 3), min_size=dim, max_size=dim),
                min_size=m,
                max_size=m,
            )
        )
        b = data.draw(st.lists(st.integers(-4, 10), min_size=m, max_size=m))
        lo = data.draw(st.lists(st.integers(-3, 1), min_size=dim, max_size=dim))
        hi = [l + data.draw(st.integers(0, 4)) for l in lo]
        expected = box_scan(A, b, lo, hi)
        got_pure = {tuple(r) for r in pure.enum_points(A, b, lo, hi, 10**6).tolist()}
        assert got_pure == expected
        assert pure.exists_point(A, b, lo, hi) == bool(expected)
        if _speedups is not None:
            args = (
                np.array(A, dtype=np.int64).reshape(m, dim),
                np.array(b, dtype=np.int64),
                np.array(lo, dtype=np.int64),
                np.array(hi, dtype=np.int64),
            )
            got_fast = {tuple(r) for r in _speedups.enum_points(*args, 10**6).tolist()}
            assert got_fast == expected
            assert _speedups.exists_point(*args) == bool(expected)

    def test_random_large_ints_pure_path(self):
        # beyond int64 ranges the geometry wrapper routes to the pure kernel
        big = 1 << 70
        pts = pure.enum_points([[1]], [big], [big - 2], [big + 5], 100)
        assert [p[0] for p in pts.tolist()] == [big - 2, big - 1, big]

    def test_speedup_measurable(self):
        if _speedups is None:
            pytest.skip("compiled kernels not built")
        import time

        A = [[1, 1, 1], [-1, 0, 0], [0, -1, 0], [0, 0, -1]]
        b = [60, 0, 0, 0]
        lo, hi = [0, 0, 0], [60, 60, 60]
        t0 = time.perf_counter()
        n_pure = pure.enum_points(A, b, lo, hi, 10**7).shape[0]
        t_pure = time.perf_counter() - t0
        args = (
            np.array(A, dtype=np.int64),
            np.array(b, dtype=np.int64),
            np.array(lo, dtype=np.int64),
            np.array(hi, dtype=np.int64),
        )
        t0 = time.perf_counter()
        n_fast = _speedups.enum_points(*args, 10**7).shape[0]
        t_fast = time.perf_counter() - t0
        assert n_pure == n_fast
        assert t_fast < t_pure

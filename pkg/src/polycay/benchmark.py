"""Benchmark the compiled enumeration kernel against the pure fallback.

    python -m polycay.benchmark

Times lattice point enumeration on representative dilates of corpus
polytopes through both backends and prints the speedup.
"""

from __future__ import annotations

import time

import numpy as np

from . import _kernels
from ._kernels import pure
from .geometry import cayley_sum, minkowski_sum, order_polytope, stable_set_polytope
from .graphs import complete_graph, cycle_graph, empty_graph
from .posets import antichain, chain, poset_from_relations


def _cases():
    z3 = poset_from_relations(4, [(0, 2), (1, 2), (1, 3)])
    yield "O(zigzag_4) * Q(C_4), dilate 6", cayley_sum(
        [order_polytope(z3), stable_set_polytope(cycle_graph(4))]
    ), 6
    yield "O(anti_4) * Q(empty_4), dilate 6", cayley_sum(
        [order_polytope(antichain(4)), stable_set_polytope(empty_graph(4))]
    ), 6
    yield "O(chain_5) + Q(K_5), dilate 7", minkowski_sum(
        order_polytope(chain(5)), stable_set_polytope(complete_graph(5))
    ), 7
    yield "O(anti_5) * Q(empty_5), dilate 4", cayley_sum(
        [order_polytope(antichain(5)), stable_set_polytope(empty_graph(5))]
    ), 4


def _time_backend(fn, A, b, lo, hi, repeat=3):
    best = None
    count = 0
    for _ in range(repeat):
        t0 = time.perf_counter()
        pts = fn(A, b, lo, hi, 10**9)
        dt = time.perf_counter() - t0
        count = pts.shape[0]
        best = dt if best is None else min(best, dt)
    return best, count


def main() -> None:
    print(f"active backend: {_kernels.BACKEND}")
    compiled = _kernels.impl if _kernels.BACKEND == "speedups" else None
    if compiled is None:
        print("compiled kernels unavailable; timing the pure backend only")
    header = f"{'case':45} {'points':>9} {'pure':>10} {'compiled':>10} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for name, poly, n in _cases():
        A = [list(a) for a, _ in poly.facets]
        b = [n * bb for _, bb in poly.facets]
        lo0, hi0 = poly._box
        lo = [n * v for v in lo0]
        hi = [n * v for v in hi0]
        t_pure, count = _time_backend(pure.enum_points, A, b, lo, hi)
        if compiled is not None:
            An = np.array(A, dtype=np.int64)
            bn = np.array(b, dtype=np.int64)
            lon = np.array(lo, dtype=np.int64)
            hin = np.array(hi, dtype=np.int64)
            t_fast, count2 = _time_backend(
                lambda *a: compiled.enum_points(*a), An, bn, lon, hin
            )
            assert count == count2, "backends disagree"
            print(
                f"{name:45} {count:9d} {t_pure * 1e3:9.1f}ms {t_fast * 1e3:9.1f}ms "
                f"{t_pure / t_fast:7.1f}x"
            )
        else:
            print(f"{name:45} {count:9d} {t_pure * 1e3:9.1f}ms {'-':>10} {'-':>8}")


if __name__ == "__main__":
    main()

"""Cross-cutting properties: backend determinism, sum implications,
lattice-spanning preconditions."""

import json
import os
import subprocess
import sys

from conftest import graph_corpus, poset_corpus
from polycay.geometry import (
    affine_lattice_index,
    cayley_sum,
    chain_polytope,
    is_idp,
    minkowski_sum,
    oda_holds,
    order_polytope,
    stable_set_polytope,
)

_SWEEP_SNIPPET = """
import json
from polycay.reports import run_sweep
import polycay
sweep = run_sweep("main-theorem", 2, "up_to_iso", use_cache=False)
print(polycay.kernel_backend)
print(json.dumps(sweep.to_json_dict(), sort_keys=True, separators=(",", ":")))
"""


def _run_sweep_in(backend_env):
    env = dict(os.environ)
    env.pop("POLYCAY_PURE", None)
    env.update(backend_env)
    env["PYTHONPATH"] = os.path.join(os.path.dirname(__file__), "..", "src")
    out = subprocess.run(
        [sys.executable, "-c", _SWEEP_SNIPPET],
        capture_output=True,
        text=True,
        env=env,
        check=True,
    ).stdout.splitlines()
    return out[0], out[1]


class TestBackendDeterminism:
    def test_sweep_json_identical_across_kernels(self):
        backend_a, doc_a = _run_sweep_in({})
        backend_b, doc_b = _run_sweep_in({"POLYCAY_PURE": "1"})
        assert backend_b == "pure"
        assert doc_a == doc_b
        assert json.loads(doc_a)["pass_count"] == 4


class TestSumImplications:
    def test_cayley_idp_implies_oda(self):
        # whenever the Cayley sum decomposes, the Minkowski sum must too
        for d in range(1, 4):
            for p in poset_corpus(d):
                for g in graph_corpus(d):
                    o, q = order_polytope(p), stable_set_polytope(g)
                    ok, _ = is_idp(cayley_sum([o, q]), 2)
                    if ok:
                        assert oda_holds(o, q)

    def test_chain_cayley_failure_means_oda_can_fail(self):
        # the d=5 witness pair: Cayley failure at k=1 is exactly an Oda failure
        from polycay.posets import poset_from_relations

        p = poset_from_relations(5, [(3, 1), (3, 2), (4, 1), (4, 2)])
        q = poset_from_relations(5, [(2, 1), (3, 0), (4, 0), (4, 1), (4, 3)])
        cp, cq = chain_polytope(p), chain_polytope(q)
        ok, witness = is_idp(cayley_sum([cp, cq]), 3)
        assert not ok and witness[0] == 1
        assert not oda_holds(cp, cq)
        mink_ok, _ = is_idp(minkowski_sum(cp, cq), 5)
        assert mink_ok


class TestLatticeSpanning:
    def test_polytope_families_span(self):
        # the spanning precondition behind the Cayley-to-Minkowski
        # squarefree transfer holds for every corpus polytope
        for d in range(1, 4):
            for p in poset_corpus(d):
                assert affine_lattice_index(order_polytope(p)) == 1
                assert affine_lattice_index(chain_polytope(p)) == 1
            for g in graph_corpus(d):
                assert affine_lattice_index(stable_set_polytope(g)) == 1

    def test_cayley_sum_spans(self):
        for p in poset_corpus(2):
            for g in graph_corpus(2):
                cay = cayley_sum([order_polytope(p), stable_set_polytope(g)])
                assert affine_lattice_index(cay) == 1

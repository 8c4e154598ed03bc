"""Per-instance theorem reports and corpus sweeps.

A report computes every check for one (poset, graph) instance and records
any violated theorem clause; violations are findings, never exceptions.
Sweeps iterate a corpus deterministically and aggregate findings; with
jobs > 1 the instances are computed in a process pool and re-sorted, so
the output is identical to a sequential run.

JSON output is canonical (sorted keys, 1-based instance descriptors) and
excludes timings unless asked, so identical inputs give identical bytes.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from multiprocessing import get_context

from . import toric as toric_mod
from .cache import cache_get, cache_key, cache_put
from .ehrhart import (
    codegree,
    delta_polynomial,
    gorenstein_index,
    is_reflexive,
    normalized_volume,
    volume_by_linear_extensions,
)
from .errors import DimensionMismatchError, ResourceCapError
from .geometry import (
    cayley_sum,
    chain_polytope,
    gamma,
    is_idp,
    minkowski_sum,
    oda_holds,
    order_polytope,
    stable_set_polytope,
)
from .graphs import Graph, enumerate_graphs, is_perfect
from .posets import (
    Poset,
    antichains,
    common_linear_extension_exists,
    dual,
    enumerate_posets,
)

REPORT_SCHEMA = "polycay.report.v1"
SWEEP_SCHEMA = "polycay.sweep.v1"

SWEEP_KINDS = (
    "main-theorem",
    "volume-identity",
    "order-cayley",
    "chain-cayley-idp-search",
    "stable-cayley",
)


def _rel_list(p: Poset):
    return [[i + 1, j + 1] for i, j in p.relations]


def _edge_list(g: Graph):
    return [[i + 1, j + 1] for i, j in g.edges]


@dataclass
class InstanceReport:
    d: int
    poset_relations: list
    graph_edges: list
    is_perfect: bool
    codegree_cayley: int | None = None
    codegree_minkowski: int | None = None
    gorenstein_cayley_index: int | None = None
    gorenstein_minkowski_index: int | None = None
    idp_cayley_upto: dict | None = None
    idp_minkowski_upto: dict | None = None
    oda: bool | None = None
    delta_cayley: list | None = None
    delta_gamma: list | None = None
    volume_cayley: int | None = None
    volume_gamma: int | None = None
    toric: dict | None = None
    violations: list = field(default_factory=list)
    resource_errors: list = field(default_factory=list)
    timings_ns: dict = field(default_factory=dict)
    incomplete: bool = False

    def to_json_dict(self, include_timings: bool = False) -> dict:
        doc = {
            "schema": REPORT_SCHEMA,
            "instance": {
                "d": self.d,
                "poset": self.poset_relations,
                "graph": self.graph_edges,
            },
            "results": {
                "is_perfect": self.is_perfect,
                "codegree_cayley": self.codegree_cayley,
                "codegree_minkowski": self.codegree_minkowski,
                "gorenstein_cayley_index": self.gorenstein_cayley_index,
                "gorenstein_minkowski_index": self.gorenstein_minkowski_index,
                "idp_cayley_upto": self.idp_cayley_upto,
                "idp_minkowski_upto": self.idp_minkowski_upto,
                "oda": self.oda,
                "delta_cayley": self.delta_cayley,
                "delta_gamma": self.delta_gamma,
                "volume_cayley": self.volume_cayley,
                "volume_gamma": self.volume_gamma,
                "toric": self.toric,
            },
            "violations": list(self.violations),
            "resource_errors": list(self.resource_errors),
            "incomplete": self.incomplete,
        }
        if include_timings:
            doc["timings_ns"] = dict(self.timings_ns)
        return doc


def _timed(timings: dict, name: str, fn):
    t0 = time.perf_counter_ns()
    value = fn()
    timings[name] = time.perf_counter_ns() - t0
    return value


def run_instance_report(
    p: Poset,
    g: Graph,
    *,
    kmax_cayley: int | None = None,
    kmax_minkowski: int | None = None,
    toric_degree: int | None = None,
    tie_break: str = "card_then_lex",
    full: bool = True,
    use_cache: bool = True,
) -> InstanceReport:
    """Every computable clause of the main theorem on one instance.

    full=False restricts to the codegree and Gorenstein checks (used by
    large sweeps); skipped fields stay None and raise no findings.
    """
    if p.d != g.d:
        raise DimensionMismatchError("poset and graph must share a ground set size")
    d = p.d
    kc = kmax_cayley if kmax_cayley is not None else d + 1
    km = kmax_minkowski if kmax_minkowski is not None else d
    opts = {
        "kmax_cayley": kc,
        "kmax_minkowski": km,
        "toric_degree": toric_degree,
        "tie_break": tie_break,
        "full": full,
    }
    key = None
    if use_cache:
        key = cache_key(
            {
                "schema": REPORT_SCHEMA,
                "poset": _rel_list(p),
                "graph": _edge_list(g),
                "d": d,
                "opts": opts,
            }
        )
        hit = cache_get(key)
        if hit is not None:
            return _report_from_json(hit)

    timings: dict[str, int] = {}
    report = InstanceReport(
        d=d,
        poset_relations=_rel_list(p),
        graph_edges=_edge_list(g),
        is_perfect=_timed(timings, "is_perfect", lambda: is_perfect(g)),
        timings_ns=timings,
    )
    perfect = report.is_perfect

    try:
        o_p = order_polytope(p)
        q_g = stable_set_polytope(g)
        cay = cayley_sum([o_p, q_g])
        mink = minkowski_sum(o_p, q_g)

        report.codegree_cayley = _timed(timings, "codegree_cayley", lambda: codegree(cay))
        report.codegree_minkowski = _timed(
            timings, "codegree_minkowski", lambda: codegree(mink)
        )
        report.delta_cayley = list(delta_polynomial(cay).coeffs)
        report.volume_cayley = normalized_volume(cay)
        report.gorenstein_cayley_index = _timed(
            timings, "gorenstein_cayley", lambda: gorenstein_index(cay)
        )
        report.gorenstein_minkowski_index = _timed(
            timings, "gorenstein_minkowski", lambda: gorenstein_index(mink)
        )

        if full:
            gam = gamma(o_p, q_g)
            report.delta_gamma = list(delta_polynomial(gam).coeffs)
            report.volume_gamma = normalized_volume(gam)
            idp_c = _timed(timings, "idp_cayley", lambda: is_idp(cay, kc))
            idp_m = _timed(timings, "idp_minkowski", lambda: is_idp(mink, km))
            report.idp_cayley_upto = _idp_doc(kc, idp_c)
            report.idp_minkowski_upto = _idp_doc(km, idp_m)
            report.oda = _timed(timings, "oda", lambda: oda_holds(o_p, q_g))
            if perfect and not is_reflexive(gam):
                report.violations.append("gamma(O_P, Q_G) is not reflexive")

        if toric_degree is not None:
            report.toric = _timed(
                timings,
                "toric",
                lambda: _toric_doc(p, g, toric_degree, tie_break),
            )
    except ResourceCapError as exc:
        report.incomplete = True
        report.resource_errors.append(str(exc))
        return report

    _assert_theorem(report, perfect, full)
    if use_cache and not report.incomplete:
        cache_put(key, report.to_json_dict(include_timings=False))
    return report


def _idp_doc(kmax: int, result) -> dict:
    ok, witness = result
    doc = {"k_max": kmax, "ok": ok, "witness": None}
    if witness is not None:
        doc["witness"] = {"k": witness[0], "point": list(witness[1])}
    return doc


def _toric_doc(p: Poset, g: Graph, degree: int, tie_break: str) -> dict:
    import warnings

    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        basis = toric_mod.claimed_basis(p, g, degree, tie_break)
    table = toric_mod.cayley_variable_table(p, g)
    order = toric_mod.make_order(table, tie_break)
    ok, failure = toric_mod.verify_basis(basis, order, degree)
    gens = toric_mod.truncated_initial_ideal(order, degree)
    squarefree, max_degree = toric_mod.squarefree_profile(gens)
    return {
        "verified_degree": degree if ok else None,
        "verified": ok,
        "first_failure": None
        if failure is None
        else {"degree": failure[0], "monomial": order.monomial_name(failure[1])},
        "squarefree": squarefree,
        "max_generator_degree": max_degree,
    }


def _assert_theorem(report: InstanceReport, perfect: bool, full: bool) -> None:
    v = report.violations
    if report.codegree_cayley != 2:
        v.append(f"codegree of the Cayley sum is {report.codegree_cayley}, expected 2")
    if report.codegree_minkowski != 1:
        v.append(
            f"codegree of the Minkowski sum is {report.codegree_minkowski}, expected 1"
        )
    gor_c = report.gorenstein_cayley_index
    gor_m = report.gorenstein_minkowski_index
    if (gor_c == 2) != perfect:
        v.append(f"Cayley Gorenstein index {gor_c} vs perfect={perfect}")
    if (gor_m == 1) != perfect:
        v.append(f"Minkowski Gorenstein index {gor_m} vs perfect={perfect}")
    if gor_c not in (None, 2) or gor_m not in (None, 1):
        v.append(f"unexpected Gorenstein indices ({gor_c}, {gor_m})")
    if full and perfect:
        if not report.idp_cayley_upto["ok"]:
            v.append("Cayley sum fails IDP for a perfect graph")
        if not report.idp_minkowski_upto["ok"]:
            v.append("Minkowski sum fails IDP for a perfect graph")
        if not report.oda:
            v.append("Oda equation fails for a perfect graph")
        if report.delta_cayley != report.delta_gamma:
            v.append("delta(Cayley) differs from delta(Gamma)")
        if report.volume_cayley != report.volume_gamma:
            v.append("Vol(Cayley) differs from Vol(Gamma)")
    if report.toric is not None and perfect:
        if not report.toric["verified"]:
            v.append("claimed Groebner basis failed verification")
        if not report.toric["squarefree"]:
            v.append("initial ideal is not squarefree for a perfect graph")


def _report_from_json(doc: dict) -> InstanceReport:
    res = doc["results"]
    return InstanceReport(
        resource_errors=list(doc.get("resource_errors", [])),
        d=doc["instance"]["d"],
        poset_relations=doc["instance"]["poset"],
        graph_edges=doc["instance"]["graph"],
        is_perfect=res["is_perfect"],
        codegree_cayley=res["codegree_cayley"],
        codegree_minkowski=res["codegree_minkowski"],
        gorenstein_cayley_index=res["gorenstein_cayley_index"],
        gorenstein_minkowski_index=res["gorenstein_minkowski_index"],
        idp_cayley_upto=res["idp_cayley_upto"],
        idp_minkowski_upto=res["idp_minkowski_upto"],
        oda=res["oda"],
        delta_cayley=res["delta_cayley"],
        delta_gamma=res["delta_gamma"],
        volume_cayley=res["volume_cayley"],
        volume_gamma=res["volume_gamma"],
        toric=res["toric"],
        violations=list(doc["violations"]),
        incomplete=doc.get("incomplete", False),
    )


@dataclass
class SweepReport:
    kind: str
    d: int
    mode: str
    instance_count: int
    pass_count: int
    failures: list
    witnesses: list
    wall_time_ns: int
    incomplete: bool = False

    def to_json_dict(self, include_timings: bool = False) -> dict:
        doc = {
            "schema": SWEEP_SCHEMA,
            "kind": self.kind,
            "d": self.d,
            "mode": self.mode,
            "instance_count": self.instance_count,
            "pass_count": self.pass_count,
            "failures": self.failures,
            "witnesses": self.witnesses,
            "incomplete": self.incomplete,
        }
        if include_timings:
            doc["wall_time_ns"] = self.wall_time_ns
        return doc


def _posets(d: int, mode: str):
    return list(enumerate_posets(d, mode))


def _graphs(d: int, mode: str):
    return list(enumerate_graphs(d, mode))


def _main_theorem_instances(d: int, mode: str):
    return [
        (p.lt, g.adj)
        for p in _posets(d, mode)
        for g in _graphs(d, mode)
    ]


def _pair_instances(d: int, mode: str, unordered: bool = False):
    ps = _posets(d, mode)
    out = []
    for i, p in enumerate(ps):
        for j, q in enumerate(ps):
            if unordered and j < i:
                continue
            out.append((p.lt, q.lt))
    return out


def _check_main(d: int, item, opts):
    p = Poset(d, item[0])
    g = Graph(d, item[1])
    report = run_instance_report(
        p,
        g,
        full=opts.get("full", True),
        toric_degree=opts.get("toric_degree"),
        use_cache=opts.get("use_cache", True),
    )
    return {
        "instance": {"poset": report.poset_relations, "graph": report.graph_edges},
        "violations": report.violations,
        "witness": None,
        "incomplete": report.incomplete,
    }


def _check_volume(d: int, item, opts):
    p, q = Poset(d, item[0]), Poset(d, item[1])
    lhs = volume_by_linear_extensions(p, q)
    rhs = normalized_volume(cayley_sum([order_polytope(p), chain_polytope(q)]))
    violations = []
    if lhs != rhs:
        violations.append(f"linear extension sum {lhs} != normalized volume {rhs}")
    return {
        "instance": {"poset": _rel_list(p), "poset2": _rel_list(q)},
        "violations": violations,
        "witness": None,
        "incomplete": False,
    }


def _check_order_cayley(d: int, item, opts):
    p, q = Poset(d, item[0]), Poset(d, item[1])
    cay = cayley_sum([order_polytope(p), order_polytope(q)])
    violations = []
    idp_ok, witness = is_idp(cay, d + 1)
    if not idp_ok:
        violations.append(f"O_P * O_Q not IDP at k={witness[0]}")
    gor = gorenstein_index(cay)
    common = common_linear_extension_exists(dual(p), q)
    if (gor == 2) != common:
        violations.append(
            f"Gorenstein index {gor} vs common linear extension {common}"
        )
    if item[0] == item[1]:
        is_anti = len(antichains(p)) == 1 << d
        if (gor is not None) != is_anti:
            violations.append(f"O_P * O_P Gorenstein index {gor} vs antichain {is_anti}")
    return {
        "instance": {"poset": _rel_list(p), "poset2": _rel_list(q)},
        "violations": violations,
        "witness": None,
        "incomplete": False,
    }


def _check_chain_search(d: int, item, opts):
    p, q = Poset(d, item[0]), Poset(d, item[1])
    kmax_fail = opts.get("kmax_fail", 3)
    c_p, c_q = chain_polytope(p), chain_polytope(q)
    cay_ok, cay_wit = is_idp(cayley_sum([c_p, c_q]), kmax_fail)
    witness = None
    if not cay_ok:
        mink_ok, mink_wit = is_idp(minkowski_sum(c_p, c_q), opts.get("kmax_minkowski", d))
        witness = {
            "poset": _rel_list(p),
            "poset2": _rel_list(q),
            "kind": "cayley-only" if mink_ok else "both",
            "cayley_failure": {"k": cay_wit[0], "point": list(cay_wit[1])},
            "minkowski_failure": None
            if mink_ok
            else {"k": mink_wit[0], "point": list(mink_wit[1])},
        }
    return {
        "instance": {"poset": _rel_list(p), "poset2": _rel_list(q)},
        "violations": [],
        "witness": witness,
        "incomplete": False,
    }


def _check_stable_cayley(d: int, item, opts):
    g = Graph(d, item[0])
    cay = cayley_sum([stable_set_polytope(g), stable_set_polytope(g)])
    violations = []
    gor = gorenstein_index(cay)
    if (gor is not None) != g.is_empty:
        violations.append(f"Q_G * Q_G Gorenstein index {gor} vs empty {g.is_empty}")
    return {
        "instance": {"graph": _edge_list(g)},
        "violations": violations,
        "witness": None,
        "incomplete": False,
    }


_CHECKERS = {
    "main-theorem": _check_main,
    "volume-identity": _check_volume,
    "order-cayley": _check_order_cayley,
    "chain-cayley-idp-search": _check_chain_search,
    "stable-cayley": _check_stable_cayley,
}


def _sweep_instances(kind: str, d: int, mode: str):
    if kind == "main-theorem":
        return _main_theorem_instances(d, mode)
    if kind == "volume-identity" or kind == "order-cayley":
        return _pair_instances(d, mode)
    if kind == "chain-cayley-idp-search":
        return _pair_instances(d, mode, unordered=True)
    if kind == "stable-cayley":
        return [
            (g.adj,) for g in _graphs(d, mode) if is_perfect(g)
        ]
    raise ValueError(f"unknown sweep kind {kind!r}")


def _worker(args):
    kind, d, item, opts = args
    return _CHECKERS[kind](d, item, opts)


def run_sweep(
    kind: str,
    d: int,
    mode: str = "up_to_iso",
    *,
    jobs: int = 1,
    stop_at_first_witness: bool = True,
    limit: int | None = None,
    **opts,
) -> SweepReport:
    """Iterate the corpus for one sweep kind and aggregate findings.

    Search kinds collect witnesses (stopping at the first unless told
    otherwise); theorem kinds collect violations as failures.
    """
    if kind not in _CHECKERS:
        raise ValueError(f"unknown sweep kind {kind!r}")
    t0 = time.perf_counter_ns()
    instances = _sweep_instances(kind, d, mode)
    if limit is not None:
        instances = instances[:limit]
    work = [(kind, d, item, opts) for item in instances]
    results = []
    is_search = kind == "chain-cayley-idp-search"
    want_kind = opts.get("witness_kind")
    if jobs > 1 and not (is_search and stop_at_first_witness):
        with get_context("fork").Pool(jobs) as pool:
            results = pool.map(_worker, work, chunksize=4)
    else:
        for w in work:
            res = _worker(w)
            results.append(res)
            if is_search and stop_at_first_witness and res["witness"] is not None:
                if want_kind is None or res["witness"]["kind"] == want_kind:
                    break
    failures = [
        {"instance": r["instance"], "violations": r["violations"]}
        for r in results
        if r["violations"]
    ]
    witnesses = [r["witness"] for r in results if r["witness"] is not None]
    if want_kind is not None:
        witnesses = [w for w in witnesses if w["kind"] == want_kind]
    return SweepReport(
        kind=kind,
        d=d,
        mode=mode,
        instance_count=len(results),
        pass_count=len(results) - len(failures),
        failures=failures,
        witnesses=witnesses,
        wall_time_ns=time.perf_counter_ns() - t0,
        incomplete=any(r["incomplete"] for r in results),
    )

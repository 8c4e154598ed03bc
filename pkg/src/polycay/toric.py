"""Degree-truncated toric ideal computations for the Cayley instance.

Variables map to lattice points (plus an implicit homogenizing degree),
so the fiber of a degree-k monomial is keyed by the sum of its bound
points.  Standard monomials of the initial ideal under a reverse
lexicographic order are exactly the fiber minima; the truncated reduced
Groebner basis pairs each minimal non-standard generator with its fiber
minimum.

Monomials are sorted tuples of variable ranks (rank 0 = smallest).  For
equal degrees, plain tuple comparison of these rank tuples coincides
with graded reverse lexicographic comparison: the first differing sorted
entry identifies the smallest variable with differing exponent, and the
tuple with the larger entry there has the smaller exponent, hence is the
grevlex-larger monomial.
"""

from __future__ import annotations

import os
import warnings
from dataclasses import dataclass
from itertools import combinations, combinations_with_replacement
from math import comb

from .errors import (
    DimensionMismatchError,
    InvariantError,
    KernelMembershipError,
    OrderConstructionError,
    ResourceCapError,
)
from .geometry import LatticePolytope, is_idp
from .graphs import Graph, is_perfect, stable_sets
from .posets import Poset, ideals, indicator, iter_bits

TIE_BREAKS = ("card_then_lex", "card_then_revlex")


def _monomial_budget() -> int:
    return int(os.environ.get("POLYCAY_MAX_MONOMIALS", 20_000_000))


@dataclass(frozen=True)
class Variable:
    name: str
    kind: str  # "x" | "y" | "z" | "u"
    mask: int  # subset for x/y variables, -1 otherwise
    point: tuple[int, ...]


class VariableTable:
    """Ordered variables, each bound to a lattice point (injectively)."""

    def __init__(self, variables):
        self.variables = tuple(variables)
        points = [v.point for v in self.variables]
        if len(set(points)) != len(points):
            raise InvariantError("variable binding is not injective")
        self.index = {v.name: i for i, v in enumerate(self.variables)}
        self.dim = len(points[0]) if points else 0

    def __len__(self):
        return len(self.variables)


def _subset_name(prefix: str, mask: int) -> str:
    if mask == 0:
        return f"{prefix}_0"  # the empty set
    return f"{prefix}_{{{','.join(str(i + 1) for i in iter_bits(mask))}}}"


class CayleyVariableTable(VariableTable):
    """x_I -> (rho(I), 1), y_S -> (rho(S), 0) for S nonempty, z -> 0.

    x for the poset ideals (x_0 the empty ideal is a genuine variable,
    distinct from z), y for the nonempty stable sets of the graph."""

    def __init__(self, p: Poset, g: Graph):
        if p.d != g.d:
            raise DimensionMismatchError("poset and graph sizes differ")
        d = p.d
        self.poset = p
        self.graph = g
        self.ideal_masks = ideals(p)
        self.stable_masks = stable_sets(g)
        variables = []
        for m in self.ideal_masks:
            variables.append(Variable(_subset_name("x", m), "x", m, indicator(m, d) + (1,)))
        for m in self.stable_masks:
            if m:
                variables.append(Variable(_subset_name("y", m), "y", m, indicator(m, d) + (0,)))
        variables.append(Variable("z", "z", -1, (0,) * (d + 1)))
        super().__init__(variables)

    def x_index(self, mask: int) -> int:
        return self.index[_subset_name("x", mask)]

    def y_index(self, mask: int) -> int:
        """y_S, reading y_0 as z."""
        if mask == 0:
            return self.index["z"]
        return self.index[_subset_name("y", mask)]


def cayley_variable_table(p: Poset, g: Graph) -> CayleyVariableTable:
    return CayleyVariableTable(p, g)


class StableVariableTable(VariableTable):
    """y_S -> rho(S) for nonempty stable S, z -> 0 (the Q_G instance)."""

    def __init__(self, g: Graph):
        self.graph = g
        self.stable_masks = stable_sets(g)
        variables = []
        for m in self.stable_masks:
            if m:
                variables.append(Variable(_subset_name("y", m), "y", m, indicator(m, g.d)))
        variables.append(Variable("z", "z", -1, (0,) * g.d))
        super().__init__(variables)


def polytope_variable_table(poly: LatticePolytope, prefix: str = "u") -> VariableTable:
    """One variable per lattice point, for generic Hilbert comparisons."""
    pts = sorted(map(tuple, poly.lattice_point_array(1).tolist()))
    return VariableTable(
        [Variable(f"{prefix}{i}", "u", -1, p) for i, p in enumerate(pts)]
    )


class MonomialOrder:
    """Graded reverse lexicographic order from a total variable ranking.

    ranking[r] is the table index of the rank-r variable (rank 0 is the
    smallest).  Rankings must place z below the y block below the x block,
    larger ideals below smaller ideals, and larger stable sets above
    smaller ones."""

    def __init__(self, table: VariableTable, ranking, tie_break: str):
        self.table = table
        self.ranking = tuple(ranking)
        self.tie_break = tie_break
        if sorted(self.ranking) != list(range(len(table))):
            raise OrderConstructionError("ranking is not a total order on the variables")
        self.rank_of = [0] * len(table)
        for r, idx in enumerate(self.ranking):
            self.rank_of[idx] = r
        self.point_by_rank = [table.variables[idx].point for idx in self.ranking]
        self.name_by_rank = [table.variables[idx].name for idx in self.ranking]
        self._validate()

    def _validate(self):
        kind_level = {"z": 0, "y": 1, "x": 2, "u": 1}
        vs = self.table.variables
        for a, b in combinations(range(len(vs)), 2):
            va, vb = vs[a], vs[b]
            ra, rb = self.rank_of[a], self.rank_of[b]
            la, lb = kind_level[va.kind], kind_level[vb.kind]
            if la != lb and (la < lb) != (ra < rb):
                raise OrderConstructionError("block order violated")
            if va.kind == vb.kind == "x":
                if va.mask != vb.mask and va.mask & vb.mask == vb.mask:
                    # vb's ideal is contained in va's: x_{va} must be smaller
                    if not ra < rb:
                        raise OrderConstructionError("ideal superset rule violated")
            if va.kind == vb.kind == "y":
                if va.mask != vb.mask and va.mask & vb.mask == vb.mask:
                    # vb's stable set is contained in va's: y_{vb} must be smaller
                    if not rb < ra:
                        raise OrderConstructionError("stable subset rule violated")

    def monomials(self, degree: int):
        """All degree-k monomials as sorted rank tuples."""
        return combinations_with_replacement(range(len(self.table)), degree)

    def monomial_count(self, degree: int) -> int:
        return comb(len(self.table) + degree - 1, degree)

    def fiber_key(self, mono) -> tuple[int, ...]:
        pts = self.point_by_rank
        dim = self.table.dim
        total = [0] * dim
        for r in mono:
            p = pts[r]
            for k in range(dim):
                total[k] += p[k]
        return tuple(total)

    def monomial_name(self, mono) -> str:
        if not mono:
            return "1"
        parts = []
        i = 0
        while i < len(mono):
            j = i
            while j < len(mono) and mono[j] == mono[i]:
                j += 1
            name = self.name_by_rank[mono[i]]
            parts.append(name if j - i == 1 else f"{name}^{j - i}")
            i = j
        return "*".join(parts)


def make_order(table: VariableTable, tie_break: str = "card_then_lex") -> MonomialOrder:
    """Rank variables: z, then the y block (smaller stable sets first),
    then the x block (larger ideals first); u variables sit like y.
    Within a cardinality class the tie-break orders by indicator vector,
    ascending for card_then_lex and descending for card_then_revlex."""
    if tie_break not in TIE_BREAKS:
        raise OrderConstructionError(f"unknown tie-break {tie_break!r}")
    sign = 1 if tie_break == "card_then_lex" else -1

    def key(item):
        idx, v = item
        if v.kind == "z":
            return (0,)
        ind = tuple(sign * c for c in v.point)
        if v.kind == "u":
            return (1, sum(v.point), ind)
        card = v.mask.bit_count()
        if v.kind == "y":
            return (1, card, ind)
        return (2, -card, ind)

    ranking = [idx for idx, _ in sorted(enumerate(table.variables), key=key)]
    return MonomialOrder(table, ranking, tie_break)


def _check_budget(order: MonomialOrder, max_degree: int):
    budget = _monomial_budget()
    total = sum(order.monomial_count(k) for k in range(1, max_degree + 1))
    if total > budget:
        raise ResourceCapError(
            f"{total} monomials up to degree {max_degree} exceed the budget {budget}"
        )


def _fiber_minima(order: MonomialOrder, degree: int):
    """(set of non-minimum monomials, number of fibers, set of minima)."""
    fibers: dict[tuple[int, ...], list] = {}
    for mono in order.monomials(degree):
        key = order.fiber_key(mono)
        cur = fibers.get(key)
        if cur is None:
            fibers[key] = [mono, None]
        else:
            if mono < cur[0]:
                if cur[1] is None:
                    cur[1] = {cur[0]}
                else:
                    cur[1].add(cur[0])
                cur[0] = mono
            else:
                if cur[1] is None:
                    cur[1] = {mono}
                else:
                    cur[1].add(mono)
    nonmin = set()
    minima = set()
    for mono_min, rest in fibers.values():
        minima.add(mono_min)
        if rest:
            nonmin |= rest
    return nonmin, len(fibers), minima


def truncated_initial_ideal(order: MonomialOrder, max_degree: int):
    """Minimal generators (degree <= max_degree) of the monomial ideal of
    non-fiber-minimum monomials."""
    _check_budget(order, max_degree)
    nonstandard_by_degree = []
    for k in range(1, max_degree + 1):
        nonmin, _, _ = _fiber_minima(order, k)
        nonstandard_by_degree.append(nonmin)
    gens = []
    for k in range(1, max_degree + 1):
        nonmin = nonstandard_by_degree[k - 1]
        for mono in sorted(nonmin):
            minimal = True
            for drop in set(mono):
                child = list(mono)
                child.remove(drop)
                if tuple(child) in nonstandard_by_degree[k - 2]:
                    minimal = False
                    break
            if minimal:
                gens.append(mono)
    return gens


@dataclass(frozen=True)
class Binomial:
    """lead - trail, homogeneous with equal fiber keys, lead > trail."""

    lead: tuple[int, ...]
    trail: tuple[int, ...]

    def pretty(self, order: MonomialOrder) -> str:
        return f"{order.monomial_name(self.lead)} - {order.monomial_name(self.trail)}"


def _binomial(order: MonomialOrder, m1, m2) -> Binomial:
    m1, m2 = tuple(sorted(m1)), tuple(sorted(m2))
    if order.fiber_key(m1) != order.fiber_key(m2):
        raise KernelMembershipError(
            f"not in the kernel: {order.monomial_name(m1)} vs {order.monomial_name(m2)}"
        )
    if m1 == m2:
        raise KernelMembershipError("degenerate binomial")
    lead, trail = (m1, m2) if m1 > m2 else (m2, m1)
    return Binomial(lead, trail)


def reduced_groebner_truncated(order: MonomialOrder, max_degree: int):
    """Degree-truncated reduced basis: generator minus its fiber minimum."""
    _check_budget(order, max_degree)
    out = []
    minima_by_key: dict[int, dict] = {}
    for k in range(1, max_degree + 1):
        fibers: dict[tuple[int, ...], tuple] = {}
        for mono in order.monomials(k):
            key = order.fiber_key(mono)
            cur = fibers.get(key)
            if cur is None or mono < cur:
                fibers[key] = mono
        minima_by_key[k] = fibers
    for gen in truncated_initial_ideal(order, max_degree):
        k = len(gen)
        trail = minima_by_key[k][order.fiber_key(gen)]
        out.append(Binomial(gen, trail))
    return out


def claimed_basis(p: Poset, g: Graph, max_degree: int, tie_break: str = "card_then_lex"):
    """The three-block basis for the Cayley instance O_P * Q_G:

    - ideal exchange: x_I x_J - x_{I&J} x_{I|J} over incomparable ideal pairs;
    - mixed exchange: x_I y_S - x_{I+s} y_{S-s} for s in S-I with I+s an ideal
      (y of the empty set read as z);
    - the reduced basis of the stable-set instance on the y/z sub-table.

    Every element is validated to lie in the kernel.  Warns when g is not
    perfect (the squarefree claim then has no backing).
    """
    if not is_perfect(g):
        warnings.warn("graph is not perfect; the claimed basis is unsupported", stacklevel=2)
    table = cayley_variable_table(p, g)
    order = make_order(table, tie_break)
    rank = order.rank_of
    basis = set()
    masks = table.ideal_masks
    for i, j in combinations(range(len(masks)), 2):
        a, b = masks[i], masks[j]
        if a & b == a or a & b == b:
            continue
        lead_pair = (rank[table.x_index(a)], rank[table.x_index(b)])
        trail_pair = (rank[table.x_index(a & b)], rank[table.x_index(a | b)])
        basis.add(_binomial(order, lead_pair, trail_pair))
    ideal_set = set(masks)
    for im in masks:
        for sm in table.stable_masks:
            if sm == 0:
                continue
            for s in iter_bits(sm & ~im):
                enlarged = im | (1 << s)
                if enlarged not in ideal_set:
                    continue
                m1 = (rank[table.x_index(im)], rank[table.y_index(sm)])
                m2 = (rank[table.x_index(enlarged)], rank[table.y_index(sm & ~(1 << s))])
                basis.add(_binomial(order, m1, m2))
    sub_table = StableVariableTable(g)
    sub_order = make_order(sub_table, tie_break)

    def remap(mono):
        return tuple(
            sorted(rank[table.index[sub_order.name_by_rank[r]]] for r in mono)
        )

    for bino in reduced_groebner_truncated(sub_order, max_degree):
        basis.add(_binomial(order, remap(bino.lead), remap(bino.trail)))
    return frozenset(b for b in basis if len(b.lead) <= max_degree)


def _divisible_monomials(order: MonomialOrder, leads, degree: int):
    """All degree-k multiples of the given lead monomials."""
    n = len(order.table)
    out = set()
    for lead in leads:
        cdeg = degree - len(lead)
        if cdeg < 0:
            continue
        if cdeg == 0:
            out.add(lead)
            continue
        for extra in combinations_with_replacement(range(n), cdeg):
            out.add(tuple(sorted(lead + extra)))
    return out


def verify_basis(claimed, order: MonomialOrder, max_degree: int):
    """Degree-wise check that the claimed leads generate the true initial
    ideal: multiples of claimed leads == non-fiber-minimum monomials for
    every degree <= max_degree.  Returns (True, None) or
    (False, (degree, monomial)) with the lex-min offending monomial."""
    _check_budget(order, max_degree)
    leads = sorted({b.lead for b in claimed})
    for k in range(1, max_degree + 1):
        nonmin, _, _ = _fiber_minima(order, k)
        from_leads = _divisible_monomials(order, leads, k)
        if from_leads != nonmin:
            offending = min(from_leads.symmetric_difference(nonmin))
            return False, (k, offending)
    return True, None


def squarefree_profile(monomials):
    """(all generators squarefree, max generator degree)."""
    monomials = list(monomials)
    all_squarefree = all(len(set(m)) == len(m) for m in monomials)
    max_degree = max((len(m) for m in monomials), default=0)
    return all_squarefree, max_degree


def hilbert_vs_ehrhart(
    order: MonomialOrder, max_degree: int, poly: LatticePolytope
) -> bool:
    """Standard monomial counts == fiber counts for k <= max_degree
    (computed two independent ways), and both == |kP cap Z| whenever the
    polytope is IDP up to max_degree."""
    _check_budget(order, max_degree)
    gens = truncated_initial_ideal(order, max_degree)
    idp_ok, _ = is_idp(poly, max_degree)
    for k in range(1, max_degree + 1):
        nonmin, n_fibers, minima = _fiber_minima(order, k)
        divisible = _divisible_monomials(order, gens, k)
        standard = [m for m in order.monomials(k) if m not in divisible]
        if len(standard) != n_fibers or set(standard) != minima:
            return False
        if idp_ok and n_fibers != poly.lattice_point_count(k):
            return False
    return True

"""Finite posets on {0, .., d-1} with bitmask subset families.

Subsets of the ground set are ints (bit i = element i).  A subset family
is a tuple of masks sorted by indicator vector, lexicographically; that
ordering is part of the public contract (deterministic output).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

from .errors import DimensionMismatchError, InvariantError, ResourceCapError

_ENUM_MAX_D = 7
_FAMILY_MAX_D = 16


def indicator(mask: int, d: int) -> tuple[int, ...]:
    return tuple((mask >> i) & 1 for i in range(d))


def mask_of(elements, d: int) -> int:
    m = 0
    for i in elements:
        if not 0 <= i < d:
            raise InvariantError(f"element {i} outside ground set of size {d}")
        m |= 1 << i
    return m


def iter_bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def subset_family(masks, d: int) -> tuple[int, ...]:
    """Deduplicate and sort subsets by their indicator vectors."""
    return tuple(sorted(set(masks), key=lambda m: indicator(m, d)))


@dataclass(frozen=True)
class Poset:
    """Strict partial order: bit j of lt[i] set iff element i < element j."""

    d: int
    lt: tuple[int, ...]

    def __post_init__(self):
        if self.d < 0 or len(self.lt) != self.d:
            raise InvariantError("lt must have one row per element")
        full = (1 << self.d) - 1
        for i, row in enumerate(self.lt):
            if row & ~full:
                raise InvariantError("relation bit outside ground set")
            if row >> i & 1:
                raise InvariantError(f"irreflexivity violated at element {i}")
        for i in range(self.d):
            for j in iter_bits(self.lt[i]):
                if self.lt[j] >> i & 1:
                    raise InvariantError(f"antisymmetry violated on {{{i},{j}}}")
                if self.lt[j] & ~self.lt[i]:
                    raise InvariantError(f"relation not transitively closed at ({i},{j})")

    @property
    def relations(self) -> tuple[tuple[int, int], ...]:
        return tuple((i, j) for i in range(self.d) for j in iter_bits(self.lt[i]))

    def below(self, j: int) -> int:
        """Mask of elements strictly below j."""
        return sum(1 << i for i in range(self.d) if self.lt[i] >> j & 1)

    def encoding(self) -> int:
        """Relation matrix read row-major as a big-endian bit string."""
        d, enc = self.d, 0
        for i in range(d):
            for j in iter_bits(self.lt[i]):
                enc |= 1 << (d * d - 1 - (i * d + j))
        return enc

    def relabel(self, perm) -> "Poset":
        """Poset with i renamed to perm[i]."""
        rows = [0] * self.d
        for i, j in self.relations:
            rows[perm[i]] |= 1 << perm[j]
        return Poset(self.d, tuple(rows))


def poset_from_relations(d: int, pairs, close: bool = True) -> Poset:
    """Build a poset from (cover) relations i < j, transitively closing them.

    Raises InvariantError with a witness when the pairs contain a cycle.
    """
    adj = [0] * d
    for i, j in pairs:
        if not (0 <= i < d and 0 <= j < d):
            raise InvariantError(f"relation ({i},{j}) outside ground set of size {d}")
        if i == j:
            raise InvariantError(f"reflexive relation at element {i}")
        adj[i] |= 1 << j
    if close:
        for k in range(d):
            for i in range(d):
                if adj[i] >> k & 1:
                    adj[i] |= adj[k]
    for i in range(d):
        if adj[i] >> i & 1:
            cycle = sorted({i} | {j for j in iter_bits(adj[i]) if adj[j] >> i & 1})
            raise InvariantError(f"relation cycle {{{','.join(str(c) for c in cycle)}}}")
    return Poset(d, tuple(adj))


def chain(d: int) -> Poset:
    return poset_from_relations(d, [(i, i + 1) for i in range(d - 1)])


def antichain(d: int) -> Poset:
    return Poset(d, (0,) * d)


def _check_family_size(d: int):
    if d > _FAMILY_MAX_D:
        raise ResourceCapError(f"subset family enumeration capped at d={_FAMILY_MAX_D}")


def ideals(p: Poset) -> tuple[int, ...]:
    """All downward-closed subsets (poset ideals), as a subset family."""
    _check_family_size(p.d)
    down = [p.below(j) for j in range(p.d)]
    out = []
    for m in range(1 << p.d):
        if all(not (down[j] & ~m) for j in iter_bits(m)):
            out.append(m)
    return subset_family(out, p.d)


def antichains(p: Poset) -> tuple[int, ...]:
    """All subsets of pairwise incomparable elements."""
    _check_family_size(p.d)
    comp = [p.lt[i] | p.below(i) for i in range(p.d)]
    out = []
    for m in range(1 << p.d):
        if all(not (m & comp[i]) for i in iter_bits(m)):
            out.append(m)
    return subset_family(out, p.d)


def dual(p: Poset) -> Poset:
    rows = [0] * p.d
    for i, j in p.relations:
        rows[j] |= 1 << i
    return Poset(p.d, tuple(rows))


def ordinal_sum(p: Poset, q: Poset) -> Poset:
    """Stack p below q; q's elements are re-indexed after p's."""
    d = p.d + q.d
    rows = list(p.lt)
    qmask = ((1 << q.d) - 1) << p.d
    rows = [row | qmask for row in rows]
    rows += [q.lt[i] << p.d for i in range(q.d)]
    return Poset(d, tuple(rows))


def induced_subposet(p: Poset, w: int) -> Poset:
    """Restriction to the subset mask w, re-indexed to 0..|w|-1."""
    keep = [i for i in range(p.d) if w >> i & 1]
    pos = {e: k for k, e in enumerate(keep)}
    rows = []
    for e in keep:
        rows.append(sum(1 << pos[j] for j in iter_bits(p.lt[e] & w)))
    return Poset(len(keep), tuple(rows))


def linear_extension_count(p: Poset) -> int:
    """Number of order-preserving permutations, via downset recursion."""
    lt = p.lt
    memo = {0: 1}

    def count(m: int) -> int:
        try:
            return memo[m]
        except KeyError:
            total = 0
            for i in iter_bits(m):
                if not (lt[i] & m):  # i maximal in m
                    total += count(m ^ (1 << i))
            memo[m] = total
            return total

    return count((1 << p.d) - 1)


def comparability_graph(p: Poset):
    from .graphs import Graph

    rows = [p.lt[i] | p.below(i) for i in range(p.d)]
    return Graph(p.d, tuple(rows))


def common_linear_extension_exists(p: Poset, q: Poset) -> bool:
    """True iff the union of the two relations is acyclic."""
    if p.d != q.d:
        raise DimensionMismatchError(f"posets on {p.d} vs {q.d} elements")
    adj = [p.lt[i] | q.lt[i] for i in range(p.d)]
    for k in range(p.d):
        for i in range(p.d):
            if adj[i] >> k & 1:
                adj[i] |= adj[k]
    return all(not (adj[i] >> i & 1) for i in range(p.d))


def _natural_downsets(d: int):
    """Yield down-mask tuples of all posets whose identity is a linear extension."""
    down = [0] * d

    def ideal_masks(k: int):
        out = []
        for m in range(1 << k):
            if all(not (down[j] & ~m) for j in iter_bits(m)):
                out.append(m)
        return out

    def rec(k: int):
        if k == d:
            yield tuple(down)
            return
        for m in ideal_masks(k):
            down[k] = m
            yield from rec(k + 1)
        down[k] = 0

    yield from rec(0)


def _poset_from_down(d: int, down) -> Poset:
    rows = [0] * d
    for k in range(d):
        for i in iter_bits(down[k]):
            rows[i] |= 1 << k
    return Poset(d, tuple(rows))


def _decode_poset(d: int, enc: int) -> Poset:
    rows = [0] * d
    for i in range(d):
        for j in range(d):
            if enc >> (d * d - 1 - (i * d + j)) & 1:
                rows[i] |= 1 << j
    return Poset(d, tuple(rows))


def enumerate_posets(d: int, mode: str = "up_to_iso"):
    """All posets on d elements, either labeled or one lex-min representative
    per isomorphism class.  Deterministic (ascending matrix encoding).

    Memory grows with the number of labeled posets; d=7 is the hard cap.
    """
    if mode not in ("labeled", "up_to_iso"):
        raise ValueError(f"unknown mode {mode!r}")
    if d > _ENUM_MAX_D:
        raise ResourceCapError(f"poset enumeration capped at d={_ENUM_MAX_D}")
    if d == 0:
        yield Poset(0, ())
        return
    perms = list(permutations(range(d)))
    seen: set[int] = set()
    reps = []
    for down in _natural_downsets(d):
        p = _poset_from_down(d, down)
        if p.encoding() in seen:
            continue
        orbit = {p.relabel(s).encoding() for s in perms}
        seen |= orbit
        reps.append(min(orbit))
    chosen = sorted(reps) if mode == "up_to_iso" else sorted(seen)
    for enc in chosen:
        yield _decode_poset(d, enc)

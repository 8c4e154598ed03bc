"""Finite simple graphs on {0, .., d-1}; stable sets and perfection tests."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations

from .errors import InvariantError, ResourceCapError
from .posets import indicator, iter_bits, subset_family

_ENUM_MAX_D = 7
_CHROMATIC_MAX_D = 8


@dataclass(frozen=True)
class Graph:
    """Bit j of adj[i] set iff {i, j} is an edge."""

    d: int
    adj: tuple[int, ...]

    def __post_init__(self):
        if self.d < 0 or len(self.adj) != self.d:
            raise InvariantError("adj must have one row per vertex")
        full = (1 << self.d) - 1
        for i, row in enumerate(self.adj):
            if row & ~full:
                raise InvariantError("adjacency bit outside vertex set")
            if row >> i & 1:
                raise InvariantError(f"loop at vertex {i}")
            for j in iter_bits(row):
                if not (self.adj[j] >> i & 1):
                    raise InvariantError(f"asymmetric adjacency on {{{i},{j}}}")

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple(
            (i, j) for i in range(self.d) for j in iter_bits(self.adj[i]) if i < j
        )

    @property
    def is_empty(self) -> bool:
        return not any(self.adj)

    def complement(self) -> "Graph":
        full = (1 << self.d) - 1
        return Graph(
            self.d, tuple((full & ~row) & ~(1 << i) for i, row in enumerate(self.adj))
        )

    def relabel(self, perm) -> "Graph":
        rows = [0] * self.d
        for i, j in self.edges:
            rows[perm[i]] |= 1 << perm[j]
            rows[perm[j]] |= 1 << perm[i]
        return Graph(self.d, tuple(rows))

    def edge_mask(self) -> int:
        """Edge set as bits over the C(d,2) vertex pairs in lex order."""
        idx = 0
        enc = 0
        for i in range(self.d):
            for j in range(i + 1, self.d):
                if self.adj[i] >> j & 1:
                    enc |= 1 << idx
                idx += 1
        return enc


def graph_from_edges(d: int, edges) -> Graph:
    rows = [0] * d
    for i, j in edges:
        if not (0 <= i < d and 0 <= j < d):
            raise InvariantError(f"edge ({i},{j}) outside vertex set of size {d}")
        if i == j:
            raise InvariantError(f"loop at vertex {i}")
        rows[i] |= 1 << j
        rows[j] |= 1 << i
    return Graph(d, tuple(rows))


def empty_graph(d: int) -> Graph:
    return Graph(d, (0,) * d)


def complete_graph(d: int) -> Graph:
    full = (1 << d) - 1
    return Graph(d, tuple(full & ~(1 << i) for i in range(d)))


def cycle_graph(d: int) -> Graph:
    return graph_from_edges(d, [(i, (i + 1) % d) for i in range(d)])


def stable_sets(g: Graph) -> tuple[int, ...]:
    """All subsets with no internal edge, as a subset family."""
    out = []
    for m in range(1 << g.d):
        if all(not (m & g.adj[i]) for i in iter_bits(m)):
            out.append(m)
    return subset_family(out, g.d)


def _is_induced_cycle(g: Graph, verts: tuple[int, ...]) -> bool:
    """The induced subgraph on verts is a (chordless) cycle."""
    m = 0
    for v in verts:
        m |= 1 << v
    degs = [(g.adj[v] & m).bit_count() for v in verts]
    if any(deg != 2 for deg in degs):
        return False
    # 2-regular and connected on k vertices means a single k-cycle
    seen = 1 << verts[0]
    frontier = [verts[0]]
    while frontier:
        v = frontier.pop()
        for w in iter_bits(g.adj[v] & m & ~seen):
            seen |= 1 << w
            frontier.append(w)
    return seen == m


def find_odd_structure(g: Graph):
    """An odd hole or odd antihole witness, or None.

    Returns ("hole"|"antihole", vertex tuple); the vertices induce a
    chordless odd cycle of length >= 5 in g resp. its complement.
    """
    comp = g.complement()
    for size in range(5, g.d + 1, 2):
        for verts in combinations(range(g.d), size):
            if _is_induced_cycle(g, verts):
                return ("hole", verts)
        for verts in combinations(range(g.d), size):
            if _is_induced_cycle(comp, verts):
                return ("antihole", verts)
    return None


def is_perfect(g: Graph) -> bool:
    """Strong Perfect Graph Theorem test: no odd hole, no odd antihole."""
    return find_odd_structure(g) is None


def induced_subgraph(g: Graph, m: int) -> Graph:
    keep = [i for i in range(g.d) if m >> i & 1]
    pos = {v: k for k, v in enumerate(keep)}
    rows = []
    for v in keep:
        rows.append(sum(1 << pos[w] for w in iter_bits(g.adj[v] & m)))
    return Graph(len(keep), tuple(rows))


def clique_number(g: Graph) -> int:
    best = 0
    for m in range(1 << g.d):
        if m.bit_count() > best and all(
            (m & ~(1 << i)) & ~g.adj[i] == 0 for i in iter_bits(m)
        ):
            best = m.bit_count()
    return best


def _colorable(g: Graph, k: int) -> bool:
    if g.d == 0:
        return True
    if k <= 0:
        return False
    order = sorted(range(g.d), key=lambda v: -g.adj[v].bit_count())
    colors = [-1] * g.d

    def assign(idx: int, used: int) -> bool:
        if idx == g.d:
            return True
        v = order[idx]
        forbidden = {colors[w] for w in iter_bits(g.adj[v]) if colors[w] >= 0}
        for c in range(min(used + 1, k)):
            if c in forbidden:
                continue
            colors[v] = c
            if assign(idx + 1, max(used, c + 1)):
                return True
        colors[v] = -1
        return False

    return assign(0, 0)


def chromatic_number(g: Graph) -> int:
    if g.d > _CHROMATIC_MAX_D:
        raise ResourceCapError(f"chromatic number capped at d={_CHROMATIC_MAX_D}")
    k = clique_number(g)
    while not _colorable(g, k):
        k += 1
    return k


def perfection_by_definition(g: Graph) -> bool:
    """chi(H) == omega(H) for every induced subgraph H, by brute force."""
    if g.d > _CHROMATIC_MAX_D:
        raise ResourceCapError(f"perfection by definition capped at d={_CHROMATIC_MAX_D}")
    for m in range(1, (1 << g.d)):
        h = induced_subgraph(g, m)
        if not _colorable(h, clique_number(h)):
            return False
    return True


def _decode_graph(d: int, edge_mask: int) -> Graph:
    rows = [0] * d
    idx = 0
    for i in range(d):
        for j in range(i + 1, d):
            if edge_mask >> idx & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            idx += 1
    return Graph(d, tuple(rows))


def enumerate_graphs(d: int, mode: str = "up_to_iso"):
    """All simple graphs on d vertices; iso mode yields the lex-min
    edge-mask representative of each class.  Deterministic order.
    """
    if mode not in ("labeled", "up_to_iso"):
        raise ValueError(f"unknown mode {mode!r}")
    if d > _ENUM_MAX_D:
        raise ResourceCapError(f"graph enumeration capped at d={_ENUM_MAX_D}")
    n_pairs = d * (d - 1) // 2
    if mode == "labeled":
        for mask in range(1 << n_pairs):
            yield _decode_graph(d, mask)
        return
    perms = list(permutations(range(d)))
    pair_index = {}
    idx = 0
    for i in range(d):
        for j in range(i + 1, d):
            pair_index[(i, j)] = idx
            idx += 1
    # per permutation, where each pair bit moves
    moves = []
    for s in perms:
        mv = [0] * n_pairs
        for (i, j), k in pair_index.items():
            a, b = s[i], s[j]
            mv[k] = pair_index[(a, b) if a < b else (b, a)]
        moves.append(mv)
    seen: set[int] = set()
    reps = []
    for mask in range(1 << n_pairs):
        if mask in seen:
            continue
        orbit = set()
        for mv in moves:
            img = 0
            rem = mask
            while rem:
                low = rem & -rem
                img |= 1 << mv[low.bit_length() - 1]
                rem ^= low
            orbit.add(img)
        seen |= orbit
        reps.append(min(orbit))
    for mask in sorted(reps):
        yield _decode_graph(d, mask)

"""Homomorphism and subgraph-copy enumeration H -> G.

The backtracking enumerator is checked against ``brute_force_homomorphisms``,
which tries every map V(H) -> V(G) and shares no code with it.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from typing import Iterator, Sequence

from .graphs import Graph, Pattern

BRUTE_FORCE_LIMIT = 10**7


class ColumnLimitExceeded(RuntimeError):
    """Enumeration produced more items than the caller allowed."""

    def __init__(self, limit: int):
        self.limit = limit
        super().__init__(f"more than {limit} homomorphisms / columns")


def _graph(h: Graph | Pattern) -> Graph:
    return h.graph if isinstance(h, Pattern) else h


def search_order(h: Graph) -> list[int]:
    """Connectivity-respecting vertex order, highest degree first within ties.

    Each component starts at its highest-degree vertex; afterwards the next
    vertex is an unplaced neighbour of the placed set, preferring the most
    placed neighbours, then the highest degree, then the lowest index.
    """
    adj = h.adjacency
    placed: list[int] = []
    seen: set[int] = set()
    while len(placed) < h.n:
        start = min((v for v in range(h.n) if v not in seen), key=lambda v: (-len(adj[v]), v))
        placed.append(start)
        seen.add(start)
        while True:
            frontier = {u for v in placed for u in adj[v] if u not in seen}
            if not frontier:
                break
            nxt = min(frontier, key=lambda u: (-len(adj[u] & seen), -len(adj[u]), u))
            placed.append(nxt)
            seen.add(nxt)
    return placed


def _backtrack(h: Graph, g: Graph, order: Sequence[int], injective: bool,
               conditions: Sequence[tuple[int, int]] = ()) -> Iterator[tuple[int, ...]]:
    """Core search; yields mappings (indexed by H-vertex) in search order."""
    k = h.n
    if k == 0:
        yield ()
        return
    pos = {v: i for i, v in enumerate(order)}
    # for each step, the already-placed H-neighbours of the vertex placed there
    back = [[u for u in h.adjacency[v] if pos[u] < i] for i, v in enumerate(order)]
    # ordering constraints phi(a) < phi(b), checked when the later one is placed
    less_than: list[list[tuple[int, bool]]] = [[] for _ in range(k)]
    for a, b in conditions:
        if pos[a] < pos[b]:
            less_than[pos[b]].append((a, True))   # need phi(a) < phi(b)
        else:
            less_than[pos[a]].append((b, False))  # need phi(a) < phi(b), a placed later
    gmasks = g.masks
    full = (1 << g.n) - 1
    mapping = [-1] * k
    used = 0

    def rec(i: int):
        nonlocal used
        if i == k:
            yield tuple(mapping)
            return
        v = order[i]
        cand = full
        for u in back[i]:
            cand &= gmasks[mapping[u]]
        if injective:
            cand &= ~used
        while cand:
            low = cand & -cand
            x = low.bit_length() - 1
            cand ^= low
            ok = True
            for other, other_first in less_than[i]:
                y = mapping[other]
                if (other_first and not y < x) or (not other_first and not x < y):
                    ok = False
                    break
            if not ok:
                continue
            mapping[v] = x
            used |= low
            yield from rec(i + 1)
            used &= ~low
        mapping[v] = -1

    yield from rec(0)


def _iter_homomorphisms(h: Graph, g: Graph, injective: bool = False) -> Iterator[tuple[int, ...]]:
    return _backtrack(h, g, search_order(h), injective)


def enumerate_homomorphisms(h: Graph | Pattern, g: Graph) -> Iterator[tuple[int, ...]]:
    """All homomorphisms H -> G, each once, in lexicographic order of the mapping."""
    hg = _graph(h)
    order = search_order(hg)
    stream = _backtrack(hg, g, order, injective=False)
    if order == list(range(hg.n)):
        # search order is the index order, so the stream is already lexicographic
        yield from stream
    else:
        yield from sorted(stream)


def count_homomorphisms(h: Graph | Pattern, g: Graph) -> int:
    return sum(1 for _ in _iter_homomorphisms(_graph(h), g))


def is_homomorphism(h: Graph, g: Graph, mapping: Sequence[int]) -> bool:
    return all(g.has_edge(mapping[u], mapping[v]) for u, v in h.edges)


def brute_force_homomorphisms(h: Graph | Pattern, g: Graph) -> int:
    """Count homomorphisms by testing all |V(G)|^|V(H)| maps."""
    hg = _graph(h)
    if g.n ** hg.n > BRUTE_FORCE_LIMIT:
        raise ValueError(f"brute force over {g.n}^{hg.n} maps exceeds {BRUTE_FORCE_LIMIT}")
    edges = list(hg.edges)
    gedges = {(u, v) for u, v in g.edges} | {(v, u) for u, v in g.edges}
    return sum(
        1
        for f in itertools.product(range(g.n), repeat=hg.n)
        if all((f[u], f[v]) in gedges for u, v in edges)
    )


@dataclass(frozen=True)
class HomColumn:
    """Multiplicity vector v -> |h^-1(v)| shared by ``class_size`` homomorphisms."""

    multiplicities: tuple[tuple[int, int], ...]
    class_size: int = 1

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(v for v, _ in self.multiplicities)

    def as_dict(self) -> dict[int, int]:
        return dict(self.multiplicities)

    def load(self, weights) -> object:
        """Sum of weights[v] * multiplicity(v)."""
        return sum(weights[v] * m for v, m in self.multiplicities)

    @staticmethod
    def key_of(mapping: Sequence[int]) -> tuple[tuple[int, int], ...]:
        return tuple(sorted(Counter(mapping).items()))


def enumerate_columns(h: Graph | Pattern, g: Graph, limit: int | None = None) -> list[HomColumn]:
    """Distinct multiplicity vectors over all homomorphisms, sorted by vector.

    ``limit`` bounds the number of homomorphisms scanned; exceeding it raises
    ColumnLimitExceeded.
    """
    counts: Counter = Counter()
    for i, f in enumerate(_iter_homomorphisms(_graph(h), g)):
        if limit is not None and i >= limit:
            raise ColumnLimitExceeded(limit)
        counts[HomColumn.key_of(f)] += 1
    return [HomColumn(key, counts[key]) for key in sorted(counts)]


# --- injective copies ----------------------------------------------------

def automorphisms(h: Graph | Pattern) -> list[tuple[int, ...]]:
    hg = _graph(h)
    return sorted(_backtrack(hg, hg, search_order(hg), injective=True))


def symmetry_breaking_conditions(h: Graph | Pattern) -> list[tuple[int, int]]:
    """Pairs (a, b) such that requiring phi(a) < phi(b) keeps one embedding per copy.

    Repeatedly fixes a vertex with the largest orbit under the remaining
    automorphisms and orders it below the rest of its orbit, then passes to
    its stabiliser.
    """
    hg = _graph(h)
    group = automorphisms(hg)
    conditions: list[tuple[int, int]] = []
    while len(group) > 1:
        orbits = {v: sorted({a[v] for a in group}) for v in range(hg.n)}
        v = min(range(hg.n), key=lambda u: (-len(orbits[u]), u))
        conditions.extend((v, u) for u in orbits[v] if u != v)
        group = [a for a in group if a[v] == v]
    return conditions


@dataclass(frozen=True)
class InjectiveCopy:
    """A subgraph of G isomorphic to H, with one embedding realising it."""

    vertices: tuple[int, ...]
    edges: frozenset[tuple[int, int]]
    embedding: tuple[int, ...]

    @property
    def mask(self) -> int:
        return sum(1 << v for v in self.vertices)

    def embeddings(self, auts: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
        """Every injective homomorphism with this image: embedding composed with Aut(H)."""
        return sorted({tuple(self.embedding[a[u]] for u in range(len(a))) for a in auts})


def enumerate_injective_copies(h: Graph | Pattern, g: Graph) -> Iterator[InjectiveCopy]:
    """Every copy of H in G (distinct image subgraphs), sorted by (vertex set, edges)."""
    hg = _graph(h)
    conds = symmetry_breaking_conditions(hg)
    found = []
    for f in _backtrack(hg, g, search_order(hg), injective=True, conditions=conds):
        img = frozenset((f[u], f[v]) if f[u] < f[v] else (f[v], f[u]) for u, v in hg.edges)
        found.append(InjectiveCopy(tuple(sorted(f)), img, f))
    found.sort(key=lambda c: (c.vertices, sorted(c.edges)))
    yield from found

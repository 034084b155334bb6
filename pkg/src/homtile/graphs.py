"""Host graphs, coloured patterns and the plain-text / JSON graph formats."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence


class GraphFormatError(ValueError):
    """Malformed graph file; carries the offending line number when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


def _canonical_edge(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Finite simple undirected graph on vertices ``0..n-1``.

    ``parts`` is an optional named partition of the vertex set used by the
    generators; it does not take part in equality.
    """

    n: int
    edges: frozenset[tuple[int, int]]
    label: str | None = field(default=None, compare=False)
    parts: Mapping[str, tuple[int, ...]] | None = field(default=None, compare=False, hash=False)

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be nonnegative")
        canon = set()
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u}, {v}) has an endpoint outside 0..{self.n - 1}")
            canon.add(_canonical_edge(u, v))
        object.__setattr__(self, "edges", frozenset(canon))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]], label: str | None = None,
                   parts: Mapping[str, Sequence[int]] | None = None) -> "Graph":
        if parts is not None:
            parts = {k: tuple(vs) for k, vs in parts.items()}
        return cls(n, frozenset(_canonical_edge(int(u), int(v)) for u, v in edges), label, parts)

    @cached_property
    def adjacency(self) -> tuple[frozenset[int], ...]:
        nbrs: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            nbrs[u].add(v)
            nbrs[v].add(u)
        return tuple(frozenset(s) for s in nbrs)

    @cached_property
    def masks(self) -> tuple[int, ...]:
        """Neighbourhoods as integer bitmasks."""
        return tuple(sum(1 << u for u in nb) for nb in self.adjacency)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    def neighbours(self, v: int) -> frozenset[int]:
        return self.adjacency[v]

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def induced(self, vertices: Iterable[int]) -> "Graph":
        """Induced subgraph, relabelled to 0..k-1 in increasing vertex order."""
        keep = sorted(set(vertices))
        index = {v: i for i, v in enumerate(keep)}
        return Graph.from_edges(
            len(keep), [(index[u], index[v]) for u, v in self.edges if u in index and v in index]
        )

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph with vertex ``v`` renamed to ``perm[v]``."""
        return Graph.from_edges(self.n, [(perm[u], perm[v]) for u, v in self.edges], self.label)

    def with_edge(self, u: int, v: int) -> "Graph":
        return Graph(self.n, self.edges | {_canonical_edge(u, v)}, self.label)

    def __repr__(self) -> str:
        name = f" {self.label!r}" if self.label else ""
        return f"Graph({self.n}{name}, {len(self.edges)} edges)"


def degree(g: Graph, v: int) -> int:
    if not 0 <= v < g.n:
        raise ValueError(f"vertex {v} out of range for graph on {g.n} vertices")
    return len(g.adjacency[v])


@dataclass(frozen=True)
class DegreeProfile:
    threshold: Fraction
    count_at_or_above: int
    L: frozenset[int]
    S: frozenset[int]


def degree_profile(g: Graph, threshold) -> DegreeProfile:
    """Split V(G) into vertices of degree >= threshold (L) and the rest (S)."""
    threshold = Fraction(threshold)
    high = frozenset(v for v in range(g.n) if len(g.adjacency[v]) >= threshold)
    low = frozenset(range(g.n)) - high
    return DegreeProfile(threshold, len(high), high, low)


def is_proper_colouring(h: Graph, colouring: Sequence[int] | Mapping[int, int]) -> bool:
    return all(colouring[u] != colouring[v] for u, v in h.edges)


@dataclass(frozen=True)
class Pattern:
    """The tiled graph H with a proper r-colouring.

    Colour class ``i`` has ``class_sizes[i]`` vertices, and the sizes are
    non-increasing, so class ``r - 1`` is the smallest one.
    """

    graph: Graph
    r: int
    colouring: tuple[int, ...]
    class_sizes: tuple[int, ...]
    name: str | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.r < 2:
            raise ValueError("a pattern needs r >= 2 colours")
        if len(self.colouring) != self.graph.n:
            raise ValueError("colouring must cover every vertex of H")
        if not is_proper_colouring(self.graph, self.colouring):
            raise ValueError("colouring is not proper")
        sizes = [0] * self.r
        for c in self.colouring:
            if not 0 <= c < self.r:
                raise ValueError(f"colour {c} outside 0..{self.r - 1}")
            sizes[c] += 1
        if tuple(sizes) != tuple(self.class_sizes):
            raise ValueError(f"class sizes {self.class_sizes} do not match colouring {sizes}")
        if any(a < b for a, b in zip(sizes, sizes[1:])) or min(sizes) <= 0:
            raise ValueError("class sizes must be positive and non-increasing")

    @property
    def size(self) -> int:
        return self.graph.n

    @property
    def ell_r(self) -> int:
        return self.class_sizes[-1]

    def colour_class(self, i: int) -> tuple[int, ...]:
        return tuple(v for v, c in enumerate(self.colouring) if c == i)


def _canonical_classes(colouring: Sequence[int], r: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Relabel colours so classes are ordered by size desc, then by smallest member."""
    members: dict[int, list[int]] = {}
    for v, c in enumerate(colouring):
        members.setdefault(c, []).append(v)
    order = sorted(members, key=lambda c: (-len(members[c]), members[c][0]))
    rename = {c: i for i, c in enumerate(order)}
    recoloured = tuple(rename[c] for c in colouring)
    sizes = tuple(len(members[c]) for c in order)
    return recoloured, sizes


def optimal_r_colouring(h: Graph, r: int) -> Pattern | None:
    """Proper r-colouring of ``h`` with the smallest possible smallest class.

    Exhaustive over colourings up to permutation of colours.  Ties: the
    sorted class-size vector is compared lexicographically, then the
    canonicalised colouring as a sequence.  Returns None when ``h`` has no
    proper colouring with exactly ``r`` non-empty classes.
    """
    if r < 2:
        raise ValueError("r must be at least 2")
    k = h.n
    if k < r:
        return None
    adj = h.adjacency
    colour = [-1] * k
    sizes = [0] * r
    best: tuple | None = None

    def lower_bound(used: int) -> int:
        # classes only grow; an unused class ends with at least one vertex
        lb = min(sizes[:used]) if used else k
        return 1 if used < r else lb

    def rec(v: int, used: int):
        nonlocal best
        if r - used > k - v:
            return
        if best is not None and lower_bound(used) > best[0]:
            return
        if v == k:
            recoloured, csizes = _canonical_classes(colour, r)
            key = (csizes[-1], csizes, recoloured)
            if best is None or key < best:
                best = key
            return
        blocked = {colour[u] for u in adj[v] if u < v}
        for c in range(min(used + 1, r)):
            if c in blocked:
                continue
            colour[v] = c
            sizes[c] += 1
            rec(v + 1, max(used, c + 1))
            sizes[c] -= 1
            colour[v] = -1

    rec(0, 0)
    if best is None:
        return None
    _, csizes, recoloured = best
    return Pattern(h, r, recoloured, csizes, name=h.label)


def chromatic_number(h: Graph) -> int:
    """Smallest r >= 2 admitting a proper colouring with r non-empty classes."""
    for r in range(2, max(h.n, 2) + 1):
        if optimal_r_colouring(h, r) is not None:
            return r
    raise ValueError("graph has fewer than two vertices")


# --- serialization -------------------------------------------------------

def parse_graph(text: str) -> Graph:
    """Parse the edge-list text format, or the JSON form when text starts with '{'."""
    if text.lstrip().startswith("{"):
        return _parse_json(text)
    n = None
    seen: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if n is None:
            if len(tokens) != 1 or not tokens[0].isdigit():
                raise GraphFormatError(f"expected vertex count, got {line!r}", lineno)
            n = int(tokens[0])
            continue
        if len(tokens) != 2 or not all(t.isdigit() for t in tokens):
            raise GraphFormatError(f"expected 'u v', got {line!r}", lineno)
        u, v = int(tokens[0]), int(tokens[1])
        if u >= n or v >= n:
            raise GraphFormatError(f"endpoint out of range: {max(u, v)} >= {n}", lineno)
        if u == v:
            raise GraphFormatError(f"self-loop at vertex {u}", lineno)
        e = _canonical_edge(u, v)
        if e in seen:
            raise GraphFormatError(f"duplicate edge {e[0]} {e[1]}", lineno)
        seen.add(e)
    if n is None:
        raise GraphFormatError("missing vertex count")
    return Graph(n, frozenset(seen))


def _parse_json(text: str) -> Graph:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphFormatError(exc.msg, exc.lineno) from None
    if not isinstance(obj, dict) or "n" not in obj:
        raise GraphFormatError("JSON graph needs an object with key 'n'")
    n = obj["n"]
    if not isinstance(n, int) or n < 0:
        raise GraphFormatError("'n' must be a nonnegative integer")
    seen: set[tuple[int, int]] = set()
    for i, e in enumerate(obj.get("edges", [])):
        if not (isinstance(e, list) and len(e) == 2 and all(isinstance(t, int) for t in e)):
            raise GraphFormatError(f"edge #{i} is not a pair of integers")
        u, v = e
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"edge #{i}: endpoint out of range")
        if u == v:
            raise GraphFormatError(f"edge #{i}: self-loop at vertex {u}")
        c = _canonical_edge(u, v)
        if c in seen:
            raise GraphFormatError(f"edge #{i}: duplicate edge {c[0]} {c[1]}")
        seen.add(c)
    parts = obj.get("parts")
    if parts is not None:
        parts = {str(k): tuple(vs) for k, vs in parts.items()}
    return Graph(n, frozenset(seen), obj.get("label"), parts)


def write_graph(g: Graph, fmt: str = "text") -> str:
    if fmt == "json":
        obj: dict = {"n": g.n, "edges": [list(e) for e in g.sorted_edges()]}
        if g.label is not None:
            obj["label"] = g.label
        if g.parts is not None:
            obj["parts"] = {k: list(vs) for k, vs in g.parts.items()}
        return json.dumps(obj) + "\n"
    if fmt != "text":
        raise ValueError(f"unknown graph format {fmt!r}")
    lines = []
    if g.label:
        lines.append(f"# {g.label}")
    lines.append(str(g.n))
    lines.extend(f"{u} {v}" for u, v in g.sorted_edges())
    return "\n".join(lines) + "\n"


def read_graph(path) -> Graph:
    with open(path) as fh:
        return parse_graph(fh.read())

"""Graph generators: the extremal four-part graph, the K_{3,3,3} example with a
spanning cycle, blow-ups, a small pattern corpus and seeded random hosts."""

from __future__ import annotations

import itertools
import random
import re
from dataclasses import dataclass
from fractions import Fraction

from .graphs import Graph, Pattern, chromatic_number, optimal_r_colouring


class SpecError(ValueError):
    """Construction parameters give non-integral or negative part sizes."""


def _as_int(name: str, value: Fraction) -> int:
    if value.denominator != 1:
        raise SpecError(f"{name} = {value} is not an integer")
    if value < 0:
        raise SpecError(f"{name} = {value} is negative")
    return int(value)


@dataclass(frozen=True)
class ExtremalSpec:
    r: int
    h_size: int
    ell_r: int
    x: Fraction
    n: int

    def __post_init__(self):
        object.__setattr__(self, "x", Fraction(self.x))
        if self.r < 2:
            raise SpecError("r must be at least 2")
        if not 0 < self.x < Fraction(1, self.h_size):
            raise SpecError(f"x = {self.x} must lie strictly between 0 and 1/{self.h_size}")
        if self.ell_r <= 0 or self.r * self.ell_r > self.h_size:
            raise SpecError("need 0 < r * ell_r <= |V(H)|")

    @property
    def raw_sizes(self) -> dict[str, Fraction]:
        r, k, l, x, n = self.r, self.h_size, self.ell_r, self.x, self.n
        return {
            "V1": x * l * n,
            "V2": x * (k - l) * n / (r - 1),
            "V3": (r - 2) * (1 - x * l) * n / (r - 1),
            "S": (1 - x * k) * n / (r - 1),
        }

    @property
    def sizes(self) -> tuple[int, int, int, int]:
        """(|V1|, |V2|, |V3|, |S|); raises SpecError unless all are integers."""
        raw = self.raw_sizes
        out = tuple(_as_int(f"|{k}|", v) for k, v in raw.items())
        if self.r > 2 and out[2] % (self.r - 2):
            raise SpecError(f"|V3| = {out[2]} is not divisible by r - 2 = {self.r - 2}")
        return out  # type: ignore[return-value]

    @property
    def delta(self) -> Fraction:
        return (self.r - 2 + self.x * self.ell_r) * self.n / (self.r - 1)

    @property
    def xn(self) -> Fraction:
        return self.x * self.n


def suggest_parameters(r: int, h_size: int, ell_r: int, x: Fraction, n: int,
                       count: int = 3, search: int = 200) -> list[tuple[Fraction, int]]:
    """Nearby (x, n) pairs for which the extremal sizes are integral.

    Tries the given x with the closest valid n first, then x values with
    small denominators close to the requested one.
    """
    def ok(xx, nn):
        try:
            ExtremalSpec(r, h_size, ell_r, xx, nn).sizes
            return True
        except SpecError:
            return False

    found: list[tuple[Fraction, int]] = []
    x = Fraction(x)
    for d in range(search):
        for nn in (n - d, n + d) if d else (n,):
            if nn > 0 and ok(x, nn) and (x, nn) not in found:
                found.append((x, nn))
        if found:
            break
    xs = sorted({Fraction(p, q) for q in range(2, 4 * h_size * (r - 1) + 1) for p in range(1, q)
                 if Fraction(p, q) < Fraction(1, h_size)}, key=lambda y: (abs(y - x), y))
    for y in xs:
        if len(found) >= count:
            break
        if y != x and ok(y, n):
            found.append((y, n))
    return found[:count]


def _complete_multipartite_edges(groups):
    for a, b in itertools.combinations(groups, 2):
        for u in a:
            for v in b:
                yield u, v


def build_extremal_graph(spec: ExtremalSpec) -> Graph:
    """Four-part extremal graph; vertices numbered V1, V2, V3, S in that order.

    V1, V2 and S are independent, V3 is a balanced complete (r-2)-partite
    graph joined to everything outside it, and V1-V2 is complete bipartite.
    """
    s1, s2, s3, ss = spec.sizes
    V1 = tuple(range(s1))
    V2 = tuple(range(s1, s1 + s2))
    V3 = tuple(range(s1 + s2, s1 + s2 + s3))
    S = tuple(range(s1 + s2 + s3, spec.n))
    edges = []
    if spec.r > 2 and s3:
        w = s3 // (spec.r - 2)
        edges.extend(_complete_multipartite_edges([V3[i:i + w] for i in range(0, s3, w)]))
    rest = V1 + V2 + S
    edges.extend((u, v) for u in V3 for v in rest)
    edges.extend((u, v) for u in V1 for v in V2)
    label = f"extremal r={spec.r} |H|={spec.h_size} ell_r={spec.ell_r} x={spec.x} n={spec.n}"
    return Graph.from_edges(spec.n, edges, label, {"V1": V1, "V2": V2, "V3": V3, "S": S})


def k333_sizes(x, n: int) -> tuple[int, int, int, int]:
    x = Fraction(x)
    raw = {
        "V1": 3 * x * n - 2,
        "V2": 3 * x * n + 2,
        "V3": (1 - 3 * x) * n / 2,
        "V4": (1 - 9 * x) * n / 2,
    }
    sizes = tuple(_as_int(f"|{k}|", v) for k, v in raw.items())
    if sizes[1] < 3:
        raise SpecError(f"|V2| = {sizes[1]} is too small to carry a cycle")
    if sum(sizes) != n:
        raise SpecError("part sizes do not sum to n")
    return sizes  # type: ignore[return-value]


def build_k333_counterexample(x, n: int) -> Graph:
    """Host graph where V2 carries a spanning cycle in index order.

    V1, V3, V4 are independent; V3 is joined to all of V1, V2, V4 and V1 to
    all of V2.
    """
    a, b, c, d = k333_sizes(x, n)
    V1 = tuple(range(a))
    V2 = tuple(range(a, a + b))
    V3 = tuple(range(a + b, a + b + c))
    V4 = tuple(range(a + b + c, n))
    edges = [(V2[i], V2[(i + 1) % b]) for i in range(b)]
    edges += [(u, v) for u in V3 for v in V1 + V2 + V4]
    edges += [(u, v) for u in V1 for v in V2]
    label = f"k333 counterexample x={Fraction(x)} n={n}"
    return Graph.from_edges(n, edges, label, {"V1": V1, "V2": V2, "V3": V3, "V4": V4})


def blow_up(g: Graph, s: int) -> Graph:
    """Replace each vertex v by clones v*s .. v*s+s-1 and each edge by K_{s,s}."""
    if s < 1:
        raise ValueError("blow-up factor must be at least 1")
    edges = [(u * s + i, v * s + j) for u, v in g.edges for i in range(s) for j in range(s)]
    return Graph.from_edges(g.n * s, edges, None if g.label is None else f"{g.label} blown up x{s}")


# --- pattern corpus --------------------------------------------------------

def complete_graph(k: int) -> Graph:
    return Graph.from_edges(k, itertools.combinations(range(k), 2), f"K_{k}")


def complete_multipartite(sizes) -> Graph:
    groups, start = [], 0
    for s in sizes:
        groups.append(range(start, start + s))
        start += s
    name = "K_{" + ",".join(map(str, sizes)) + "}"
    return Graph.from_edges(start, _complete_multipartite_edges(groups), name)


def path_graph(k: int) -> Graph:
    return Graph.from_edges(k, [(i, i + 1) for i in range(k - 1)], f"P_{k}")


def cycle_graph(k: int) -> Graph:
    if k < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph.from_edges(k, [(i, (i + 1) % k) for i in range(k)], f"C_{k}")


_PATTERN_RE = re.compile(r"^(?P<kind>[KPC])_?\{?(?P<args>\d+(?:,\d+)*)\}?$")


def named_graph(name: str) -> Graph:
    """Parse names such as K3, K_3, K_{3,3,3}, K_3,3,3, P4 and C_5."""
    m = _PATTERN_RE.match(name.replace(" ", ""))
    if not m:
        raise ValueError(f"unknown pattern name {name!r}")
    kind, args = m["kind"], [int(a) for a in m["args"].split(",")]
    if any(a <= 0 for a in args):
        raise ValueError(f"pattern parameters must be positive: {name!r}")
    if kind == "K":
        return complete_graph(args[0]) if len(args) == 1 else complete_multipartite(args)
    if len(args) != 1:
        raise ValueError(f"unknown pattern name {name!r}")
    return path_graph(args[0]) if kind == "P" else cycle_graph(args[0])


def pattern_from_graph(h: Graph, r: int | None = None) -> Pattern:
    """Attach the minimum-smallest-class r-colouring (r defaults to the chromatic number)."""
    if r is None:
        r = chromatic_number(h)
    pat = optimal_r_colouring(h, r)
    if pat is None:
        raise ValueError(f"{h.label or 'graph'} has no proper colouring with {r} non-empty classes")
    return pat


def standard_pattern(name: str, r: int | None = None) -> Pattern:
    return pattern_from_graph(named_graph(name), r)


def random_graph(n: int, edge_prob, seed: int) -> Graph:
    """Erdos-Renyi G(n, p) with exact rational p; deterministic per seed."""
    p = Fraction(edge_prob)
    if not 0 <= p <= 1:
        raise ValueError("edge probability must lie in [0, 1]")
    if n < 0:
        raise ValueError("n must be nonnegative")
    rng = random.Random(seed)
    edges = [(u, v) for u, v in itertools.combinations(range(n), 2)
             if rng.randrange(p.denominator) < p.numerator]
    return Graph.from_edges(n, edges, f"G({n},{p}) seed={seed}")

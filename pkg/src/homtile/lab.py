"""Checkers for the median-type degree condition and the objects used to
prove that it forces a large fractional hom_H-cover."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .graphs import Graph, Pattern, degree_profile
from .homs import is_homomorphism
from .tiling import FractionalCover, check_cover, fractional_cover_number


@dataclass(frozen=True)
class MedianHypothesis:
    r: int
    x: Fraction
    ell_r: int
    h_size: int
    n: int
    eta: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "x", Fraction(self.x))
        object.__setattr__(self, "eta", Fraction(self.eta))
        if not 0 < self.x < Fraction(1, self.h_size):
            raise ValueError(f"x = {self.x} must lie strictly between 0 and 1/{self.h_size}")
        if self.eta < 0:
            raise ValueError("eta must be nonnegative")

    @classmethod
    def for_pattern(cls, h: Pattern, x, n: int, eta=0) -> "MedianHypothesis":
        return cls(h.r, Fraction(x), h.ell_r, h.size, n, Fraction(eta))

    @property
    def delta(self) -> Fraction:
        return (self.r - 2 + self.x * self.ell_r) * self.n / (self.r - 1)

    @property
    def required_count(self) -> Fraction:
        return (self.r - 2 + self.x * self.h_size) * self.n / (self.r - 1)

    def to_json(self) -> dict:
        return {"r": self.r, "x": str(self.x), "ell_r": self.ell_r, "h_size": self.h_size,
                "n": self.n, "eta": str(self.eta), "delta": str(self.delta),
                "required_count": str(self.required_count)}


@dataclass
class HypothesisReport:
    met: bool
    high_degree_count: int
    threshold: Fraction
    required: Fraction

    def __bool__(self) -> bool:
        return self.met


def check_median_hypothesis(g: Graph, hyp: MedianHypothesis) -> HypothesisReport:
    if g.n != hyp.n:
        raise ValueError(f"hypothesis is for n = {hyp.n}, graph has {g.n} vertices")
    threshold = (1 + hyp.eta) * hyp.delta
    required = (1 + hyp.eta) * hyp.required_count
    count = degree_profile(g, threshold).count_at_or_above
    return HypothesisReport(count >= required, count, threshold, required)


@dataclass
class CoverBoundReport:
    hypothesis: HypothesisReport
    status: str  # "ok", "violated" or "hypothesis-not-met"
    cover_value: Fraction | None = None
    cover: FractionalCover | None = None
    xn: Fraction | None = None

    @property
    def slack(self) -> Fraction | None:
        if self.cover_value is None:
            return None
        return self.cover_value - self.xn


def check_cover_bound(g: Graph, h: Pattern, x, cover: tuple[Fraction, FractionalCover] | None = None
                      ) -> CoverBoundReport:
    """Compare the fractional hom_H-cover number of a graph meeting the hypothesis with xn.

    A precomputed ``(value, certificate)`` pair may be passed as ``cover``.
    """
    hyp = MedianHypothesis.for_pattern(h, x, g.n)
    hrep = check_median_hypothesis(g, hyp)
    if not hrep.met:
        return CoverBoundReport(hrep, "hypothesis-not-met")
    value, cert = cover if cover is not None else fractional_cover_number(g, h)
    xn = hyp.x * g.n
    return CoverBoundReport(hrep, "ok" if value >= xn else "violated", value, cert, xn)


# --- clique procedures ------------------------------------------------------

@dataclass
class CliqueWitness:
    vertices: tuple[int, ...]
    common_nbhd_L: frozenset[int]
    common_nbhd_S: frozenset[int]
    L: frozenset[int]
    S: frozenset[int]
    # |N_L(i)| + |N_S(i)| after each step i = 1..r-1
    step_sizes: list[int] = field(default_factory=list)


@dataclass
class CliqueFailure:
    step: int
    reason: str
    vertices: tuple[int, ...] = ()

    def __bool__(self) -> bool:
        return False


def greedy_clique_in_L(g: Graph, delta, r: int) -> CliqueWitness | CliqueFailure:
    """Grow an (r-1)-clique inside L one lowest-index common L-neighbour at a time.

    Fails at step i if the running common L-neighbourhood is empty before
    r-1 vertices are chosen, or (step r-1) if the final common neighbourhood
    is empty.
    """
    if r < 2:
        raise ValueError("r must be at least 2")
    prof = degree_profile(g, delta)
    L, S = prof.L, prof.S
    if not L:
        return CliqueFailure(0, "L is empty")
    chosen = [min(L)]
    common = set(g.neighbours(chosen[0]))
    sizes = [len(common)]
    while len(chosen) < r - 1:
        nl = common & L
        if not nl:
            return CliqueFailure(len(chosen), f"N_L({len(chosen)}) is empty", tuple(chosen))
        v = min(nl)
        chosen.append(v)
        common &= g.neighbours(v)
        sizes.append(len(common))
    if not common:
        return CliqueFailure(r - 1, f"common neighbourhood N({r - 1}) is empty", tuple(chosen))
    return CliqueWitness(tuple(chosen), frozenset(common & L), frozenset(common & S), L, S, sizes)


def intersection_bound(delta, n: int, i: int) -> Fraction:
    """Lower bound i*delta - (i-1)*n on the common neighbourhood of i vertices of L."""
    return i * Fraction(delta) - (i - 1) * n


@dataclass
class MinCoverClique:
    witness: CliqueWitness
    alphas: tuple[Fraction, ...]
    u: int | None
    w: int | None
    alpha_L: Fraction
    alpha_S: Fraction

    @property
    def alpha_r(self) -> Fraction:
        return min(self.alpha_L, self.alpha_S)

    def alpha_chain_holds(self) -> bool:
        chain = list(self.alphas) + [self.alpha_L]
        return all(a <= b for a, b in zip(chain, chain[1:]))

    def to_json(self) -> dict:
        return {"clique": list(self.witness.vertices), "alphas": [str(a) for a in self.alphas],
                "u": self.u, "w": self.w, "alpha_L": str(self.alpha_L),
                "alpha_S": str(self.alpha_S), "alpha_r": str(self.alpha_r)}


def cliques_in(g: Graph, vertices, size: int):
    """All cliques of the given size inside ``vertices``, as sorted tuples in lex order."""
    vs = sorted(vertices)

    def rec(start, current, cand):
        if len(current) == size:
            yield tuple(current)
            return
        for i in range(start, len(vs)):
            v = vs[i]
            if v in cand:
                current.append(v)
                yield from rec(i + 1, current, cand & g.neighbours(v))
                current.pop()

    yield from rec(0, [], frozenset(vs))


def _cover_order(clique: Sequence[int], c: Sequence[Fraction]) -> tuple[int, ...]:
    return tuple(sorted(clique, key=lambda v: (c[v], v)))


def min_cover_clique(g: Graph, delta, r: int, c: Sequence[Fraction] | FractionalCover
                     ) -> MinCoverClique | CliqueFailure:
    """(r-1)-clique of L whose sorted cover values are lexicographically smallest.

    Ties go to the lexicographically smallest vertex tuple.  The clique is
    returned ordered by cover value (ties by index) so that
    alpha_1 <= ... <= alpha_{r-1}.
    """
    weights = c.weights if isinstance(c, FractionalCover) else tuple(c)
    prof = degree_profile(g, delta)
    best = None
    for q in cliques_in(g, prof.L, r - 1):
        key = (tuple(sorted(weights[v] for v in q)), q)
        if best is None or key < best:
            best = key
    if best is None:
        return CliqueFailure(r - 1, f"no clique of size {r - 1} in L")
    clique = _cover_order(best[1], weights)
    return _alpha_values(g, clique, prof.L, prof.S, weights)


def _alpha_values(g, clique, L, S, weights) -> MinCoverClique:
    common = set(range(g.n))
    sizes = []
    for v in clique:
        common &= g.neighbours(v)
        sizes.append(len(common))
    nl, ns = frozenset(common & L), frozenset(common & S)
    u = min(nl, key=lambda v: (weights[v], v)) if nl else None
    w = min(ns, key=lambda v: (weights[v], v)) if ns else None
    one = Fraction(1)
    witness = CliqueWitness(tuple(clique), nl, ns, frozenset(L), frozenset(S), sizes)
    return MinCoverClique(witness, tuple(weights[v] for v in clique), u, w,
                          weights[u] if u is not None else one,
                          weights[w] if w is not None else one)


def brute_force_min_cover_clique(g: Graph, delta, r: int, c: Sequence[Fraction]) -> tuple[int, ...] | None:
    """Independent scan over all (r-1)-subsets of L; returns the selected vertex tuple."""
    prof = degree_profile(g, delta)
    best = None
    for q in itertools.combinations(sorted(prof.L), r - 1):
        if all(g.has_edge(a, b) for a, b in itertools.combinations(q, 2)):
            key = (sorted(c[v] for v in q), q)
            if best is None or key < best:
                best = key
    return None if best is None else _cover_order(best[1], c)


@dataclass
class CollapsedReport:
    vacuous: bool
    mapping: tuple[int, ...] | None = None
    total: Fraction | None = None
    holds: bool = True


class CollapseError(RuntimeError):
    """The class-collapsing map failed to be a homomorphism."""


def check_collapsed_constraint(h: Pattern, g: Graph, mc: MinCoverClique,
                               c: Sequence[Fraction] | FractionalCover) -> CollapsedReport:
    """Send colour class i of H to v_i and the smallest class to u or w; check load >= 1.

    The last class goes to whichever of u, w carries the smaller weight
    (u on ties).  With neither present the check is vacuous.
    """
    weights = c.weights if isinstance(c, FractionalCover) else tuple(c)
    if mc.u is None and mc.w is None:
        return CollapsedReport(vacuous=True)
    if len(mc.witness.vertices) != h.r - 1:
        raise ValueError("witness clique size must be r - 1 for this pattern")
    if mc.u is None:
        last = mc.w
    elif mc.w is None:
        last = mc.u
    else:
        last = mc.u if weights[mc.u] <= weights[mc.w] else mc.w
    targets = list(mc.witness.vertices) + [last]
    mapping = tuple(targets[col] for col in h.colouring)
    if not is_homomorphism(h.graph, g, mapping):
        raise CollapseError(f"collapsed map {mapping} is not a homomorphism")
    total = sum((weights[v] for v in mapping), Fraction(0))
    expected = sum((l * a for l, a in zip(h.class_sizes, list(mc.alphas) + [mc.alpha_r])), Fraction(0))
    if total != expected:
        raise CollapseError(f"load {total} differs from sum of ell_i * alpha_i = {expected}")
    return CollapsedReport(False, mapping, total, total >= 1)


# --- bundled audit for one graph -------------------------------------------

@dataclass
class ProofObjectReport:
    greedy: CliqueWitness | CliqueFailure
    greedy_bound_ok: bool
    min_clique: MinCoverClique | CliqueFailure
    alpha_chain_ok: bool
    collapsed: CollapsedReport | None
    cover_ok: bool

    @property
    def ok(self) -> bool:
        return (bool(self.greedy) and self.greedy_bound_ok and bool(self.min_clique)
                and self.alpha_chain_ok and self.cover_ok
                and (self.collapsed is None or self.collapsed.vacuous or self.collapsed.holds))


def audit_proof_objects(g: Graph, h: Pattern, x, cover: FractionalCover) -> ProofObjectReport:
    """Greedy clique with its intersection bounds, then the min-cover clique under ``cover``."""
    hyp = MedianHypothesis.for_pattern(h, x, g.n)
    greedy = greedy_clique_in_L(g, hyp.delta, h.r)
    bound_ok = False
    if greedy:
        bound_ok = all(s >= intersection_bound(hyp.delta, g.n, i)
                       for i, s in enumerate(greedy.step_sizes, start=1))
    mc = min_cover_clique(g, hyp.delta, h.r, cover)
    chain_ok = bool(mc) and mc.alpha_chain_holds()
    collapsed = check_collapsed_constraint(h, g, mc, cover) if mc else None
    cover_ok = bool(check_cover(g, h, cover))
    return ProofObjectReport(greedy, bound_ok, mc, chain_ok, collapsed, cover_ok)

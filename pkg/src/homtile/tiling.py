"""Fractional hom_H-tiling / hom_H-cover numbers and integral H-tiling numbers.

Both LPs are indexed by distinct multiplicity vectors (``HomColumn``): the
tiling LP maximises the total column weight subject to every host vertex
carrying load at most 1, and the cover LP minimises the total vertex weight
subject to every column collecting weight at least 1.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Mapping, Sequence

from .graphs import Graph, Pattern
from .homs import (
    ColumnLimitExceeded,
    HomColumn,
    InjectiveCopy,
    enumerate_columns,
    enumerate_injective_copies,
    is_homomorphism,
)
from .lp import GE, LE, LpProblem, solve, solve_with_lazy_rows

ZERO = Fraction(0)
ONE = Fraction(1)

# branch-and-bound only pays for an LP bound when a node has more candidate copies than this
LP_BOUND_MIN_CANDIDATES = 50
LP_BOUND_MAX_HOMS = 20_000
CUTS_PER_ROUND = 4


class SearchLimitExceeded(RuntimeError):
    def __init__(self, message: str, nodes: int):
        self.nodes = nodes
        super().__init__(message)


class InvariantFailure(AssertionError):
    """An identity that must hold (duality, integral <= fractional) did not."""


@dataclass(frozen=True)
class FractionalTiling:
    weights: Mapping[HomColumn, Fraction]
    size: Fraction

    def to_json(self) -> dict:
        return {
            "tiling": [
                {"column": {str(v): m for v, m in col.multiplicities}, "weight": str(w)}
                for col, w in sorted(self.weights.items(), key=lambda kv: kv[0].multiplicities)
            ],
            "size": str(self.size),
        }


@dataclass(frozen=True)
class FractionalCover:
    weights: tuple[Fraction, ...]
    size: Fraction

    def to_json(self) -> dict:
        return {"cover": {str(v): str(w) for v, w in enumerate(self.weights)}, "size": str(self.size)}


@dataclass(frozen=True)
class IntegralTiling:
    copies: tuple[InjectiveCopy, ...]

    @property
    def size(self) -> int:
        return len(self.copies)

    def to_json(self) -> dict:
        return {"copies": [{"vertices": list(c.vertices), "embedding": list(c.embedding)}
                           for c in self.copies], "size": self.size}


@dataclass
class CheckReport:
    ok: bool
    reason: str = ""
    witness: object = None

    def __bool__(self) -> bool:
        return self.ok


# --- LP construction ---------------------------------------------------------

def tiling_lp_from_columns(n: int, columns: Sequence[HomColumn]) -> LpProblem:
    rows = [dict() for _ in range(n)]
    for j, col in enumerate(columns):
        for v, m in col.multiplicities:
            rows[v][j] = Fraction(m)
    return LpProblem(tuple([ONE] * len(columns)), tuple(rows), (LE,) * n, (ONE,) * n, maximize=True)


def cover_lp_from_columns(n: int, columns: Sequence[HomColumn]) -> LpProblem:
    rows = tuple({v: Fraction(m) for v, m in col.multiplicities} for col in columns)
    return LpProblem(tuple([ONE] * n), rows, (GE,) * len(columns), (ONE,) * len(columns),
                     maximize=False)


def build_tiling_lp(g: Graph, h: Pattern | Graph, max_columns: int | None = None) -> LpProblem:
    return tiling_lp_from_columns(g.n, _columns(g, h, max_columns))


def _columns(g, h, max_columns):
    cols = enumerate_columns(h, g)
    if max_columns is not None and len(cols) > max_columns:
        raise ColumnLimitExceeded(max_columns)
    return cols


# --- fractional numbers ------------------------------------------------------

def fractional_tiling_number(g: Graph, h: Pattern | Graph, columns: Sequence[HomColumn] | None = None,
                             max_columns: int | None = None) -> tuple[Fraction, FractionalTiling]:
    if columns is None:
        columns = _columns(g, h, max_columns)
    if not columns:
        return ZERO, FractionalTiling({}, ZERO)
    sol = solve(tiling_lp_from_columns(g.n, columns))
    weights = {col: w for col, w in zip(columns, sol.primal) if w}
    return sol.value, FractionalTiling(weights, sol.value)


def violated_columns(g: Graph, h: Pattern | Graph, c: Sequence[Fraction]) -> Iterator[HomColumn]:
    """Distinct columns collecting weight < 1, in lexicographic order of their first homomorphism.

    Backtracks over H-vertices in index order and abandons a branch once the
    partial weight reaches 1 (weights are nonnegative).
    """
    hg = h.graph if isinstance(h, Pattern) else h
    k = hg.n
    if k == 0:
        return
    back = [[u for u in hg.adjacency[v] if u < v] for v in range(k)]
    gmasks = g.masks
    full = (1 << g.n) - 1
    mapping = [-1] * k
    seen = set()

    def rec(i: int, acc: Fraction):
        if i == k:
            key = HomColumn.key_of(mapping)
            if key not in seen:
                seen.add(key)
                yield HomColumn(key)
            return
        cand = full
        for u in back[i]:
            cand &= gmasks[mapping[u]]
        while cand:
            low = cand & -cand
            x = low.bit_length() - 1
            cand ^= low
            a = acc + c[x]
            if a >= 1:
                continue
            mapping[i] = x
            yield from rec(i + 1, a)
        mapping[i] = -1

    yield from rec(0, ZERO)


def find_violated_column(g: Graph, h: Pattern | Graph, c: Sequence[Fraction]) -> HomColumn | None:
    """First column (lexicographically first homomorphism) with load < 1, or None."""
    return next(violated_columns(g, h, c), None)


def fractional_cover_number(g: Graph, h: Pattern | Graph, lazy: bool = True,
                            columns: Sequence[HomColumn] | None = None,
                            max_iterations: int = 10_000,
                            cuts_per_round: int = CUTS_PER_ROUND) -> tuple[Fraction, FractionalCover]:
    """Minimum fractional hom_H-cover.

    With ``lazy`` (default) column constraints are generated on demand by
    ``violated_columns``, up to ``cuts_per_round`` per re-solve; otherwise the full constraint set is built.
    """
    n = g.n
    if lazy:
        start = LpProblem(tuple([ONE] * n), maximize=False)

        def separate(point):
            cols = list(itertools.islice(violated_columns(g, h, point), cuts_per_round))
            return [({v: Fraction(m) for v, m in col.multiplicities}, GE, ONE) for col in cols] or None

        sol, _ = solve_with_lazy_rows(start, separate, max_iterations)
    else:
        if columns is None:
            columns = enumerate_columns(h, g)
        sol = solve(cover_lp_from_columns(n, columns))
    weights = tuple(sol.primal) if n else ()
    return sol.value, FractionalCover(weights, sol.value)


# --- independent checkers ----------------------------------------------------

def check_tiling(g: Graph, h: Pattern | Graph, t: FractionalTiling,
                 columns: Sequence[HomColumn] | None = None) -> CheckReport:
    if columns is None:
        columns = enumerate_columns(h, g)
    known = {col.multiplicities for col in columns}
    load = [ZERO] * g.n
    total = ZERO
    for col, w in t.weights.items():
        if col.multiplicities not in known:
            raise ValueError(f"column {col.multiplicities} is not a homomorphism column of (G, H)")
        if not ZERO <= w <= ONE:
            return CheckReport(False, f"weight {w} outside [0, 1]", col)
        total += w
        for v, m in col.multiplicities:
            load[v] += w * m
    for v, x in enumerate(load):
        if x > 1:
            return CheckReport(False, f"vertex {v} has load {x} > 1", v)
    if total != t.size:
        return CheckReport(False, f"size {t.size} differs from weight sum {total}")
    return CheckReport(True)


def check_cover(g: Graph, h: Pattern | Graph, c: FractionalCover,
                columns: Sequence[HomColumn] | None = None) -> CheckReport:
    if len(c.weights) != g.n:
        return CheckReport(False, "cover must weight every vertex")
    for v, w in enumerate(c.weights):
        if not ZERO <= w <= ONE:
            return CheckReport(False, f"weight {w} of vertex {v} outside [0, 1]", v)
    if columns is None:
        columns = enumerate_columns(h, g)
    for col in columns:
        s = col.load(c.weights)
        if s < 1:
            return CheckReport(False, f"column {col.as_dict()} collects only {s}", col)
    if sum(c.weights, ZERO) != c.size:
        return CheckReport(False, f"size {c.size} differs from weight sum")
    return CheckReport(True)


@dataclass
class DualityReport:
    tiling_value: Fraction
    cover_value: Fraction
    tiling: FractionalTiling
    cover: FractionalCover

    @property
    def equal(self) -> bool:
        return self.tiling_value == self.cover_value

    def __str__(self) -> str:
        rel = "=" if self.equal else "!="
        return f"{self.tiling_value} {rel} {self.cover_value}"


def verify_duality(g: Graph, h: Pattern | Graph, columns: Sequence[HomColumn] | None = None,
                   strict: bool = False) -> DualityReport:
    """Tiling number via the full LP, cover number via lazy rows, compared exactly."""
    if columns is None:
        columns = enumerate_columns(h, g)
    tv, t = fractional_tiling_number(g, h, columns)
    cv, c = fractional_cover_number(g, h, lazy=True)
    rep = DualityReport(tv, cv, t, c)
    if strict and not rep.equal:
        raise InvariantFailure(f"duality fails: tiling {tv} vs cover {cv}")
    return rep


# --- integral tiling ---------------------------------------------------------

def copy_vertex_sets(h: Pattern | Graph, g: Graph) -> dict[int, InjectiveCopy]:
    """First copy (in enumeration order) for each distinct vertex set, keyed by bitmask."""
    out: dict[int, InjectiveCopy] = {}
    for cp in enumerate_injective_copies(h, g):
        out.setdefault(cp.mask, cp)
    return out


def _popcount(x: int) -> int:
    return bin(x).count("1")


@dataclass
class _Search:
    g: Graph
    h: Pattern | Graph
    k: int
    copies: dict[int, InjectiveCopy]
    target: int | None
    max_nodes: int | None
    deadline: float | None
    use_lp: bool = True
    nodes: int = 0
    best: int = -1
    best_family: list[int] = field(default_factory=list)

    class Done(Exception):
        pass

    def lp_bound(self, usable: int) -> int | None:
        verts = [v for v in range(self.g.n) if usable >> v & 1]
        sub = self.g.induced(verts)
        try:
            cols = enumerate_columns(self.h, sub, limit=LP_BOUND_MAX_HOMS)
        except ColumnLimitExceeded:
            self.use_lp = False
            return None
        value, _ = fractional_tiling_number(sub, self.h, cols)
        return value.numerator // value.denominator

    def run(self, avail: list[int], count: int, chosen: list[int]):
        self.nodes += 1
        if self.max_nodes is not None and self.nodes > self.max_nodes:
            raise SearchLimitExceeded(f"branch-and-bound exceeded {self.max_nodes} nodes", self.nodes)
        if self.deadline is not None and self.nodes % 256 == 0 and time.monotonic() > self.deadline:
            raise SearchLimitExceeded("branch-and-bound exceeded its time budget", self.nodes)
        if count > self.best:
            self.best = count
            self.best_family = list(chosen)
            if self.target is not None and self.best >= self.target:
                raise self.Done
        if not avail:
            return
        usable = 0
        for m in avail:
            usable |= m
        if count + _popcount(usable) // self.k <= self.best:
            return
        if self.use_lp and len(avail) > LP_BOUND_MIN_CANDIDATES:
            b = self.lp_bound(usable)
            if b is not None and count + b <= self.best:
                return
        vbit = usable & -usable
        for m in avail:
            if m & vbit:
                chosen.append(m)
                self.run([a for a in avail if not a & m], count + 1, chosen)
                chosen.pop()
        self.run([a for a in avail if not a & vbit], count, chosen)


def integral_tiling_number(g: Graph, h: Pattern | Graph, target: int | None = None,
                           max_nodes: int | None = None, time_budget: float | None = None,
                           use_lp_bound: bool = True) -> tuple[int, IntegralTiling]:
    """Maximum number of vertex-disjoint copies of H, by branch and bound.

    Branches on the lowest-index vertex still usable: either one of the
    copies through it is taken, or the vertex is discarded.  With ``target``
    the search stops as soon as a tiling of that size is found, so the
    returned number is then only a lower bound equal to ``target``.
    """
    hg = h.graph if isinstance(h, Pattern) else h
    if hg.n == 0:
        raise ValueError("pattern must have at least one vertex")
    copies = copy_vertex_sets(h, g)
    deadline = None if time_budget is None else time.monotonic() + time_budget
    s = _Search(g, h, hg.n, copies, target, max_nodes, deadline, use_lp_bound)
    try:
        s.run(list(copies), 0, [])
    except _Search.Done:
        pass
    family = tuple(copies[m] for m in s.best_family)
    return s.best, IntegralTiling(family)


def check_integral_tiling(g: Graph, h: Pattern | Graph, t: IntegralTiling) -> CheckReport:
    hg = h.graph if isinstance(h, Pattern) else h
    used: set[int] = set()
    for cp in t.copies:
        emb = cp.embedding
        if len(set(emb)) != hg.n or not is_homomorphism(hg, g, emb):
            return CheckReport(False, "embedding is not an injective homomorphism", cp)
        if used & set(emb):
            return CheckReport(False, "copies overlap", cp)
        used |= set(emb)
    return CheckReport(True)


def integral_vs_fractional_gap(g: Graph, h: Pattern | Graph) -> tuple[int, Fraction]:
    integral, _ = integral_tiling_number(g, h)
    frac, _ = fractional_tiling_number(g, h)
    if integral > frac:
        raise InvariantFailure(f"integral tiling {integral} exceeds fractional {frac}")
    return integral, frac

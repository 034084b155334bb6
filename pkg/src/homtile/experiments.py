"""Sweep configurations and runners shared by the scripts and the acceptance suite."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

from .constructions import ExtremalSpec, build_extremal_graph, random_graph, standard_pattern
from .graphs import Graph, Pattern
from .homs import enumerate_columns
from .lab import audit_proof_objects, check_cover_bound
from .tiling import check_cover, check_tiling, fractional_cover_number, verify_duality


@dataclass(frozen=True)
class DualitySweepConfig:
    patterns: tuple[str, ...] = ("K2", "P3", "K3", "C4")
    probabilities: tuple[Fraction, ...] = (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4))
    n_min: int = 6
    n_max: int = 10
    seeds_per_cell: int = 17
    base_seed: int = 0
    # x values are taken as multiples of 1/(|V(H)| * x_steps), strictly below 1/|V(H)|
    x_steps: int = 4

    def instances(self) -> Iterator[tuple[str, Fraction, int, Graph]]:
        span = self.n_max - self.n_min + 1
        for pi, p in enumerate(self.probabilities):
            for i in range(self.seeds_per_cell):
                seed = self.base_seed + 1000 * pi + i
                n = self.n_min + i % span
                g = random_graph(n, p, seed)
                for name in self.patterns:
                    yield name, p, seed, g

    def x_grid(self, h: Pattern) -> list[Fraction]:
        return [Fraction(j, h.size * self.x_steps) for j in range(1, self.x_steps)]


@dataclass(frozen=True)
class ExtremalCase:
    r: int
    pattern: str
    x: Fraction
    n: int

    def build(self) -> tuple[ExtremalSpec, Pattern, Graph]:
        h = standard_pattern(self.pattern, self.r)
        spec = ExtremalSpec(self.r, h.size, h.ell_r, self.x, self.n)
        return spec, h, build_extremal_graph(spec)


EXTREMAL_CASES = (
    ExtremalCase(3, "K3", Fraction(1, 6), 12),
    ExtremalCase(3, "K3", Fraction(1, 9), 18),
    ExtremalCase(2, "K2", Fraction(1, 5), 10),
    ExtremalCase(2, "P3", Fraction(1, 6), 12),
    ExtremalCase(2, "C4", Fraction(1, 8), 16),
    ExtremalCase(3, "K_{1,1,2}", Fraction(1, 8), 16),
    ExtremalCase(4, "K4", Fraction(1, 8), 24),
)


@dataclass
class DualityRecord:
    pattern: str
    p: Fraction
    seed: int
    n: int
    tiling: Fraction
    cover: Fraction
    certificates_ok: bool
    # x -> "ok" / "violated" / "hypothesis-not-met"
    bounds: dict[Fraction, str] = field(default_factory=dict)

    @property
    def equal(self) -> bool:
        return self.tiling == self.cover


def duality_record(name: str, p: Fraction, seed: int, g: Graph, xs=()) -> DualityRecord:
    h = standard_pattern(name)
    cols = enumerate_columns(h, g)
    rep = verify_duality(g, h, cols)
    certs = bool(check_tiling(g, h, rep.tiling, cols)) and bool(check_cover(g, h, rep.cover, cols))
    rec = DualityRecord(name, p, seed, g.n, rep.tiling_value, rep.cover_value, certs)
    for x in xs:
        rec.bounds[x] = check_cover_bound(g, h, x, cover=(rep.cover_value, rep.cover)).status
    return rec


def run_duality_sweep(cfg: DualitySweepConfig = DualitySweepConfig()) -> tuple[list[DualityRecord], float]:
    t0 = time.perf_counter()
    out = []
    for name, p, seed, g in cfg.instances():
        out.append(duality_record(name, p, seed, g, cfg.x_grid(standard_pattern(name))))
    return out, time.perf_counter() - t0


@dataclass
class ExtremalRecord:
    case: ExtremalCase
    sizes: tuple[int, int, int, int]
    cover: Fraction
    xn: Fraction
    hypothesis_met: bool
    bound_status: str
    cover_certificate_ok: bool
    proof_objects_ok: bool


def run_extremal_case(case: ExtremalCase) -> ExtremalRecord:
    spec, h, g = case.build()
    bound = check_cover_bound(g, h, case.x)
    cover = bound.cover
    if cover is None:
        _, cover = fractional_cover_number(g, h)
    po = audit_proof_objects(g, h, case.x, cover)
    return ExtremalRecord(case, spec.sizes, cover.size, spec.xn, bound.status != "hypothesis-not-met",
                          bound.status, po.cover_ok, po.ok)

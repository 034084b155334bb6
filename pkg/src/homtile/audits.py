"""Computational audits of the two finite constructions."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .constructions import ExtremalSpec, build_extremal_graph, build_k333_counterexample, standard_pattern
from .graphs import Pattern, degree, degree_profile
from .homs import enumerate_injective_copies
from .lab import MedianHypothesis, check_median_hypothesis
from .tiling import IntegralTiling, integral_tiling_number


@dataclass
class ExtremalAudit:
    spec: ExtremalSpec
    copies_checked: int = 0
    bad_copy: object = None
    tiling_number: int | None = None
    tiling: IntegralTiling | None = None
    high_degree_count: int | None = None
    degree_errors: list[str] = field(default_factory=list)

    @property
    def failure(self) -> str:
        if self.bad_copy is not None:
            return f"copy on {self.bad_copy.vertices} meets V1 in fewer than {self.spec.ell_r} vertices"
        if self.tiling_number != self.spec.xn:
            return f"tiling number {self.tiling_number} != xn = {self.spec.xn}"
        s1, s2, s3, _ = self.spec.sizes
        if self.high_degree_count != s1 + s2 + s3:
            return f"{self.high_degree_count} vertices of degree >= delta, expected {s1 + s2 + s3}"
        if self.degree_errors:
            return self.degree_errors[0]
        return ""

    @property
    def ok(self) -> bool:
        return not self.failure

    def to_json(self) -> dict:
        return {"copies_checked": self.copies_checked, "tiling_number": self.tiling_number,
                "xn": str(self.spec.xn), "high_degree_count": self.high_degree_count,
                "delta": str(self.spec.delta), "ok": self.ok, "failure": self.failure}


def extremal_degree_errors(spec: ExtremalSpec, g) -> list[str]:
    """Compare every vertex degree with the closed-form degree of its part."""
    s1, s2, s3, _ = spec.sizes
    expected = {"V1": s2 + s3, "V2": s1 + s3, "S": s3}
    if spec.r > 2:
        expected["V3"] = spec.n - s3 // (spec.r - 2)
    errs = []
    for part, want in expected.items():
        for v in g.parts[part]:
            if degree(g, v) != want:
                errs.append(f"vertex {v} in {part} has degree {degree(g, v)}, expected {want}")
    return errs


def audit_extremal_tiling(spec: ExtremalSpec, h: Pattern, max_nodes: int | None = None,
                          time_budget: float | None = None) -> ExtremalAudit:
    if (h.size, h.r, h.ell_r) != (spec.h_size, spec.r, spec.ell_r):
        raise ValueError("pattern does not match the construction parameters")
    g = build_extremal_graph(spec)
    rep = ExtremalAudit(spec)
    V1 = set(g.parts["V1"])
    for cp in enumerate_injective_copies(h, g):
        rep.copies_checked += 1
        if len(V1.intersection(cp.vertices)) < spec.ell_r:
            rep.bad_copy = cp
            break
    rep.tiling_number, rep.tiling = integral_tiling_number(g, h, max_nodes=max_nodes,
                                                           time_budget=time_budget)
    rep.high_degree_count = degree_profile(g, spec.delta).count_at_or_above
    rep.degree_errors = extremal_degree_errors(spec, g)
    return rep


@dataclass
class K333Audit:
    high_degree_count: int
    required_count: Fraction
    delta: Fraction
    hypothesis_met: bool
    tiling_number: int
    tiling: IntegralTiling
    xn: Fraction

    @property
    def ok(self) -> bool:
        return self.hypothesis_met and self.tiling_number < self.xn

    def to_json(self) -> dict:
        return {"high_degree_count": self.high_degree_count, "required_count": str(self.required_count),
                "delta": str(self.delta), "hypothesis_met": self.hypothesis_met,
                "tiling_number": self.tiling_number, "tiling": self.tiling.to_json(),
                "xn": str(self.xn), "ok": self.ok}


def audit_k333(x, n: int, max_nodes: int | None = None, time_budget: float | None = None) -> K333Audit:
    """Degree count at delta and an integral K_{3,3,3}-tiling bound for the cycle example.

    The search stops as soon as ceil(xn) disjoint copies are found, so
    ``ok`` means the count condition holds while fewer than xn copies fit.
    """
    x = Fraction(x)
    h = standard_pattern("K_{3,3,3}")
    g = build_k333_counterexample(x, n)
    hyp = MedianHypothesis.for_pattern(h, x, n)
    hrep = check_median_hypothesis(g, hyp)
    xn = x * n
    target = -(-xn.numerator // xn.denominator)  # ceil
    value, tiling = integral_tiling_number(g, h, target=target, max_nodes=max_nodes,
                                           time_budget=time_budget)
    return K333Audit(hrep.high_degree_count, hyp.required_count, hyp.delta, hrep.met, value, tiling, xn)

from fractions import Fraction

import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from homtile.audits import audit_extremal_tiling, extremal_degree_errors
from homtile.constructions import (
    ExtremalSpec,
    SpecError,
    blow_up,
    build_extremal_graph,
    build_k333_counterexample,
    complete_graph,
    complete_multipartite,
    k333_sizes,
    named_graph,
    random_graph,
    standard_pattern,
    suggest_parameters,
)
from homtile.graphs import degree, degree_profile
from . import strategies

F = Fraction


def test_extremal_sizes_r3():
    spec = ExtremalSpec(3, 3, 1, F(1, 6), 12)
    assert spec.sizes == (2, 2, 5, 3)
    assert spec.delta == 7 and spec.xn == 2


def test_extremal_r2_is_k22_plus_isolated():
    g = build_extremal_graph(ExtremalSpec(2, 2, 1, F(1, 5), 10))
    assert tuple(len(g.parts[k]) for k in ("V1", "V2", "V3", "S")) == (2, 2, 0, 6)
    assert len(g.edges) == 4
    assert sum(1 for v in range(10) if degree(g, v) == 0) == 6


def test_extremal_v2_degree_example():
    g = build_extremal_graph(ExtremalSpec(3, 3, 1, F(1, 6), 12))
    assert {degree(g, v) for v in g.parts["V2"]} == {7}
    assert degree_profile(g, 7).count_at_or_above == 9


@pytest.mark.parametrize("args", [
    (3, 3, 1, F(1, 7), 12),   # non-integral parts
    (3, 3, 1, F(1, 3), 12),   # x not below 1/|V(H)|
    (4, 4, 1, F(1, 8), 20),   # |V3| not divisible by r - 2
])
def test_spec_errors(args):
    with pytest.raises(SpecError):
        ExtremalSpec(*args).sizes


def test_spec_error_names_part():
    with pytest.raises(SpecError, match=r"\|V1\|"):
        ExtremalSpec(3, 3, 1, F(1, 7), 12).sizes


def test_suggestions_are_valid():
    for x, n in suggest_parameters(3, 3, 1, F(1, 7), 12):
        assert sum(ExtremalSpec(3, 3, 1, x, n).sizes) == n


@st.composite
def extremal_specs(draw):
    r = draw(st.integers(2, 4))
    ell = draw(st.integers(1, 2))
    k = draw(st.integers(r * ell, r * ell + 2))
    q = draw(st.integers(k + 1, 3 * k))
    x = F(1, q)
    # the smallest n making every part integral
    n = 1
    while True:
        try:
            ExtremalSpec(r, k, ell, x, n).sizes
            break
        except SpecError:
            n += 1
    return ExtremalSpec(r, k, ell, x, n)


@settings(max_examples=40, deadline=None)
@given(extremal_specs())
def test_extremal_structure(spec):
    g = build_extremal_graph(spec)
    s1, s2, s3, ss = spec.sizes
    assert s1 + s2 + s3 + ss == spec.n
    parts = [set(g.parts[k]) for k in ("V1", "V2", "V3", "S")]
    assert set().union(*parts) == set(range(spec.n)) and sum(map(len, parts)) == spec.n
    assert extremal_degree_errors(spec, g) == []
    assert degree_profile(g, spec.delta).count_at_or_above == s1 + s2 + s3
    V1, V2, V3, S = parts
    for u, v in g.edges:
        assert u in V3 or v in V3 or {u, v} <= V1 | V2 and not ({u, v} <= V1 or {u, v} <= V2)


def test_extremal_audit_k3():
    spec = ExtremalSpec(3, 3, 1, F(1, 6), 12)
    rep = audit_extremal_tiling(spec, standard_pattern("K3"))
    assert rep.ok and rep.tiling_number == 2 and rep.high_degree_count == 9


def test_extremal_audit_rejects_mismatched_pattern():
    with pytest.raises(ValueError):
        audit_extremal_tiling(ExtremalSpec(3, 3, 1, F(1, 6), 12), standard_pattern("K2"))


# --- K_{3,3,3} example ---------------------------------------------------------

def test_k333_sizes_and_degrees():
    assert k333_sizes(F(1, 10), 20) == (4, 8, 7, 1)
    g = build_k333_counterexample(F(1, 10), 20)
    per_part = {k: {degree(g, v) for v in g.parts[k]} for k in ("V1", "V2", "V3", "V4")}
    assert per_part == {"V1": {15}, "V2": {13}, "V3": {13}, "V4": {7}}
    assert degree_profile(g, 13).count_at_or_above == 19


def test_k333_cycle_on_v2():
    g = build_k333_counterexample(F(1, 10), 20)
    v2 = g.parts["V2"]
    inside = [e for e in g.edges if e[0] in v2 and e[1] in v2]
    assert len(inside) == len(v2)
    assert all(len(g.neighbours(v) & set(v2)) == 2 for v in v2)


def test_k333_rejects_bad_sizes():
    with pytest.raises(SpecError):
        k333_sizes(F(1, 10), 21)


# --- blow-ups --------------------------------------------------------------------

def test_blow_up_examples():
    k2 = complete_graph(2)
    assert blow_up(k2, 3) == complete_multipartite([3, 3])
    assert blow_up(k2, 1) == k2
    with pytest.raises(ValueError):
        blow_up(k2, 0)


@settings(max_examples=40)
@given(strategies.graphs(max_n=6), st.integers(1, 3))
def test_blow_up_counts(g, s):
    b = blow_up(g, s)
    assert b.n == g.n * s
    assert len(b.edges) == s * s * len(g.edges)
    for v in range(b.n):
        assert degree(b, v) == s * degree(g, v // s)


@settings(max_examples=30)
@given(strategies.graphs(max_n=6), st.integers(1, 3), st.integers(1, 3))
def test_blow_up_composes(g, a, b):
    # clone j of clone i of v is vertex (v*a + i)*b + j = v*ab + (i*b + j), so equality is exact
    assert blow_up(blow_up(g, a), b) == blow_up(g, a * b)


# --- patterns and random hosts -------------------------------------------------

@pytest.mark.parametrize("name,n,edges", [
    ("K3", 3, 3), ("K_3", 3, 3), ("K_{3,3,3}", 9, 27), ("K_3,3,3", 9, 27), ("P4", 4, 3), ("C_5", 5, 5),
])
def test_named_graphs(name, n, edges):
    g = named_graph(name)
    assert (g.n, len(g.edges)) == (n, edges)


@pytest.mark.parametrize("name", ["Q3", "K_{0}", "P_{2,3}", ""])
def test_unknown_names(name):
    with pytest.raises(ValueError):
        named_graph(name)


def test_standard_pattern_k333():
    pat = standard_pattern("K_3,3,3")
    assert pat.size == 9 and pat.class_sizes == (3, 3, 3)


def test_random_graph_edge_cases():
    assert random_graph(8, 1, 123) == complete_graph(8)
    assert not random_graph(8, 0, 123).edges
    with pytest.raises(ValueError):
        random_graph(4, F(3, 2), 0)


@given(st.integers(0, 12), strategies.probabilities, st.integers(0, 10**6))
def test_random_graph_is_deterministic(n, p, seed):
    assert random_graph(n, p, seed) == random_graph(n, p, seed)

from fractions import Fraction

import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from homtile.constructions import (
    ExtremalSpec,
    build_extremal_graph,
    build_k333_counterexample,
    complete_graph,
    cycle_graph,
    path_graph,
    standard_pattern,
)
from homtile.graphs import Graph, degree_profile
from homtile.lab import (
    CollapseError,
    MedianHypothesis,
    MinCoverClique,
    audit_proof_objects,
    brute_force_min_cover_clique,
    check_collapsed_constraint,
    check_cover_bound,
    check_median_hypothesis,
    greedy_clique_in_L,
    intersection_bound,
    min_cover_clique,
)
from homtile.tiling import FractionalCover, fractional_cover_number
from . import strategies

F = Fraction


def test_hypothesis_quantities():
    hyp = MedianHypothesis.for_pattern(standard_pattern("K_{3,3,3}"), F(1, 10), 20)
    assert hyp.delta == 13 and hyp.required_count == 19


def test_hypothesis_examples():
    k333 = standard_pattern("K_{3,3,3}")
    rep = check_median_hypothesis(build_k333_counterexample(F(1, 10), 20),
                                  MedianHypothesis.for_pattern(k333, F(1, 10), 20))
    assert rep.met and rep.high_degree_count == 19 == rep.required
    empty = Graph.from_edges(9, [])
    assert not check_median_hypothesis(empty, MedianHypothesis.for_pattern(standard_pattern("K3"), F(1, 9), 9))
    assert check_median_hypothesis(complete_graph(9), MedianHypothesis.for_pattern(standard_pattern("K3"), F(1, 9), 9))


def test_hypothesis_validation():
    with pytest.raises(ValueError):
        MedianHypothesis(3, F(1, 3), 1, 3, 12)
    with pytest.raises(ValueError):
        MedianHypothesis(3, F(1, 6), 1, 3, 12, eta=F(-1))
    with pytest.raises(ValueError):
        check_median_hypothesis(complete_graph(4), MedianHypothesis(3, F(1, 6), 1, 3, 12))


def test_eta_scales_both_sides():
    g = complete_graph(9)
    hyp = MedianHypothesis(3, F(1, 9), 1, 3, 9, eta=F(1, 2))
    rep = check_median_hypothesis(g, hyp)
    assert rep.threshold == F(3, 2) * hyp.delta and rep.required == F(3, 2) * hyp.required_count


def test_cover_bound_examples():
    k3 = standard_pattern("K3")
    g = build_extremal_graph(ExtremalSpec(3, 3, 1, F(1, 6), 12))
    rep = check_cover_bound(g, k3, F(1, 6))
    assert rep.status == "ok" and rep.cover_value == 2 and rep.slack == 0
    rep = check_cover_bound(complete_graph(9), k3, F(1, 9))
    assert rep.status == "ok" and rep.cover_value >= 1
    assert check_cover_bound(Graph.from_edges(9, []), k3, F(1, 9)).status == "hypothesis-not-met"


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["K2", "P3", "K3", "C4"]), strategies.graphs(min_n=4, max_n=8), st.integers(1, 3))
def test_cover_bound_never_violated(name, g, j):
    h = standard_pattern(name)
    x = F(j, 4 * h.size)
    assert check_cover_bound(g, h, x).status != "violated"


# --- greedy clique ---------------------------------------------------------------

def test_greedy_on_k4():
    w = greedy_clique_in_L(complete_graph(4), 3, 3)
    assert w.vertices == (0, 1)
    assert w.common_nbhd_L | w.common_nbhd_S == {2, 3}


def test_greedy_on_extremal_instance():
    spec = ExtremalSpec(3, 3, 1, F(1, 6), 12)
    g = build_extremal_graph(spec)
    w = greedy_clique_in_L(g, spec.delta, 3)
    assert w
    assert len(w.common_nbhd_L) + len(w.common_nbhd_S) >= spec.xn
    assert all(v in w.L for v in w.vertices)


def test_greedy_on_c5_fails():
    # C5 has no triangle: the clique {0, 1} has no common neighbour
    res = greedy_clique_in_L(cycle_graph(5), 2, 3)
    assert not res
    assert res.step == 2 and res.vertices == (0, 1)


def test_greedy_fails_without_l():
    res = greedy_clique_in_L(path_graph(3), 5, 3)
    assert not res and res.step == 0


@settings(max_examples=60, deadline=None)
@given(strategies.graphs(min_n=1, max_n=8), st.integers(2, 4),
       st.fractions(min_value=0, max_value=7, max_denominator=3))
def test_greedy_witness_invariants(g, r, delta):
    res = greedy_clique_in_L(g, delta, r)
    if not res:
        return
    prof = degree_profile(g, delta)
    vs = res.vertices
    assert len(vs) == r - 1 and set(vs) <= prof.L
    assert all(g.has_edge(a, b) for i, a in enumerate(vs) for b in vs[i + 1:])
    for u in res.common_nbhd_L | res.common_nbhd_S:
        assert all(g.has_edge(u, v) for v in vs)
    assert res.common_nbhd_L <= prof.L and res.common_nbhd_S <= prof.S
    for i, s in enumerate(res.step_sizes, start=1):
        assert s >= intersection_bound(delta, g.n, i)


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(["K3", "K4", "C5", "K_{1,1,2}"]), strategies.graphs(min_n=4, max_n=9),
       st.integers(1, 3))
def test_greedy_never_stalls_early_under_the_hypothesis(name, g, j):
    h = standard_pattern(name)
    hyp = MedianHypothesis.for_pattern(h, F(j, 4 * h.size), g.n)
    if not check_median_hypothesis(g, hyp):
        return
    res = greedy_clique_in_L(g, hyp.delta, h.r)
    if not res:
        assert res.step >= h.r - 1
        return
    final = res.step_sizes[-1]
    bound = intersection_bound(hyp.delta, g.n, h.r - 1)
    if bound > 0:
        assert final >= bound


# --- min-cover clique ------------------------------------------------------------

def test_min_cover_clique_symmetric():
    c = [F(1, 3)] * 4
    mc = min_cover_clique(complete_graph(4), 3, 3, c)
    assert mc.alphas == (F(1, 3), F(1, 3)) and mc.alpha_L == F(1, 3)
    assert mc.alpha_chain_holds()


def test_min_cover_clique_missing():
    res = min_cover_clique(Graph.from_edges(4, []), 0, 3, [F(0)] * 4)
    assert not res


def test_alpha_defaults_to_one_when_no_neighbour():
    g = complete_graph(2)
    mc = min_cover_clique(g, 1, 3, [F(1, 2), F(1, 2)])
    assert mc.u is None and mc.w is None and mc.alpha_r == 1
    assert check_collapsed_constraint(standard_pattern("K3"), g, mc, [F(1, 2)] * 2).vacuous


@settings(max_examples=60, deadline=None)
@given(strategies.graphs(min_n=1, max_n=10), st.integers(2, 4),
       st.fractions(min_value=0, max_value=6, max_denominator=2), st.data())
def test_min_cover_clique_matches_brute_force(g, r, delta, data):
    c = [data.draw(st.fractions(min_value=0, max_value=1, max_denominator=4)) for _ in range(g.n)]
    mc = min_cover_clique(g, delta, r, c)
    expect = brute_force_min_cover_clique(g, delta, r, c)
    if expect is None:
        assert not mc
        return
    assert mc.witness.vertices == expect
    # swapping v_{r-1} for u would give a lexicographically smaller clique, so the chain always holds
    assert mc.alpha_chain_holds()


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(["K2", "P3", "K3", "C5"]), strategies.graphs(min_n=3, max_n=7),
       st.fractions(min_value=0, max_value=5, max_denominator=2))
def test_collapsed_constraint_holds_for_optimal_covers(name, g, delta):
    h = standard_pattern(name)
    _, cover = fractional_cover_number(g, h)
    mc = min_cover_clique(g, delta, h.r, cover)
    if not mc:
        return
    rep = check_collapsed_constraint(h, g, mc, cover)
    assert rep.vacuous or rep.holds


def test_collapsed_constraint_k3_on_k4():
    c = [F(1, 3)] * 4
    mc = min_cover_clique(complete_graph(4), 3, 3, c)
    rep = check_collapsed_constraint(standard_pattern("K3"), complete_graph(4), mc, c)
    assert rep.total == 1 and rep.holds
    assert sorted(rep.mapping) == [0, 1, 2]


def test_collapsed_constraint_k333():
    g = complete_graph(4)
    c = [F(1, 9)] * 4
    mc = min_cover_clique(g, 3, 3, c)
    h = standard_pattern("K_{3,3,3}")
    rep = check_collapsed_constraint(h, g, mc, c)
    assert sorted(rep.mapping.count(v) for v in set(rep.mapping)) == [3, 3, 3]
    assert rep.total == 1


def test_collapsed_constraint_p3():
    g = path_graph(3)
    c = [F(1, 2), F(1, 4), F(1, 2)]
    mc = min_cover_clique(g, 1, 2, c)
    h = standard_pattern("P3")
    rep = check_collapsed_constraint(h, g, mc, c)
    assert h.class_sizes == (2, 1)
    assert rep.total == 2 * mc.alphas[0] + mc.alpha_r


def test_collapse_error_on_corrupt_witness():
    g = path_graph(3)
    c = [F(1, 3)] * 3
    mc = min_cover_clique(g, 1, 2, c)
    # point u at a vertex that is not adjacent to the clique
    bad = MinCoverClique(mc.witness, mc.alphas, mc.witness.vertices[0], None, mc.alpha_L, F(1))
    with pytest.raises(CollapseError):
        check_collapsed_constraint(standard_pattern("P3"), g, bad, c)


def test_proof_objects_on_extremal_instance():
    spec = ExtremalSpec(3, 3, 1, F(1, 6), 12)
    g = build_extremal_graph(spec)
    h = standard_pattern("K3")
    _, cover = fractional_cover_number(g, h)
    rep = audit_proof_objects(g, h, spec.x, cover)
    assert rep.ok
    assert rep.collapsed.total >= 1
    assert isinstance(cover, FractionalCover)

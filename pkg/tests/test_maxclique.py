from hypothesis import given, settings, strategies as st

from cliquefam import graph as gc
from cliquefam.maxclique import degeneracy_order, max_clique

from oracles import graphs, naive_cliques


def brute_omega(g):
    return max((r for r in range(g.n + 1) if naive_cliques(g, r)), default=0)


@given(graphs(max_n=10))
@settings(max_examples=200, deadline=None)
def test_matches_brute_force(g):
    res = max_clique(g.adj, g.n)
    assert res.exhaustive
    assert len(res.members) == brute_omega(g)
    assert g.is_clique(res.members)


@given(graphs(max_n=9), st.integers(0, 5))
@settings(max_examples=100, deadline=None)
def test_lower_bound_only_reports_larger(g, lb):
    res = max_clique(g.adj, g.n, lower_bound=lb)
    omega = brute_omega(g)
    assert len(res.members) == (omega if omega > lb else 0)


def test_on_improve_sees_increasing_incumbents():
    g = gc.turan(12, 4)
    seen = []
    res = max_clique(g.adj, g.n, on_improve=lambda m: seen.append(list(m)))
    assert len(res.members) == 4
    assert [len(s) for s in seen] == sorted(len(s) for s in seen)
    assert all(g.is_clique(s) for s in seen)


def test_budget():
    g = gc.turan(30, 10)
    res = max_clique(g.adj, g.n, budget=3)
    assert not res.exhaustive


def test_degeneracy_order_is_permutation():
    g = gc.hm_extremal(10, 4, 1)
    order = degeneracy_order(g.adj, g.n)
    assert sorted(order) == list(range(g.n))

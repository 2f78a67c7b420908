from itertools import combinations

from hypothesis import strategies as st

from cliquefam.graph import Graph


def naive_cliques(g, r):
    """Sorted r-subsets that are cliques, by testing every pair."""
    return [S for S in combinations(range(g.n), r)
            if all(g.has_edge(u, v) for u, v in combinations(S, 2))]


@st.composite
def graphs(draw, max_n=8, min_n=0):
    n = draw(st.integers(min_n, max_n))
    pairs = list(combinations(range(n), 2))
    flags = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [p for p, f in zip(pairs, flags) if f])


@st.composite
def families(draw, max_n=8, r=None, max_m=12):
    n = draw(st.integers(1, max_n))
    rr = r if r is not None else draw(st.integers(1, n))
    if rr > n:
        n = rr
    subsets = st.lists(st.integers(0, n - 1), min_size=rr, max_size=rr, unique=True)
    from cliquefam.cliques import SetFamily
    sets = draw(st.lists(subsets, max_size=max_m, unique_by=lambda s: tuple(sorted(s))))
    return SetFamily.from_sets(n, rr, sets)

from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from cliquefam import graph as gc
from cliquefam.cliques import SetFamily, associated_r_graph, count_cliques
from cliquefam.graph import Graph, mask_of
from cliquefam.structure import (
    Partition,
    atoms,
    atoms_brute_force,
    check_furedi_properties,
    core_collection,
    cover_families,
    high_degree_vertices,
    hm_decomposition,
    max_sunflower_with_core,
    prune_low_degree,
    quotient_graph,
    verify_quotient_claims,
)

from oracles import families, graphs


def fam(n, r, sets):
    return SetFamily.from_sets(n, r, sets)


def brute_sunflower(F, core):
    cands = [set(a) for a in F.sets() if core <= set(a)]
    best = 0
    for k in range(len(cands), 0, -1):
        for combo in combinations(cands, k):
            if all(a & b == core for a, b in combinations(combo, 2)):
                return k
    return best


def test_sunflower_examples():
    assert len(max_sunflower_with_core(fam(7, 3, [(0, 1, 2), (0, 3, 4), (0, 5, 6)]), [0])) == 3
    F = fam(4, 3, [(0, 1, 2), (0, 1, 3), (0, 2, 3)])
    assert len(max_sunflower_with_core(F, [0])) == 1 == brute_sunflower(F, {0})
    assert len(max_sunflower_with_core(F, [1, 2, 3])) == 0


@given(families(max_n=8, max_m=14), st.data())
@settings(max_examples=150, deadline=None)
def test_sunflower_matches_exhaustive(F, data):
    core = set(data.draw(st.sets(st.integers(0, F.ground_n - 1), max_size=2)))
    res = max_sunflower_with_core(F, core)
    cm = mask_of(core)
    for p in res.petals:
        assert p & cm == cm
    for a, b in combinations(res.petals, 2):
        assert a & b == cm
    assert len(res) == brute_sunflower(F, core)


def test_high_degree_examples():
    F = fam(6, 2, [(0, 1), (1, 2)])
    assert high_degree_vertices(F, 0) == 0b111111
    assert high_degree_vertices(F, 1) == 0b111
    H = associated_r_graph(gc.join(gc.complete(1), gc.turan(12, 2)), 3)
    assert H.degree(0) == 36 and H.degree(1) == 6
    assert high_degree_vertices(H, 9) == 0b1


def test_core_collection_examples():
    g = gc.join(gc.complete(1), gc.disjoint_copies(9, gc.complete(2)))
    H = associated_r_graph(g, 3)
    assert core_collection(H, 1, 9) == [0b1]
    F = fam(5, 3, [(0, 1, 2), (2, 3, 4)])
    want = sorted({mask_of(c) for a in F.sets() for c in combinations(a, 2)}, key=lambda m: [i for i in range(5) if m >> i & 1])
    assert core_collection(F, 2, 1) == want
    assert core_collection(fam(5, 3, []), 1, 1) == []


def test_prune_examples():
    for r in (3, 4):
        res = prune_low_degree(gc.complete(r), r, 2)
        assert res.graph.n == 0 and res.deleted == tuple(range(r))
        res = prune_low_degree(gc.complete(r), r, 1)
        assert res.graph == gc.complete(r) and res.deleted == ()
    g = gc.extremal_ap(8, 4, (0, 2))
    assert prune_low_degree(g, 4, 2).graph == g


@given(graphs(max_n=8), st.integers(1, 4), st.integers(0, 5))
@settings(max_examples=150, deadline=None)
def test_prune_invariants(g, r, threshold):
    res = prune_low_degree(g, r, threshold)
    h = res.graph
    H = associated_r_graph(h, r) if h.n else None
    for v in range(h.n):
        assert H.degree(v) >= threshold
    assert count_cliques(g, r) <= count_cliques(h, r) + threshold * len(res.deleted)
    assert sorted(res.kept + res.deleted) == list(range(g.n))


def test_quotient_examples():
    g = gc.extremal_ap(8, 4, (0, 2))
    cells = atoms(associated_r_graph(g, 4), 2).atoms
    q = quotient_graph(g, 4, cells)
    c4 = Graph.from_edges(4, [(0, 1), (1, 3), (3, 2), (2, 0)])
    assert q == c4 or sorted(q.degree(v) for v in range(4)) == [2, 2, 2, 2]
    assert count_cliques(q, 2) == 4 == count_cliques(g, 4)
    assert verify_quotient_claims(g, 4, 2, cells).claims == (True, True, True)
    assert quotient_graph(g, 4, [[0, 1]]).n == 1
    assert quotient_graph(gc.turan(6, 2), 3, [[0], [1], [2]]).num_edges == 0


def test_quotient_claim_edge_cases():
    rep = verify_quotient_claims(gc.complete(4), 4, 1, [[0], [1], [2], [3]])
    assert rep.ell_divides_r and rep.claims == (True, True, True)
    rep = verify_quotient_claims(gc.complete(5), 4, 1, [[v] for v in range(5)])
    assert rep.claims[2] is False and "c" in rep.witnesses
    with pytest.raises(ValueError):
        verify_quotient_claims(gc.complete(4), 4, 2, [[0, 1], [2]])


def test_atoms_examples():
    H = associated_r_graph(gc.blown_turan(4, 2, 2), 4)
    at = atoms(H, 2)
    assert at.atoms.sets() == [[0, 1], [2, 3], [4, 5], [6, 7]] and at.x0 == 0
    at = atoms(fam(5, 3, []), 1)
    assert at.atoms.sets() == [[0, 1, 2, 3, 4]]
    at = atoms(fam(5, 3, [(0, 1, 2)]), 2)
    assert at.atoms.sets() == [[0, 1, 2], [3, 4]]
    assert atoms_brute_force(fam(5, 3, [(0, 1, 2)]), 2) == [0b111, 0b11000]


@given(families(max_n=10, max_m=8), st.integers(1, 3))
@settings(max_examples=100, deadline=None)
def test_atoms_match_brute_force(F, d):
    at = atoms(F, d)
    assert list(at.atoms.cells) == atoms_brute_force(F, d)
    x1 = at.x1
    for e in F.edges:
        covered = 0
        for c in at.atoms.cells:
            if c & e:
                assert c & e == c
                covered |= c
        assert e & x1 == covered
        assert e & ~x1 & ~at.x0 == 0


def test_partition_validation():
    with pytest.raises(ValueError):
        Partition(4, (0b11, 0b110))
    with pytest.raises(ValueError):
        Partition(2, (0b100,))


def test_furedi_disjoint_edges():
    r = 3
    F = fam((r + 2) * r, r, [range(i * r, i * r + r) for i in range(r + 2)])
    rep = check_furedi_properties(F, [0, 1])
    assert all(v["holds"] for v in rep["proper"].values())
    # the literal reading puts F itself into I(F)
    assert not rep["literal"]["ii"]["holds"] and not rep["literal"]["iv"]["holds"]


def test_furedi_singleton():
    rep = check_furedi_properties(fam(4, 3, [(0, 1, 2)]), [0])
    assert not rep["literal"]["ii"]["holds"]
    assert rep["literal"]["ii"]["witness"] == [0, 1, 2]


def test_furedi_closed_under_intersection():
    g = gc.extremal_ap(16, 4, (0, 2))
    H = associated_r_graph(g, 4)
    at = atoms(H, 2).atoms.cells[0]
    through = SetFamily(H.ground_n, 4, tuple(a for a in H.edges if a & at == at))
    assert len(through) == 4
    rep = check_furedi_properties(through, [0, 2])
    assert rep["proper"]["iii"]["holds"] and rep["literal"]["iii"]["holds"]
    assert rep["proper"]["i"]["holds"]


def test_cover_families_hm():
    g = gc.hm_extremal(9, 3, 1)
    cf = cover_families(g, 3, 1, threshold=3)
    assert cf.t_heavy == [0b011, 0b101, 0b110]
    assert all(cf.degrees[T] == 7 for T in cf.t_heavy)
    # T'_j members contain no member of a smaller T_k
    for j, members in cf.t_j_min.items():
        for T in members:
            for k in range(1, j):
                assert not any(s & T == s for s in cf.t_j.get(k, []))


def test_cover_families_trivial_and_empty():
    n, r, t = 9, 4, 2
    cf = cover_families(gc.join(gc.complete(t), gc.turan(n - t, r - t)), r, t)
    assert cf.t_j[t] == [0b11]
    cf = cover_families(gc.turan(6, 2), 3, 1)
    assert all(not v for v in cf.t_j.values()) and cf.t_heavy == []
    assert cover_families(gc.complete(5), 3, 1).threshold == Fraction(3, 1)


@given(graphs(max_n=7), st.integers(2, 4), st.integers(1, 2))
@settings(max_examples=80, deadline=None)
def test_cover_families_upward_closed(g, r, t):
    if t >= r:
        return
    H = associated_r_graph(g, r)
    from cliquefam.intersect import is_t_intersecting
    if not is_t_intersecting(H, t):
        return
    cf = cover_families(g, r, t)
    for j in range(t, r):
        for T in cf.t_j[j]:
            for a in H.edges:
                if a & T != T:
                    continue
                for v in range(g.n):
                    if a >> v & 1 and not T >> v & 1:
                        assert T | 1 << v in cf.t_j[j + 1]


def test_hm_decomposition_examples():
    dec = hm_decomposition(gc.hm_extremal(9, 4, 1), 4, 1, [0, 1, 2])
    assert dec.clique_count == dec.bound == 33 and dec.equality
    assert all(dec.parts_free.values())
    dec = hm_decomposition(gc.hm_extremal(9, 3, 1), 3, 1, [0, 1, 2])
    assert dec.clique_count == 19 == 1 + 3 * 6 and dec.equality
    g = gc.disjoint_union(gc.hm_extremal(9, 3, 1), gc.complete(3))
    dec = hm_decomposition(g, 3, 1, [0, 1, 2])
    assert not dec.inequality_holds and dec.witness == [9, 10, 11]
    with pytest.raises(ValueError):
        hm_decomposition(gc.turan(6, 2), 3, 1, [0, 1, 2])

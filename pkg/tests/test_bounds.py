import random
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from cliquefam import graph as gc
from cliquefam.bounds import (
    AP,
    NOT_AP_LAST_GAP_DIFFERS,
    NOT_AP_LAST_GAP_EQUAL,
    all_bounds,
    ap_exact_value,
    best_recursive_bound,
    classify_ap,
    def_bound,
    ekr_value,
    family_mod_q_ok,
    find_prime_power,
    helliar_liu_bound,
    hm_value,
    is_prime_power,
    mod_q_applicable,
    mod_q_bound,
    recursive_bound,
)
from cliquefam.cliques import SetFamily, count_cliques
from cliquefam.search import exact_phi, exact_psi


def test_classify_examples():
    c = classify_ap(4, (0, 2))
    assert c.kind == AP and c.d == 2 and c.flagged is None
    assert classify_ap(3, (0, 1)).kind == NOT_AP_LAST_GAP_DIFFERS
    assert classify_ap(4, (0, 2, 3)).kind == NOT_AP_LAST_GAP_EQUAL


def test_classify_flags_edge_sizes():
    assert classify_ap(5, (2,)).flagged
    assert classify_ap(3, (0, 1, 2)).flagged and classify_ap(3, (0, 1, 2)).d == 1


def test_classify_ekr_is_ap_one():
    for r in range(2, 11):
        for t in range(1, r):
            c = classify_ap(r, range(t, r))
            assert c.is_ap and c.d == 1


def test_def_bound_examples():
    assert def_bound(10, 3, (1, 2)).value == 36 == comb(9, 2)
    assert def_bound(10, 3, ()).value == 1
    assert def_bound(10, 4, (0, 2)).value == Fraction(10, 4) * Fraction(8, 2) == 10
    assert "not satisfied" in def_bound(10, 3, (1, 2)).applicability
    assert "satisfied" in def_bound(216, 3, (1, 2)).applicability


def test_def_bound_ekr_grid():
    for r in range(1, 9):
        for t in range(0, r):
            for n in range(t, 41):
                v = def_bound(n, r, range(t, r)).value
                assert isinstance(v, Fraction) and v == comb(n - t, r - t)


def test_helliar_liu_examples():
    assert helliar_liu_bound(10, 3, (1, 2)).value == 32
    with pytest.raises(ValueError):
        helliar_liu_bound(10, 3, (1,))
    with pytest.raises(ValueError):
        helliar_liu_bound(10, 3, (0, 1, 2))
    n = 6**4
    assert helliar_liu_bound(n, 3, (0, 1)).value == Fraction(8, 9) * Fraction(n, 3) * Fraction(n - 1, 2)


@given(st.integers(3, 8), st.data())
@settings(max_examples=200, deadline=None)
def test_helliar_liu_below_def(r, data):
    L = sorted(data.draw(st.sets(st.integers(0, r - 1), min_size=2, max_size=r - 1)))
    n = data.draw(st.integers(r, 60))
    d = def_bound(n, r, L).value
    if d > 0:
        assert helliar_liu_bound(n, r, L).value < d


def test_ap_exact_value_examples():
    assert ap_exact_value(8, 4, (0, 2)).value == 4 == count_cliques(gc.extremal_ap(8, 4, (0, 2)), 4)
    assert ap_exact_value(9, 5, (1, 3)).value == 4 == count_cliques(gc.extremal_ap(9, 5, (1, 3)), 5)
    for n, r, t in [(10, 4, 1), (12, 5, 2), (9, 3, 2)]:
        assert ap_exact_value(n, r, range(t, r)).value == ekr_value(n, r, t).value
        assert ekr_value(n, r, t).value == count_cliques(gc.turan(n - t, r - t), r - t)
    with pytest.raises(ValueError):
        ap_exact_value(10, 3, (0, 1))


def test_hm_value_examples():
    assert hm_value(9, 3, 1).value == 19
    assert hm_value(9, 4, 1).value == 33
    # r = t + 2 uses N(K_0) = 1
    assert hm_value(10, 3, 1).value == 1 + 3 * 7 == count_cliques(gc.hm_extremal(10, 3, 1), 3)


def test_hm_value_grid():
    for r in range(3, 7):
        for t in range(1, r - 1):
            for n in range(t + 2, 15):
                assert hm_value(n, r, t).value == count_cliques(gc.hm_extremal(n, r, t), r)


def test_recursive_bound_shape_with_exact_oracles():
    calls = []

    def phi(n, r, L):
        calls.append(("phi", n, r, L))
        return exact_phi(n, r, L).value if L else 1

    def psi(n, r, L):
        calls.append(("psi", n, r, L))
        return exact_psi(n, r, L).value

    rep = recursive_bound(8, 4, (0, 2), 2, 1, phi, psi)
    assert calls == [("phi", 8, 4, (0,)), ("phi", 8, 2, (0,)), ("psi", 6, 2, (0,))]
    # {0}-intersecting means pairwise disjoint: floor(n/r) sets, floor(n/r) cliques
    assert rep.value == max(8 // 4, (8 // 2) * (6 // 2)) == 12
    assert rep.value >= exact_psi(8, 4, (0, 2)).value
    assert recursive_bound(8, 4, (0, 2), 2, 3, phi, psi).value == 4


def test_recursive_bound_degenerate_index():
    rep = recursive_bound(8, 4, (0, 2), 1, 1, lambda n, r, L: 5, lambda n, r, L: 7 if L == (0, 2) else 0)
    assert rep.flags and rep.value == 7
    zero = recursive_bound(8, 4, (1, 2), 1, 1, lambda *a: 0, lambda *a: 0)
    assert zero.value == 0
    with pytest.raises(ValueError):
        recursive_bound(8, 4, (1, 2), 3, 1, lambda *a: 0, lambda *a: 0)
    with pytest.raises(ValueError):
        recursive_bound(8, 4, (1, 2), 1, 0, lambda *a: 0, lambda *a: 0)


def test_best_recursive_bound_takes_minimum():
    phi = lambda n, r, L: len(L) + 1
    psi = lambda n, r, L: 2
    reps = [recursive_bound(9, 4, (0, 1, 2), i, 1, phi, psi).value for i in (1, 2, 3)]
    assert best_recursive_bound(9, 4, (0, 1, 2), 1, phi, psi).value == min(reps)


def test_find_prime_power_examples():
    assert find_prime_power(2, 3) == 3
    assert find_prime_power(1, 4) == 4
    assert find_prime_power(3, 4) == 4


def test_find_prime_power_random_pairs():
    rng = random.Random(11)
    for _ in range(1000):
        l3 = rng.randint(2, 5000)
        l2 = rng.randint(1, l3 - 1)
        if l3 == 2 * l2:
            continue
        q = find_prime_power(l2, l3)
        assert q is not None and is_prime_power(q) and l3 % q == 0 and (2 * l2) % q


def test_prime_powers():
    assert [q for q in range(30) if is_prime_power(q)] == [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29]


def test_mod_q_examples():
    assert mod_q_applicable(3, 4, (0, 2))
    assert not mod_q_applicable(2, 4, (0, 1))
    with pytest.raises(ValueError):
        mod_q_applicable(6, 4, (0, 1))
    F = SetFamily.from_sets(9, 3, [(0, 1, 2), (3, 4, 5), (6, 7, 8)])
    assert family_mod_q_ok(F, 5, (0, 3))
    assert mod_q_bound(9) == 36


def test_all_bounds_table():
    rows = {row["name"]: row for row in all_bounds(10, 3, (1, 2))}
    assert rows["def_bound"]["value"] == "36"
    assert rows["classify_ap"]["value"] == "AP(1)"
    assert rows["hm_value"]["value"] == str(hm_value(10, 3, 1).value)
    rows = {row["name"]: row for row in all_bounds(9, 4, (0, 2, 3))}
    assert rows["growth"]["value"] is None
    assert rows["mod_q_family_bound"]["value"] == "36"
    rows = {row["name"]: row for row in all_bounds(9, 4, (2,))}
    assert rows["helliar_liu_bound"]["flags"] == ["not applicable"]

"""Reproducible acceptance checks; driven by ``cliquefam repro`` and the test suite."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Callable

from . import graph as gc
from .bounds import (
    ap_exact_value,
    classify_ap,
    family_mod_q_ok,
    find_prime_power,
    hm_value,
    is_prime_power,
    mod_q_applicable,
)
from .canon import canonical_form
from .cliques import associated_r_graph, count_cliques, turan_clique_count
from .graph import Graph
from .intersect import (
    IntersectSpec,
    common_intersection,
    is_L_intersecting,
    is_nontrivial_t_intersecting,
    is_t_intersecting,
)
from .search import exact_phi, exact_psi
from .structure import (
    atoms,
    atoms_brute_force,
    cover_families,
    hm_decomposition,
    quotient_graph,
    verify_quotient_claims,
)

DEFAULT_SEED = 20240601


def ap_grid(r_max: int = 6, n_max: int = 14, r_min: int = 1):
    """All (n, r, L) with L + {r} an arithmetic progression and r <= n <= n_max."""
    for r in range(r_min, r_max + 1):
        for s in range(1, r + 1):
            for L in combinations(range(r), s):
                if classify_ap(r, L).is_ap:
                    for n in range(r, n_max + 1):
                        yield n, r, L


def hm_grid(r_max: int = 6, n_max: int = 14, n_min_offset: int = 2):
    """(n, r, t) with 3 <= r <= r_max, 1 <= t <= r-2, n >= t + n_min_offset."""
    for r in range(3, r_max + 1):
        for t in range(1, r - 1):
            for n in range(t + n_min_offset, n_max + 1):
                yield n, r, t


def naive_count(g: Graph, r: int) -> int:
    """Count r-cliques by testing every r-subset pair by pair."""
    total = 0
    for S in combinations(range(g.n), r):
        if all(g.has_edge(u, v) for u, v in combinations(S, 2)):
            total += 1
    return total


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    return Graph.from_edges(n, [e for e in combinations(range(n), 2) if rng.random() < p])


@dataclass
class Criterion:
    number: int
    group: str
    title: str
    limit: float
    check: Callable[[int], tuple[bool, str]]


@dataclass
class Outcome:
    criterion: Criterion
    passed: bool
    detail: str
    elapsed: float

    @property
    def ok(self) -> bool:
        return self.passed and self.elapsed < self.criterion.limit


def c1_construction_identities(seed: int):
    bad, cases = [], 0
    for n, r, L in ap_grid():
        cases += 1
        cls_ = classify_ap(r, L)
        count = count_cliques(gc.extremal_ap(n, r, L), r)
        formula = ap_exact_value(n, r, L).value
        direct = turan_clique_count((n - L[0]) // cls_.d, len(L), len(L))
        if not count == formula == direct:
            bad.append((n, r, L, count, formula, direct))
    return not bad, f"{cases} cases, {len(bad)} mismatches" + (f"; first {bad[0]}" if bad else "")


def c2_hm_identity(seed: int):
    bad, cases = [], 0
    for n, r, t in hm_grid():
        cases += 1
        count = count_cliques(gc.hm_extremal(n, r, t), r)
        if count != hm_value(n, r, t).value:
            bad.append((n, r, t))
    spots = (count_cliques(gc.hm_extremal(9, 3, 1), 3), count_cliques(gc.hm_extremal(9, 4, 1), 4))
    ok = not bad and spots == (19, 33) and (hm_value(9, 3, 1).value, hm_value(9, 4, 1).value) == (19, 33)
    return ok, f"{cases} cases, {len(bad)} mismatches, spot values {spots}"


def c3_construction_properties(seed: int):
    violations = []
    cases = 0
    for n, r, L in ap_grid():
        cases += 1
        if not is_L_intersecting(associated_r_graph(gc.extremal_ap(n, r, L), r), IntersectSpec(r, L)):
            violations.append(("ap", n, r, L))
    for n, r, t in hm_grid():
        if n < r + 1:
            continue
        cases += 1
        if not is_nontrivial_t_intersecting(associated_r_graph(gc.hm_extremal(n, r, t), r), t):
            violations.append(("hm", n, r, t))
    for r in range(3, 7):
        for t in range(1, r):
            for n in range(r, 15):
                cases += 1
                F = associated_r_graph(gc.ekr_extremal(n, r, t), r)
                core = (1 << t) - 1
                trivial = (
                    is_t_intersecting(F, t).holds
                    and common_intersection(F) & core == core
                    and not is_nontrivial_t_intersecting(F, t).holds
                )
                if not trivial:
                    violations.append(("ekr", n, r, t))
    return not violations, f"{cases} graphs, {len(violations)} violations" + (
        f"; first {violations[0]}" if violations else "")


def c4_counting_oracle(seed: int):
    rng = random.Random(seed)
    bad = 0
    for _ in range(500):
        n = rng.randint(0, 8)
        g = random_graph(rng, n, rng.uniform(0.2, 0.95))
        for r in range(0, 6):
            if count_cliques(g, r) != naive_count(g, r):
                bad += 1
    return bad == 0, f"500 graphs x r in 0..5, {bad} mismatches"


def c5_ekr_phi(seed: int):
    rows = []
    ok = True
    for n in (6, 7, 8, 9):
        res = exact_phi(n, 3, (1, 2))
        rows.append(f"n={n}:{res.value}")
        ok &= res.value == comb(n - 1, 2) and res.exhaustive
    return ok, ", ".join(rows)


def c6_psi_sandwich(seed: int):
    small = exact_psi(5, 3, (1, 2))
    main = exact_psi(8, 4, (0, 2))
    gap = main.value - ap_exact_value(8, 4, (0, 2)).value
    ok = small.value == 10 and main.exhaustive and main.value >= 4
    below, cases, nonexh = [], 0, 0
    for n, r, L in ap_grid(n_max=8):
        cases += 1
        res = exact_psi(n, r, L)
        nonexh += not res.exhaustive
        if res.value < count_cliques(gc.extremal_ap(n, r, L), r):
            below.append((n, r, L))
        if L == tuple(range(L[0], r)) and L[0] >= 1:
            if res.value < count_cliques(gc.ekr_extremal(n, r, L[0]), r):
                below.append(("ekr", n, r, L))
    ok = ok and not below
    return ok, (f"Psi(5,3,{{1,2}})={small.value}; Psi(8,4,{{0,2}})={main.value} exhaustive={main.exhaustive} "
                f"gap to formula={gap}; grid {cases} cases, {len(below)} below construction, {nonexh} non-exhaustive")


def c7_reduction_claims(seed: int):
    g = gc.extremal_ap(8, 4, (0, 2))
    H = associated_r_graph(g, 4)
    at = atoms(H, 2)
    rep = verify_quotient_claims(g, 4, 2, at.atoms)
    brute = atoms_brute_force(H, 2)
    q = quotient_graph(g, 4, at.atoms)
    ok = (rep.claims == (True, True, True) and sorted(at.atoms.cells) == sorted(brute)
          and len(H) == count_cliques(q, 2) == 4)
    return ok, f"claims={rep.claims}, atoms={at.atoms.sets()}, |H|={len(H)}, N(K2,quotient)={count_cliques(q, 2)}"


def c8_hm_machinery(seed: int):
    g = gc.hm_extremal(9, 3, 1)
    D = (0, 1, 2)
    cf = cover_families(g, 3, 1, threshold=3)
    heavy = sorted(cf.t_heavy)
    want = sorted((1 << a) | (1 << b) for a, b in combinations(D, 2))
    dec = hm_decomposition(g, 3, 1, D)
    ok = heavy == want and dec.clique_count == dec.bound == 19 and dec.equality and all(dec.parts_free.values())
    n0 = dec.n0.bit_count()
    return ok, (f"T''_2 == binom(D,2): {heavy == want}; count={dec.clique_count}, "
                f"bound={dec.bound} (N0 size {n0}), parts K2-free={all(dec.parts_free.values())}")


def mod_q_instances(n_max: int = 9):
    """(l2, l3, r) with r = 2 l3 - l2 <= n_max and l3 - l2 != l2."""
    for l3 in range(2, n_max + 1):
        for l2 in range(1, l3):
            r = 2 * l3 - l2
            if r <= n_max and l3 - l2 != l2:
                yield l2, l3, r


def c9_modular(seed: int):
    rng = random.Random(seed)
    bad_q = 0
    for _ in range(1000):
        while True:
            l3 = rng.randint(2, 10_000)
            l2 = rng.randint(1, l3 - 1)
            if l3 != 2 * l2:
                break
        q = find_prime_power(l2, l3)
        if q is None or l3 % q or (2 * l2) % q == 0 or not is_prime_power(q):
            bad_q += 1
    families, bad_f, nonexh = 0, 0, 0
    for l2, l3, r in mod_q_instances():
        q = find_prime_power(l2, l3)
        lmod = (0, l2 % q)
        for n in range(r, 10):
            seen = []
            res = exact_phi(n, r, (0, l2, l3), on_solution=seen.append)
            nonexh += not res.exhaustive
            for F in seen + [res.witness]:
                families += 1
                if not (mod_q_applicable(q, r, lmod) and family_mod_q_ok(F, q, lmod) and len(F) <= comb(n, 2)):
                    bad_f += 1
    ok = bad_q == 0 and bad_f == 0 and nonexh == 0
    return ok, f"1000 random pairs, {bad_q} invalid q; {families} families checked, {bad_f} violations"


def c10_canonical(seed: int):
    counts = []
    for n in (4, 5):
        pairs = list(combinations(range(n), 2))
        forms = set()
        for m in range(1 << len(pairs)):
            forms.add(canonical_form(Graph.from_edges(n, [p for k, p in enumerate(pairs) if m >> k & 1])))
        counts.append(len(forms))
    return counts == [11, 34], f"classes on 4 and 5 vertices: {counts}"


CRITERIA = [
    Criterion(1, "constructions", "construction-formula identities (AP grid)", 10, c1_construction_identities),
    Criterion(2, "constructions", "HM identity", 10, c2_hm_identity),
    Criterion(3, "constructions", "construction properties", 30, c3_construction_properties),
    Criterion(4, "counting", "clique counting vs naive scan", 20, c4_counting_oracle),
    Criterion(5, "search", "EKR regime: exact Phi", 120, c5_ekr_phi),
    Criterion(6, "search", "Psi sandwich and exhaustive small cases", 600, c6_psi_sandwich),
    Criterion(7, "structure", "reduction claims on the AP construction", 5, c7_reduction_claims),
    Criterion(8, "structure", "covering families and HM decomposition", 5, c8_hm_machinery),
    Criterion(9, "bounds", "modular lemma", 120, c9_modular),
    Criterion(10, "canon", "canonical form class counts", 5, c10_canonical),
]


def select(only: str | None = None) -> list[Criterion]:
    if not only:
        return list(CRITERIA)
    keys = {k.strip() for k in only.split(",")}
    return [c for c in CRITERIA if c.group in keys or str(c.number) in keys]


def run_criterion(c: Criterion, seed: int = DEFAULT_SEED) -> Outcome:
    t0 = time.perf_counter()
    passed, detail = c.check(seed)
    return Outcome(c, passed, detail, time.perf_counter() - t0)


def format_row(o: Outcome) -> str:
    status = "PASS" if o.ok else "FAIL"
    return (f"[{status}] #{o.criterion.number:<2} {o.criterion.title} "
            f"({o.elapsed:.2f}s / limit {o.criterion.limit:g}s) :: {o.detail}")

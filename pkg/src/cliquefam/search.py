"""Exact desk-scale values of Psi_r(n, L), Phi_r(n, L) and C_r(n, t).

Graph searches (Psi, C) explore graphs that are unions of r-cliques: an
edge in no r-clique changes neither the count nor feasibility, so some
optimum has this form.  A state is grown by adding all edges of one
r-set.  Both predicates are hereditary (cliques never disappear when edges
are added), so a violating state is cut together with all its
descendants.  States are deduplicated by canonical form, and levels are
expanded in a fixed order so value, witness and node count do not depend
on the number of worker processes.

Phi is a maximum clique in the compatibility graph on r-subsets.
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Callable

from .canon import canonical_form
from .cliques import SetFamily, associated_r_graph, clique_masks
from .graph import Graph, complete, mask_of
from .intersect import IntersectSpec, is_L_intersecting, is_t_cover_free
from .maxclique import degeneracy_order, max_clique

__all__ = [
    "SearchConfig", "SearchResult", "exact_psi", "exact_phi", "exact_cover_free", "canonical_form",
]


@dataclass
class SearchConfig:
    n_cap: int = 10
    phi_cap: int = 5000
    budget: int = 2_000_000
    threads: int = field(default_factory=lambda: int(os.environ.get("CLIQUEFAM_THREADS", "1")))
    chunk: int = 256


@dataclass
class SearchResult:
    value: int
    witness: Graph | SetFamily
    exhaustive: bool
    nodes_explored: int
    elapsed: float
    extra: dict = field(default_factory=dict)


# -- predicates ---------------------------------------------------------------


@dataclass(frozen=True)
class _LIntersecting:
    allowed: int  # bit k set iff k in L

    def rejects_new(self, a: int, old) -> bool:
        allowed = self.allowed
        return any(not allowed >> (a & b).bit_count() & 1 for b in old)

    def violates(self, old, new) -> bool:
        allowed = self.allowed
        for i, a in enumerate(new):
            for b in old:
                if not allowed >> (a & b).bit_count() & 1:
                    return True
            for b in new[i + 1:]:
                if not allowed >> (a & b).bit_count() & 1:
                    return True
        return False


@dataclass(frozen=True)
class _CoverFree:
    t: int
    r: int
    n: int

    def rejects_new(self, a: int, old) -> bool:
        return False

    def violates(self, old, new) -> bool:
        fam = SetFamily(self.n, self.r, tuple(old) + tuple(new))
        return not is_t_cover_free(fam, self.t)


# -- graph search engine ------------------------------------------------------


def _expand(args):
    n, r, rsets, pred, prune, dedup, states = args
    out = []
    for g, cliques, feasible in states:
        have = set(cliques)
        kids = []
        for a in rsets:
            if a in have:
                continue
            if prune and pred.rejects_new(a, cliques):
                continue
            child = g.with_clique([v for v in range(n) if a >> v & 1])
            cl = clique_masks(child, r)
            if prune:
                new = [c for c in cl if c not in have]
                if pred.violates(cliques, new):
                    continue
                ok = True
            else:
                ok = not pred.violates([], cl)
            key = canonical_form(child) if dedup else child.adj
            kids.append((key, child, tuple(cl), ok))
        out.append(kids)
    return out


def _graph_search(n, r, pred, budget, threads, chunk, prune=True, dedup=True) -> SearchResult:
    t0 = time.perf_counter()
    kn = complete(n)
    all_cl = clique_masks(kn, r)
    if not pred.violates([], all_cl):
        return SearchResult(len(all_cl), kn, True, 1, time.perf_counter() - t0, {"shortcut": "K_n feasible"})
    rsets = [mask_of(c) for c in combinations(range(n), r)]
    empty = Graph.empty(n)
    frontier = [(empty, (), True)]
    seen = {canonical_form(empty) if dedup else empty.adj}
    best_val, best_graph = 0, empty
    nodes = 0
    exhaustive = True
    pool = ProcessPoolExecutor(threads) if threads > 1 else None
    try:
        while frontier:
            if nodes + len(frontier) > budget:
                frontier = frontier[: max(0, budget - nodes)]
                exhaustive = False
            nodes += len(frontier)
            chunks = [frontier[i:i + chunk] for i in range(0, len(frontier), chunk)]
            jobs = [(n, r, rsets, pred, prune, dedup, c) for c in chunks]
            results = pool.map(_expand, jobs) if pool else map(_expand, jobs)
            nxt = []
            for res in results:
                for kids in res:
                    for key, child, cl, ok in kids:
                        if key in seen:
                            continue
                        seen.add(key)
                        if ok and len(cl) > best_val:
                            best_val, best_graph = len(cl), child
                        nxt.append((child, cl, ok))
            if not exhaustive:
                break
            frontier = nxt
    finally:
        if pool:
            pool.shutdown()
    return SearchResult(best_val, best_graph, exhaustive, nodes, time.perf_counter() - t0,
                        {"states_seen": len(seen)})


def _spec(r, L) -> IntersectSpec:
    return L if isinstance(L, IntersectSpec) else IntersectSpec(r, L)


def exact_psi(n: int, r: int, L, budget: int | None = None, config: SearchConfig | None = None,
              prune: bool = True, dedup: bool = True) -> SearchResult:
    """Maximum number of r-cliques in an n-vertex (K_r, L)-intersecting graph."""
    cfg = config or SearchConfig()
    spec = _spec(r, L)
    if n > cfg.n_cap:
        raise ValueError(f"n={n} exceeds the configured cap {cfg.n_cap}")
    allowed = 0
    for ell in spec.L:
        allowed |= 1 << ell
    res = _graph_search(n, r, _LIntersecting(allowed), budget if budget is not None else cfg.budget,
                        cfg.threads, cfg.chunk, prune, dedup)
    fam = associated_r_graph(res.witness, r)
    if len(fam) != res.value or not is_L_intersecting(fam, spec):
        raise RuntimeError("witness failed re-verification")
    return res


def exact_cover_free(n: int, r: int, t: int, budget: int | None = None, config: SearchConfig | None = None,
                     prune: bool = True, dedup: bool = True) -> SearchResult:
    """Maximum number of r-cliques in an n-vertex graph whose r-cliques are t-cover-free."""
    cfg = config or SearchConfig()
    if n > cfg.n_cap:
        raise ValueError(f"n={n} exceeds the configured cap {cfg.n_cap}")
    if t < 1:
        raise ValueError("t must be at least 1")
    res = _graph_search(n, r, _CoverFree(t, r, n), budget if budget is not None else cfg.budget,
                        cfg.threads, cfg.chunk, prune, dedup)
    fam = associated_r_graph(res.witness, r) if r >= 1 else None
    if fam is not None and (len(fam) != res.value or not is_t_cover_free(fam, t)):
        raise RuntimeError("witness failed re-verification")
    return res


def exact_phi(n: int, r: int, L, budget: int | None = None, config: SearchConfig | None = None,
              on_solution: Callable[[SetFamily], None] | None = None) -> SearchResult:
    """Maximum size of an L-intersecting r-uniform family on n points.

    Maximum clique in the graph on r-subsets joining pairs whose
    intersection size lies in L.  The graph is vertex-transitive, so the
    first r-subset is fixed and the search runs in its neighbourhood.
    ``on_solution`` sees the greedy start and every improving family.
    """
    cfg = config or SearchConfig()
    spec = _spec(r, L)
    total = comb(n, r)
    if total > cfg.phi_cap:
        raise ValueError(f"binom({n},{r}) = {total} exceeds the configured cap {cfg.phi_cap}")
    t0 = time.perf_counter()
    if total == 0:
        return SearchResult(0, SetFamily(n, r, ()), True, 0, 0.0)
    allowed = 0
    for ell in spec.L:
        allowed |= 1 << ell
    sets = [mask_of(c) for c in combinations(range(n), r)]
    first = sets[0]
    nbrs = [b for b in sets[1:] if allowed >> (first & b).bit_count() & 1]
    k = len(nbrs)
    adj = [0] * k
    for i in range(k):
        a = nbrs[i]
        for j in range(i + 1, k):
            if allowed >> (a & nbrs[j]).bit_count() & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i

    def family(members) -> SetFamily:
        return SetFamily(n, r, (first,) + tuple(nbrs[i] for i in members))

    # greedy start in degeneracy order
    greedy, cand = [], (1 << k) - 1
    for v in degeneracy_order(adj, k):
        if cand >> v & 1:
            greedy.append(v)
            cand &= adj[v]
    if on_solution:
        on_solution(family(greedy))
    res = max_clique(
        adj, k, lower_bound=len(greedy),
        budget=budget if budget is not None else cfg.budget,
        on_improve=(lambda m: on_solution(family(m))) if on_solution else None,
    )
    members = res.members if len(res.members) > len(greedy) else greedy
    fam = family(members)
    if not is_L_intersecting(fam, spec):
        raise RuntimeError("witness failed re-verification")
    return SearchResult(len(fam), fam, res.exhaustive, res.nodes, time.perf_counter() - t0)

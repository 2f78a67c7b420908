"""Canonical labelling of small graphs.

Colour refinement to an equitable ordered partition, then individualise a
vertex of the first smallest non-singleton cell and recurse.  Each leaf is a
labelling; the canonical one minimises the graph6 upper-triangle bit string.
Automorphisms discovered from equal leaves prune sibling branches that lie
in the same orbit of the prefix stabiliser.
"""

from __future__ import annotations

from .graph import Graph
from . import graph6


def _refine(adj: tuple[int, ...], cells: list[list[int]]) -> list[list[int]]:
    while True:
        masks = []
        for c in cells:
            m = 0
            for v in c:
                m |= 1 << v
            masks.append(m)
        out: list[list[int]] = []
        for c in cells:
            if len(c) == 1:
                out.append(c)
                continue
            groups: dict[tuple[int, ...], list[int]] = {}
            for v in c:
                sig = tuple((adj[v] & m).bit_count() for m in masks)
                groups.setdefault(sig, []).append(v)
            for sig in sorted(groups):
                out.append(groups[sig])
        if len(out) == len(cells):
            return out
        cells = out


def _code(adj: tuple[int, ...], order: list[int]) -> int:
    """Upper-triangle bits, column order, of the graph relabelled by ``order``."""
    code = 0
    n = len(order)
    for j in range(1, n):
        row = adj[order[j]]
        for i in range(j):
            code = (code << 1) | (row >> order[i] & 1)
    return code


def _orbits_of(gens: list[list[int]], n: int) -> list[int]:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in gens:
        for v in range(n):
            a, b = find(v), find(g[v])
            if a != b:
                parent[max(a, b)] = min(a, b)
    return [find(v) for v in range(n)]


def canonical_labeling(g: Graph) -> list[int]:
    """Return ``order`` with ``order[i]`` = the vertex placed at position ``i``."""
    n, adj = g.n, g.adj
    if n == 0:
        return []
    autos: list[list[int]] = []
    state = {"first": None, "best": None, "best_code": None, "first_code": None}

    def leaf(order: list[int]) -> None:
        code = _code(adj, order)
        if state["first"] is None:
            state["first"], state["first_code"] = order, code
            state["best"], state["best_code"] = order, code
            return
        for ref, ref_code in ((state["first"], state["first_code"]), (state["best"], state["best_code"])):
            if code == ref_code:
                # order[i] -> ref[i] preserves adjacency
                perm = [0] * n
                for a, b in zip(order, ref):
                    perm[a] = b
                autos.append(perm)
                return
        if code < state["best_code"]:
            state["best"], state["best_code"] = order, code

    def search(cells: list[list[int]], prefix: list[int]) -> None:
        cells = _refine(adj, cells)
        if len(cells) == n:
            leaf([c[0] for c in cells])
            return
        k = min(range(len(cells)), key=lambda i: (len(cells[i]) == 1, len(cells[i]), i))
        target = cells[k]
        tried: list[int] = []
        seen_autos = -1
        orbit = None
        for v in target:
            if tried:
                if len(autos) != seen_autos:
                    seen_autos = len(autos)
                    stab = [a for a in autos if all(a[p] == p for p in prefix)]
                    orbit = _orbits_of(stab, n)
                if orbit is not None and any(orbit[v] == orbit[u] for u in tried):
                    continue
            tried.append(v)
            rest = [u for u in target if u != v]
            search(cells[:k] + [[v], rest] + cells[k + 1:], prefix + [v])

    search([list(range(n))], [])
    return state["best"]


def canonical_form(g: Graph) -> bytes:
    """graph6 bytes of the canonical relabelling; equal iff isomorphic."""
    order = canonical_labeling(g)
    perm = [0] * g.n
    for i, v in enumerate(order):
        perm[v] = i
    return graph6.encode(g.relabel(perm))


def is_isomorphic(g: Graph, h: Graph) -> bool:
    return g.n == h.n and g.num_edges == h.num_edges and canonical_form(g) == canonical_form(h)

"""Exact maximum clique by branch and bound with greedy-coloring bounds.

Bitset variant of the classic coloring algorithm: vertices are renumbered
in degeneracy order, each node colours its candidate set greedily and
branches from the highest colour down, cutting as soon as
``|clique| + colour <= best``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence


class BudgetExhausted(Exception):
    pass


@dataclass
class CliqueResult:
    members: list[int]
    exhaustive: bool
    nodes: int


def degeneracy_order(adj: Sequence[int], n: int) -> list[int]:
    """Smallest-last order, reversed: the densest core comes first."""
    alive = (1 << n) - 1
    deg = [(adj[v] & alive).bit_count() for v in range(n)]
    removed = []
    left = set(range(n))
    while left:
        v = min(left, key=lambda u: (deg[u], u))
        left.discard(v)
        alive &= ~(1 << v)
        removed.append(v)
        m = adj[v] & alive
        while m:
            low = m & -m
            deg[low.bit_length() - 1] -= 1
            m ^= low
    return removed[::-1]


def max_clique(
    adj: Sequence[int],
    n: int,
    lower_bound: int = 0,
    budget: int | None = None,
    on_improve: Callable[[list[int]], None] | None = None,
) -> CliqueResult:
    """Maximum clique of the graph given by bitmask rows ``adj``.

    Only cliques strictly larger than ``lower_bound`` are searched for; if
    none exists the result is empty.  ``on_improve`` receives every new
    incumbent (original labels).
    """
    order = degeneracy_order(adj, n)
    pos = {v: i for i, v in enumerate(order)}
    radj = [0] * n
    for v in range(n):
        m, row = 0, adj[v]
        while row:
            low = row & -row
            m |= 1 << pos[low.bit_length() - 1]
            row ^= low
        radj[pos[v]] = m

    best_size = lower_bound
    best: list[int] = []
    nodes = 0

    def expand(size: int, clique: list[int], P: int) -> None:
        nonlocal best_size, best, nodes
        nodes += 1
        if budget is not None and nodes > budget:
            raise BudgetExhausted
        kmin = best_size - size
        colored = []
        U, color = P, 0
        while U:
            color += 1
            Q = U
            while Q:
                low = Q & -Q
                v = low.bit_length() - 1
                U ^= low
                Q &= ~radj[v] & ~low
                if color > kmin:
                    colored.append((v, color))
        for v, col in reversed(colored):
            if size + col <= best_size:
                return
            bit = 1 << v
            clique.append(v)
            newP = P & radj[v]
            if newP:
                expand(size + 1, clique, newP)
            elif size + 1 > best_size:
                best_size = size + 1
                best = [order[u] for u in clique]
                if on_improve is not None:
                    on_improve(sorted(best))
            clique.pop()
            P &= ~bit

    exhaustive = True
    try:
        if n:
            expand(0, [], (1 << n) - 1)
    except BudgetExhausted:
        exhaustive = False
    return CliqueResult(sorted(best), exhaustive, nodes)

"""r-clique enumeration, counting, and the associated r-graph."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import comb
from typing import Iterable, Iterator, TextIO

from .graph import Graph, bits, mask_of


def _lex_key(mask: int) -> tuple[int, ...]:
    return tuple(bits(mask))


@dataclass(frozen=True)
class SetFamily:
    """An r-uniform family on ground set [0, ground_n); edges are bitmasks.

    Edges are kept sorted lexicographically by their sorted vertex lists.
    """

    ground_n: int
    r: int
    edges: tuple[int, ...]

    def __post_init__(self):
        full = (1 << self.ground_n) - 1
        for e in self.edges:
            if e.bit_count() != self.r:
                raise ValueError(f"edge {_lex_key(e)} does not have {self.r} elements")
            if e & ~full:
                raise ValueError(f"edge {_lex_key(e)} leaves the ground set")
        if len(set(self.edges)) != len(self.edges):
            raise ValueError("duplicate edges")
        ordered = tuple(sorted(self.edges, key=_lex_key))
        if ordered != self.edges:
            object.__setattr__(self, "edges", ordered)

    @classmethod
    def from_sets(cls, ground_n: int, r: int, sets: Iterable[Iterable[int]]) -> "SetFamily":
        return cls(ground_n, r, tuple(mask_of(s) for s in sets))

    def __len__(self):
        return len(self.edges)

    def __iter__(self) -> Iterator[int]:
        return iter(self.edges)

    def __contains__(self, item) -> bool:
        m = item if isinstance(item, int) else mask_of(item)
        return m in set(self.edges)

    def sets(self) -> list[tuple[int, ...]]:
        return [_lex_key(e) for e in self.edges]

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if e >> v & 1)

    def restrict(self, keep) -> "SetFamily":
        """Subfamily of edges satisfying the predicate ``keep(mask)``."""
        return SetFamily(self.ground_n, self.r, tuple(e for e in self.edges if keep(e)))

    def to_text(self) -> str:
        lines = [f"{self.ground_n} {self.r} {len(self.edges)}"]
        lines += [" ".join(map(str, s)) for s in self.sets()]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "SetFamily":
        rows = [ln.split() for ln in text.splitlines() if ln.strip()]
        if not rows or len(rows[0]) != 3:
            raise ValueError("header must be 'n r m'")
        n, r, m = map(int, rows[0])
        if len(rows) - 1 != m:
            raise ValueError(f"header promises {m} edges, found {len(rows) - 1}")
        return cls.from_sets(n, r, ([int(x) for x in row] for row in rows[1:]))

    def write(self, fh: TextIO) -> None:
        fh.write(self.to_text())


def _extend(adj, clique: int, cand: int, k: int, out: list) -> None:
    if k == 0:
        out.append(clique)
        return
    while cand:
        if cand.bit_count() < k:
            return
        low = cand & -cand
        cand ^= low
        v = low.bit_length() - 1
        _extend(adj, clique | low, cand & adj[v], k - 1, out)


def _count(adj, cand: int, k: int) -> int:
    if k == 1:
        return cand.bit_count()
    total = 0
    while cand:
        if cand.bit_count() < k:
            break
        low = cand & -cand
        cand ^= low
        total += _count(adj, cand & adj[low.bit_length() - 1], k - 1)
    return total


def _higher(v: int, n: int) -> int:
    return ((1 << n) - 1) & ~((1 << (v + 1)) - 1)


def _branch_cliques(args):
    adj, n, r, v = args
    out: list[int] = []
    _extend(adj, 1 << v, adj[v] & _higher(v, n), r - 1, out)
    return out


def _branch_count(args):
    adj, n, r, v = args
    cand = adj[v] & _higher(v, n)
    return 1 if r == 1 else _count(adj, cand, r - 1)


def _threads(threads: int | None) -> int:
    if threads is None:
        threads = int(os.environ.get("CLIQUEFAM_THREADS", "1"))
    return max(1, threads)


def clique_masks(g: Graph, r: int, threads: int | None = None) -> list[int]:
    """All r-cliques of ``g`` as bitmasks, in lexicographic order."""
    if r < 0:
        raise ValueError("r must be non-negative")
    if r == 0:
        return [0]
    jobs = [(g.adj, g.n, r, v) for v in range(g.n)]
    if _threads(threads) > 1 and g.n > 1:
        with ProcessPoolExecutor(_threads(threads)) as ex:
            parts = list(ex.map(_branch_cliques, jobs))
    else:
        parts = [_branch_cliques(j) for j in jobs]
    # first vertex ascending, then DFS order: already lexicographic
    return [m for part in parts for m in part]


def associated_r_graph(g: Graph, r: int, threads: int | None = None) -> SetFamily:
    if r < 1:
        raise ValueError("r must be at least 1")
    return SetFamily(g.n, r, tuple(clique_masks(g, r, threads)))


def count_cliques(g: Graph, r: int, threads: int | None = None) -> int:
    """N(K_r, g); N(K_0, g) = 1 by convention."""
    if r < 0:
        raise ValueError("r must be non-negative")
    if r == 0:
        return 1
    jobs = [(g.adj, g.n, r, v) for v in range(g.n)]
    if _threads(threads) > 1 and g.n > 1:
        with ProcessPoolExecutor(_threads(threads)) as ex:
            return sum(ex.map(_branch_count, jobs))
    return sum(_branch_count(j) for j in jobs)


def count_cliques_in(g: Graph, r: int, within: int) -> int:
    """N(K_r, g[within]) where ``within`` is a vertex bitmask."""
    if r == 0:
        return 1
    return _count(g.adj, within, r) if within else 0


def cliques_within(g: Graph, r: int, within: int) -> list[int]:
    out: list[int] = []
    if r == 0:
        return [0]
    _extend(g.adj, 0, within, r, out)
    return out


def turan_clique_count(n: int, t: int, r: int) -> int:
    """N(K_r, T(n, t)) from the part sizes, without enumeration."""
    if n < 0 or t < 1 or r < 0:
        raise ValueError("need n >= 0, t >= 1, r >= 0")
    a = n % t
    hi, lo = -(-n // t), n // t
    return sum(
        comb(a, i) * comb(t - a, r - i) * hi**i * lo ** (r - i)
        for i in range(0, min(a, r) + 1)
    )


def cliques_containing(g: Graph, r: int, T: Iterable[int]) -> SetFamily:
    """The r-cliques of ``g`` that contain every vertex of ``T``."""
    ts = list(T)
    tmask = mask_of(ts)
    if len(ts) > r or not g.is_clique(ts):
        return SetFamily(g.n, r, ())
    within = g.common_neighbors(ts) & ~tmask
    found = cliques_within(g, r - len(ts), within)
    return SetFamily(g.n, r, tuple(tmask | m for m in found))

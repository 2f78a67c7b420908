"""Dense bitset graphs and the named constructions built from them.

Vertices are ``0..n-1``; row ``u`` of the adjacency is a Python int whose
bit ``v`` is set iff ``uv`` is an edge.  Graphs are immutable.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from .intersect import IntersectSpec


def bits(mask: int) -> Iterator[int]:
    """Yield the indices of set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[int, ...]

    def __post_init__(self):
        if self.n < 0 or len(self.adj) != self.n:
            raise ValueError("adjacency must have exactly n rows")
        full = (1 << self.n) - 1
        for u, row in enumerate(self.adj):
            if row & ~full:
                raise ValueError(f"row {u} has bits outside [0, {self.n})")
            if row >> u & 1:
                raise ValueError(f"self-loop at {u}")
            for v in bits(row):
                if not self.adj[v] >> u & 1:
                    raise ValueError(f"asymmetric pair ({u}, {v})")

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, (0,) * n)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, v: int) -> int:
        """Neighborhood of ``v`` as a bitmask."""
        return self.adj[v]

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.adj[u] >> (u + 1) << (u + 1))]

    @property
    def num_edges(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def is_clique(self, vertices: Iterable[int]) -> bool:
        vs = list(vertices)
        m = mask_of(vs)
        return all((self.adj[v] | (1 << v)) & m == m for v in vs)

    def common_neighbors(self, vertices: Iterable[int]) -> int:
        m = (1 << self.n) - 1
        for v in vertices:
            m &= self.adj[v]
        return m

    def induced(self, vertices: Sequence[int]) -> "Graph":
        """Induced subgraph, relabelled so ``vertices[i]`` becomes ``i``."""
        pos = {v: i for i, v in enumerate(vertices)}
        rows = []
        for v in vertices:
            rows.append(mask_of(pos[w] for w in bits(self.adj[v]) if w in pos))
        return Graph(len(vertices), tuple(rows))

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Return the graph with vertex ``v`` renamed ``perm[v]``."""
        rows = [0] * self.n
        for v in range(self.n):
            rows[perm[v]] = mask_of(perm[w] for w in bits(self.adj[v]))
        return Graph(self.n, tuple(rows))

    def with_clique(self, vertices: Iterable[int]) -> "Graph":
        """New graph with all pairs inside ``vertices`` added as edges."""
        vs = list(vertices)
        m = mask_of(vs)
        rows = list(self.adj)
        for v in vs:
            rows[v] |= m & ~(1 << v)
        return Graph(self.n, tuple(rows))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.num_edges})"


def _part_sizes(n: int, t: int) -> list[int]:
    # larger parts first
    q, a = divmod(n, t)
    return [q + 1] * a + [q] * (t - a)


def complete(k: int) -> Graph:
    if k < 0:
        raise ValueError("k must be non-negative")
    full = (1 << k) - 1
    return Graph(k, tuple(full & ~(1 << v) for v in range(k)))


def join(g: Graph, h: Graph) -> Graph:
    """Disjoint union of ``g`` and ``h`` plus every edge between them.

    ``g``'s vertices keep their labels; ``h``'s are shifted by ``g.n``.
    """
    shift = g.n
    gmask = (1 << g.n) - 1
    hmask = ((1 << h.n) - 1) << shift
    rows = [row | hmask for row in g.adj] + [(row << shift) | gmask for row in h.adj]
    return Graph(g.n + h.n, tuple(rows))


def disjoint_union(g: Graph, h: Graph) -> Graph:
    shift = g.n
    return Graph(g.n + h.n, g.adj + tuple(row << shift for row in h.adj))


def disjoint_copies(b: int, g: Graph) -> Graph:
    if b < 0:
        raise ValueError("b must be non-negative")
    out = Graph.empty(0)
    for _ in range(b):
        out = disjoint_union(out, g)
    return out


def complete_multipartite(sizes: Sequence[int]) -> Graph:
    n = sum(sizes)
    full = (1 << n) - 1
    rows = []
    start = 0
    for size in sizes:
        part = ((1 << size) - 1) << start
        rows.extend([full & ~part] * size)
        start += size
    return Graph(n, tuple(rows))


def turan(n: int, t: int) -> Graph:
    """Balanced complete ``t``-partite graph on ``n`` vertices.

    The ``n mod t`` larger parts come first.
    """
    if n < 0 or t < 1:
        raise ValueError("need n >= 0 and t >= 1")
    return complete_multipartite(_part_sizes(n, t))


def turan_parts(n: int, t: int) -> list[list[int]]:
    """Vertex lists of the parts of ``turan(n, t)``."""
    parts, start = [], 0
    for size in _part_sizes(n, t):
        parts.append(list(range(start, start + size)))
        start += size
    return parts


def blown_turan(m: int, s: int, d: int) -> Graph:
    """T(m, s) with every vertex replaced by a copy of K_d.

    Vertices are ordered by (side, copy, position in copy).  Two vertices
    are adjacent iff they lie on different sides or in the same K_d.
    """
    if m < 0 or s < 1 or d < 1:
        raise ValueError("need m >= 0, s >= 1, d >= 1")
    n = m * d
    full = (1 << n) - 1
    rows = []
    start = 0
    for copies in _part_sizes(m, s):
        side = ((1 << (copies * d)) - 1) << start
        for c in range(copies):
            block = ((1 << d) - 1) << (start + c * d)
            for p in range(d):
                v = start + c * d + p
                rows.append((full & ~side | block) & ~(1 << v))
        start += copies * d
    return Graph(n, tuple(rows))


@dataclass(frozen=True)
class ConstructionParams:
    """Parameters of the AP construction: n - l1 = m*d + lam, s | (m - s1)."""

    n: int
    r: int
    spec: IntersectSpec
    s: int
    d: int
    m: int
    lam: int
    s1: int

    @classmethod
    def derive(cls, n: int, r: int, spec: IntersectSpec) -> "ConstructionParams":
        from .bounds import classify_ap

        cls_ = classify_ap(r, spec.L)
        if not cls_.is_ap:
            raise ValueError(f"L={list(spec.L)} with r={r} is not an arithmetic progression")
        d = cls_.d
        l1 = spec.L[0]
        s = len(spec.L)
        if n < l1 + s * d:
            raise ValueError(f"need n >= l1 + s*d = {l1 + s * d}")
        m, lam = divmod(n - l1, d)
        return cls(n, r, spec, s, d, m, lam, m % s)


def extremal_ap(n: int, r: int, L) -> Graph:
    """K_{l1} + blown_turan(m, s, d), padded with lam isolated vertices.

    The padding keeps the vertex count at exactly ``n`` and adds no r-clique.
    """
    spec = L if isinstance(L, IntersectSpec) else IntersectSpec(r, L)
    p = ConstructionParams.derive(n, r, spec)
    core = join(complete(spec.L[0]), blown_turan(p.m, p.s, p.d))
    return disjoint_union(core, Graph.empty(p.lam))


def ekr_extremal(n: int, r: int, t: int) -> Graph:
    """K_t + T(n - t, r - t)."""
    return join(complete(t), turan(n - t, r - t))


def hm_extremal(n: int, r: int, t: int) -> Graph:
    """K_{t+2} + T(n - t - 2, r - t - 1)."""
    if not (r > t >= 1 and r - t - 1 >= 1 and n >= t + 2):
        raise ValueError("need r > t >= 1, r - t - 1 >= 1 and n >= t + 2")
    return join(complete(t + 2), turan(n - t - 2, r - t - 1))


def single_intersection_construction(n: int, r: int, ell: int) -> Graph:
    """K_ell + floor((n-ell)/(r-ell)) K_{r-ell}, padded to n vertices."""
    if not 0 <= ell < r:
        raise ValueError("need 0 <= ell < r")
    b = (n - ell) // (r - ell)
    g = join(complete(ell), disjoint_copies(b, complete(r - ell)))
    return disjoint_union(g, Graph.empty(n - g.n))


def frankl_family(n: int, r: int, t: int, variant: str):
    """The extremal non-trivial t-intersecting families on ground set [0, n).

    Variant ``"i"`` uses S1 = {0..t-1} and S2 = {t..r}; variant ``"ii"``
    uses S = {0..t+1}.
    """
    from .cliques import SetFamily

    if variant == "i":
        if n < r + 1:
            raise ValueError("variant i needs n >= r + 1")
        s1 = mask_of(range(t))
        s2 = mask_of(range(t, r + 1))
        keep = lambda a: (a & s1 == s1 and a & s2) or (
            a & s2 == s2 and (a & s1).bit_count() >= t - 1
        )
    elif variant == "ii":
        if n < t + 2:
            raise ValueError("variant ii needs n >= t + 2")
        s = mask_of(range(t + 2))
        keep = lambda a: (a & s).bit_count() >= t + 1
    else:
        raise ValueError(f"unknown variant {variant!r}")
    sets = [mask_of(c) for c in combinations(range(n), r)]
    return SetFamily(n, r, tuple(a for a in sets if keep(a)))

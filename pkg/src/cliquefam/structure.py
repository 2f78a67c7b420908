"""Sunflowers, low-degree pruning, quotient graphs, atoms and covering families.

Every threshold-bearing operation takes its threshold explicitly.  The
asymptotic defaults (r^2, r n^(r-t-2)) are offered, but at desk scale they
usually degenerate, so tests pass small thresholds.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .cliques import (
    SetFamily,
    associated_r_graph,
    clique_masks,
    count_cliques,
    count_cliques_in,
)
from .graph import Graph, bits, mask_of
from .intersect import IntersectSpec, is_L_intersecting
from .maxclique import max_clique


def _sorted(m: int) -> list[int]:
    return list(bits(m))


@dataclass(frozen=True)
class SunflowerResult:
    core: int
    petals: tuple[int, ...]

    def __len__(self):
        return len(self.petals)

    def as_dict(self) -> dict:
        return {"core": _sorted(self.core), "petals": [_sorted(p) for p in self.petals]}


@dataclass(frozen=True)
class Partition:
    ground_n: int
    cells: tuple[int, ...]

    def __post_init__(self):
        seen = 0
        for c in self.cells:
            if not c:
                raise ValueError("cells must be non-empty")
            if c & seen:
                raise ValueError("cells must be pairwise disjoint")
            seen |= c
        if seen >> self.ground_n:
            raise ValueError("cells leave the ground set")

    @property
    def union(self) -> int:
        u = 0
        for c in self.cells:
            u |= c
        return u

    def sets(self) -> list[list[int]]:
        return [_sorted(c) for c in self.cells]


def max_sunflower_with_core(F: SetFamily, C: Iterable[int] | int) -> SunflowerResult:
    """Largest set of edges containing C that pairwise meet exactly in C.

    Solved exactly as a maximum packing of the petals A - C.
    """
    core = C if isinstance(C, int) else mask_of(C)
    cands = [a for a in F.edges if a & core == core]
    if not cands:
        return SunflowerResult(core, ())
    petals = [a & ~core for a in cands]
    k = len(cands)
    # compatibility graph: petals that are disjoint
    adj = [0] * k
    for i in range(k):
        for j in range(i + 1, k):
            if not petals[i] & petals[j]:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    res = max_clique(adj, k)
    return SunflowerResult(core, tuple(cands[i] for i in res.members))


def high_degree_vertices(F: SetFamily, threshold: int) -> int:
    """Vertices lying in at least ``threshold`` edges, as a bitmask."""
    if threshold < 0:
        raise ValueError("threshold must be non-negative")
    out = 0
    for v in range(F.ground_n):
        if F.degree(v) >= threshold:
            out |= 1 << v
    return out


def core_collection(F: SetFamily, ell: int, threshold: int | None = None) -> list[int]:
    """All ell-sets C whose maximum sunflower with core C has >= threshold petals.

    ``threshold`` defaults to r^2.
    """
    if ell < 1:
        raise ValueError("ell must be at least 1")
    if threshold is None:
        threshold = F.r**2
    cands = set()
    for a in F.edges:
        for c in combinations(_sorted(a), ell):
            cands.add(mask_of(c))
    out = [c for c in cands if len(max_sunflower_with_core(F, c)) >= threshold]
    return sorted(out, key=_sorted)


@dataclass(frozen=True)
class PruneResult:
    graph: Graph
    kept: tuple[int, ...]
    deleted: tuple[int, ...]


def prune_low_degree(g: Graph, r: int, threshold: int | None = None) -> PruneResult:
    """Delete vertices lying in fewer than ``threshold`` r-cliques until none remain.

    The lowest-indexed qualifying vertex is removed first.  The returned
    graph is induced on ``kept`` (relabelled in increasing order);
    ``deleted`` is the removal order in original labels.
    """
    if threshold is None:
        threshold = r * r
    if threshold < 0:
        raise ValueError("threshold must be non-negative")
    alive = (1 << g.n) - 1
    cliques = clique_masks(g, r)
    deleted = []
    while True:
        deg = [0] * g.n
        for c in cliques:
            for v in bits(c):
                deg[v] += 1
        victim = next((v for v in bits(alive) if deg[v] < threshold), None)
        if victim is None:
            break
        alive &= ~(1 << victim)
        deleted.append(victim)
        cliques = [c for c in cliques if not c >> victim & 1]
    kept = tuple(bits(alive))
    return PruneResult(g.induced(kept), kept, tuple(deleted))


def _cells_masks(cells) -> list[int]:
    if isinstance(cells, Partition):
        return list(cells.cells)
    return [c if isinstance(c, int) else mask_of(c) for c in cells]


def quotient_graph(g: Graph, r: int, cells) -> Graph:
    """One vertex per cell; two cells adjacent iff their union lies in an r-clique."""
    cs = _cells_masks(cells)
    seen = 0
    for c in cs:
        if c & seen:
            raise ValueError("cells must be pairwise disjoint")
        seen |= c
    edges = set()
    for a in clique_masks(g, r):
        inside = [i for i, c in enumerate(cs) if c & a == c]
        edges.update(combinations(inside, 2))
    return Graph.from_edges(len(cs), edges)


@dataclass
class QuotientReport:
    cells_are_blocks: bool
    ell_divides_r: bool
    counts_equal: bool
    quotient_intersecting: bool
    clique_count: int
    quotient_count: int | None
    witnesses: dict = field(default_factory=dict)

    @property
    def claims(self) -> tuple[bool, bool, bool]:
        return (self.cells_are_blocks, self.counts_equal, self.quotient_intersecting)

    def as_dict(self) -> dict:
        return {
            "a_cliques_are_unions_of_cells": self.cells_are_blocks,
            "ell_divides_r": self.ell_divides_r,
            "b_counts_equal": self.counts_equal,
            "c_quotient_01_intersecting": self.quotient_intersecting,
            "clique_count": self.clique_count,
            "quotient_count": self.quotient_count,
            "witnesses": self.witnesses,
        }


def verify_quotient_claims(g: Graph, r: int, ell: int, cells) -> QuotientReport:
    """Check the three reduction claims for the quotient on ``cells``.

    (a) every r-clique is a disjoint union of cells, (b) the r-clique count
    of ``g`` equals the (r/ell)-clique count of the quotient, (c) the
    quotient is (K_{r/ell}, {0, 1})-intersecting.
    """
    cs = _cells_masks(cells)
    if any(c.bit_count() != ell for c in cs):
        raise ValueError(f"all cells must have size {ell}")
    covered = 0
    for c in cs:
        covered |= c
    cliques = clique_masks(g, r)
    witnesses: dict = {}
    blocks = True
    for a in cliques:
        bad = next((c for c in cs if c & a and c & a != c), None)
        if bad is not None or a & ~covered:
            blocks = False
            witnesses["a"] = {"clique": _sorted(a), "cell": _sorted(bad) if bad else None}
            break
    divides = r % ell == 0
    if blocks and cliques:
        assert divides, "cliques that are unions of ell-cells force ell | r"
    q = quotient_graph(g, r, cs)
    qcount = None
    counts_equal = False
    inter = False
    if divides:
        k = r // ell
        qcount = count_cliques(q, k)
        counts_equal = qcount == len(cliques)
        if not counts_equal:
            witnesses["b"] = {"clique_count": len(cliques), "quotient_count": qcount}
        if k >= 1:
            chk = is_L_intersecting(associated_r_graph(q, k), IntersectSpec(k, [x for x in (0, 1) if x < k]))
            inter = chk.holds
            if not inter:
                witnesses["c"] = chk.witness
    else:
        witnesses["b"] = {"reason": f"{ell} does not divide {r}"}
    return QuotientReport(blocks, divides, counts_equal, inter, len(cliques), qcount, witnesses)


@dataclass(frozen=True)
class AtomsResult:
    atoms: Partition
    x0: int

    @property
    def x1(self) -> int:
        return self.atoms.union


def membership_classes(F: SetFamily) -> list[int]:
    """Classes of ground vertices with identical edge membership.

    Partition refinement: start from the whole ground set and split every
    cell by every edge into (cell & A, cell - A).
    """
    cells = [(1 << F.ground_n) - 1] if F.ground_n else []
    for a in F.edges:
        nxt = []
        for c in cells:
            inside, outside = c & a, c & ~a
            if inside:
                nxt.append(inside)
            if outside:
                nxt.append(outside)
        cells = nxt
    return sorted(cells, key=lambda m: (m & -m))


def atoms(F: SetFamily, d: int) -> AtomsResult:
    """Maximal sets of size >= d that every edge contains or avoids."""
    if d < 1:
        raise ValueError("d must be at least 1")
    cells = [c for c in membership_classes(F) if c.bit_count() >= d]
    part = Partition(F.ground_n, tuple(cells))
    return AtomsResult(part, ((1 << F.ground_n) - 1) & ~part.union)


def atoms_brute_force(F: SetFamily, d: int) -> list[int]:
    """Reference: scan all 2^n subsets for the inclusion-maximal atoms."""
    n = F.ground_n
    good = []
    for s in range(1, 1 << n):
        if s.bit_count() < d:
            continue
        if all(s & a == s or not s & a for a in F.edges):
            good.append(s)
    maximal = [s for s in good if not any(t != s and t & s == s for t in good)]
    return sorted(maximal, key=lambda m: (m & -m))


# ---------------------------------------------------------------------------
# structure-theorem property checker


def _intersection_families(Fstar: SetFamily, proper: bool) -> dict[int, set[int]]:
    out = {}
    for f in Fstar.edges:
        out[f] = {f & g for g in Fstar.edges if not (proper and g == f)}
    return out


def _isomorphic_traces(f: int, If: set[int], g: int, Ig: set[int]) -> bool:
    """Is there a bijection f -> g carrying the family If onto Ig?"""
    if len(If) != len(Ig):
        return False
    if sorted(a.bit_count() for a in If) != sorted(b.bit_count() for b in Ig):
        return False
    fv, gv = _sorted(f), _sorted(g)
    # vertex profile: sizes of the members containing it
    def prof(v, fam):
        return sorted(a.bit_count() for a in fam if a >> v & 1)

    fp = {v: prof(v, If) for v in fv}
    gp = {v: prof(v, Ig) for v in gv}
    target = Ig

    def extend(i: int, mapping: dict[int, int], used: int) -> bool:
        if i == len(fv):
            img = set()
            for a in If:
                m = 0
                for v in bits(a):
                    m |= 1 << mapping[v]
                img.add(m)
            return img == target
        v = fv[i]
        for w in gv:
            if used >> w & 1 or fp[v] != gp[w]:
                continue
            mapping[v] = w
            if extend(i + 1, mapping, used | (1 << w)):
                return True
            del mapping[v]
        return False

    return extend(0, {}, 0)


def _furedi_reading(Fstar: SetFamily, L: Sequence[int], proper: bool) -> dict:
    r = Fstar.r
    Lset = set(L)
    I = _intersection_families(Fstar, proper)
    res: dict = {}
    edges = Fstar.edges
    # (i)
    ok, wit = True, None
    if edges:
        f0 = edges[0]
        for f in edges[1:]:
            if not _isomorphic_traces(f0, I[f0], f, I[f]):
                ok, wit = False, [_sorted(f0), _sorted(f)]
                break
    res["i"] = {"holds": ok, "witness": wit}
    # (ii)
    ok, wit = True, None
    cores = sorted({a for f in edges for a in I[f]}, key=_sorted)
    for a in cores:
        if len(max_sunflower_with_core(Fstar, a)) < r + 1:
            ok, wit = False, _sorted(a)
            break
    res["ii"] = {"holds": ok, "witness": wit}
    # (iii)
    ok, wit = True, None
    for f in edges:
        fam = I[f]
        bad = next(((a, b) for a in fam for b in fam if a & b not in fam), None)
        if bad:
            ok, wit = False, {"F": _sorted(f), "pair": [_sorted(bad[0]), _sorted(bad[1])]}
            break
    res["iii"] = {"holds": ok, "witness": wit}
    # (iv)
    ok, wit = True, None
    for f in edges:
        bad = next((a for a in I[f] if a.bit_count() not in Lset), None)
        if bad is not None:
            ok, wit = False, {"F": _sorted(f), "A": _sorted(bad)}
            break
    res["iv"] = {"holds": ok, "witness": wit}
    # (v)
    ok, wit = True, None
    for a, b in combinations(cores, 2):
        if (a & b).bit_count() not in Lset:
            ok, wit = False, [_sorted(a), _sorted(b)]
            break
    res["v"] = {"holds": ok, "witness": wit}
    return res


def check_furedi_properties(Fstar: SetFamily, L) -> dict:
    """Evaluate the five structure-theorem properties on a given family.

    I(F) = {F & F' : F' in Fstar} literally contains F itself, which makes
    (ii) and (iv) fail for every non-empty family.  Both readings are
    reported: ``literal`` keeps F' = F, ``proper`` requires F' != F.
    """
    Ls = L.L if isinstance(L, IntersectSpec) else tuple(L)
    return {
        "literal": _furedi_reading(Fstar, Ls, proper=False),
        "proper": _furedi_reading(Fstar, Ls, proper=True),
    }


# ---------------------------------------------------------------------------
# covering families for the non-trivial t-intersecting argument


@dataclass
class CoverFamilies:
    t_j: dict[int, list[int]]
    t_j_min: dict[int, list[int]]
    t_heavy: list[int]
    threshold: Fraction | int
    degrees: dict[int, int] = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "T": {j: [_sorted(m) for m in v] for j, v in self.t_j.items()},
            "T_min": {j: [_sorted(m) for m in v] for j, v in self.t_j_min.items()},
            "T_heavy": [_sorted(m) for m in self.t_heavy],
            "threshold": str(self.threshold),
        }


def cover_families(g: Graph, r: int, t: int, threshold=None) -> CoverFamilies:
    """T_j, its inclusion-minimal members T_j', and the heavy (t+1)-sets.

    ``threshold`` defaults to r n^(r-t-2) (exact rational when negative
    exponent).  Heavy means contained in strictly more than ``threshold``
    r-cliques.
    """
    if not r > t >= 1:
        raise ValueError("need r > t >= 1")
    if threshold is None:
        # an empty graph has no cliques; avoid 0 ** negative
        threshold = r * Fraction(g.n) ** (r - t - 2) if g.n else Fraction(0)
    H = clique_masks(g, r)
    t_j: dict[int, list[int]] = {}
    for j in range(t, r + 1):
        subs = set()
        for a in H:
            for c in combinations(_sorted(a), j):
                subs.add(mask_of(c))
        t_j[j] = sorted(
            (s for s in subs if all((s & b).bit_count() >= t for b in H)), key=_sorted
        )
    t_min: dict[int, list[int]] = {}
    for j in range(t + 1, r + 1):
        smaller = [s for k in range(t, j) for s in t_j[k]]
        t_min[j] = [T for T in t_j[j] if not any(s & T == s for s in smaller)]
    degrees = {T: sum(1 for a in H if a & T == T) for T in t_min.get(t + 1, [])}
    heavy = [T for T in t_min.get(t + 1, []) if degrees[T] > threshold]
    return CoverFamilies(t_j, t_min, heavy, threshold, degrees)


@dataclass
class HMDecomposition:
    clique_count: int
    bound: int
    inequality_holds: bool
    equality: bool
    n0: int
    n_i: dict[int, int]
    parts_free: dict[int, bool]
    witness: list[int] | None

    def as_dict(self) -> dict:
        return {
            "clique_count": self.clique_count,
            "bound": self.bound,
            "inequality_holds": self.inequality_holds,
            "equality": self.equality,
            "N0": _sorted(self.n0),
            "N_i": {" ".join(map(str, _sorted(T))): _sorted(m) for T, m in self.n_i.items()},
            "N_i_clique_free": {" ".join(map(str, _sorted(T))): ok for T, ok in self.parts_free.items()},
            "witness": self.witness,
        }


def hm_decomposition(g: Graph, r: int, t: int, D: Iterable[int]) -> HMDecomposition:
    """Split the r-cliques by their trace on the (t+2)-clique D.

    N^0 is the common neighbourhood of D; N^i the common neighbourhood of
    the i-th (t+1)-subset T_i of D outside D.  The bound
    N(K_{r-t-2}, G[N^0]) + sum_i N(K_{r-t-1}, G[N^i]) counts exactly the
    r-cliques meeting D in >= t+1 vertices.
    """
    ds = sorted(D)
    if len(ds) != t + 2:
        raise ValueError(f"D must have t + 2 = {t + 2} vertices")
    if not g.is_clique(ds):
        raise ValueError("D does not induce a clique")
    dmask = mask_of(ds)
    outside = ((1 << g.n) - 1) & ~dmask
    n0 = g.common_neighbors(ds)
    bound = count_cliques_in(g, r - t - 2, n0) if r - t - 2 >= 0 else 0
    n_i: dict[int, int] = {}
    free: dict[int, bool] = {}
    for T in combinations(ds, t + 1):
        tm = mask_of(T)
        ni = g.common_neighbors(T) & outside
        n_i[tm] = ni
        bound += count_cliques_in(g, r - t - 1, ni)
        free[tm] = count_cliques_in(g, r - t, ni) == 0
    cliques = clique_masks(g, r)
    low = next((a for a in cliques if (a & dmask).bit_count() <= t), None)
    total = len(cliques)
    return HMDecomposition(
        total, bound, total <= bound, total == bound, n0, n_i, free,
        _sorted(low) if low is not None else None,
    )

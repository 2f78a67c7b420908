"""Intersection-pattern predicates on uniform families.

Every predicate returns a :class:`Check`, which is truthy iff the property
holds and carries a witness when it does not.  Pairs are scanned in
lexicographic edge order, so the reported witness is always the first one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import TYPE_CHECKING, Any, Iterable

if TYPE_CHECKING:
    from .cliques import SetFamily


@dataclass(frozen=True, init=False)
class IntersectSpec:
    r: int
    L: tuple[int, ...]

    def __init__(self, r: int, L: Iterable[int]):
        ls = tuple(L)
        if any(b <= a for a, b in zip(ls, ls[1:])):
            ls_sorted = tuple(sorted(set(ls)))
            if len(ls_sorted) != len(ls):
                raise ValueError(f"L has repeated values: {list(ls)}")
            ls = ls_sorted
        if not ls:
            raise ValueError("L must be non-empty")
        if ls[0] < 0 or ls[-1] > r - 1:
            raise ValueError(f"L must lie in [0, {r - 1}]")
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "L", ls)

    @classmethod
    def parse(cls, r: int, text: str) -> "IntersectSpec":
        try:
            vals = [int(x) for x in text.split(",") if x.strip() != ""]
        except ValueError:
            raise ValueError(f"malformed L: {text!r}") from None
        if any(b <= a for a, b in zip(vals, vals[1:])):
            raise ValueError(f"L must be strictly increasing: {text!r}")
        return cls(r, vals)

    @classmethod
    def at_least(cls, r: int, t: int) -> "IntersectSpec":
        """[t, r-1], the t-intersecting condition."""
        return cls(r, range(t, r))

    @property
    def s(self) -> int:
        return len(self.L)

    def __contains__(self, k: int) -> bool:
        return k in self.L


@dataclass(frozen=True)
class Check:
    holds: bool
    witness: Any = None
    note: str | None = None
    extra: dict = field(default_factory=dict)

    def __bool__(self):
        return self.holds


def _sets(masks) -> list[list[int]]:
    out = []
    for m in masks:
        out.append([i for i in range(m.bit_length()) if m >> i & 1])
    return out


def intersection_spectrum(F: "SetFamily") -> set[int]:
    return {(a & b).bit_count() for a, b in combinations(F.edges, 2)}


def is_L_intersecting(F: "SetFamily", spec: IntersectSpec) -> Check:
    if F.r != spec.r:
        raise ValueError(f"uniformity mismatch: family has r={F.r}, spec has r={spec.r}")
    allowed = 0
    for ell in spec.L:
        allowed |= 1 << ell
    edges = F.edges
    for i, a in enumerate(edges):
        for b in edges[i + 1:]:
            if not allowed >> (a & b).bit_count() & 1:
                return Check(False, _sets((a, b)))
    return Check(True, note="vacuous" if len(edges) <= 1 else None)


def is_t_intersecting(F: "SetFamily", t: int) -> Check:
    """Every two distinct edges share at least ``t`` vertices.

    Families with at most one edge are t-intersecting vacuously; the
    returned check carries ``note="vacuous"`` in that case.
    """
    edges = F.edges
    for i, a in enumerate(edges):
        for b in edges[i + 1:]:
            if (a & b).bit_count() < t:
                return Check(False, _sets((a, b)))
    return Check(True, note="vacuous" if len(edges) <= 1 else None)


def common_intersection(F: "SetFamily") -> int:
    """Intersection of all edges as a bitmask; the ground set when F is empty."""
    m = (1 << F.ground_n) - 1
    for e in F.edges:
        m &= e
    return m


def is_nontrivial_t_intersecting(F: "SetFamily", t: int) -> Check:
    base = is_t_intersecting(F, t)
    if not base:
        return base
    common = common_intersection(F)
    if common.bit_count() >= t:
        return Check(False, _sets((common,))[0], note="common intersection has size >= t")
    return Check(True)


def is_t_cover_free(F: "SetFamily", t: int) -> Check:
    """No edge lies inside the union of at most ``t`` other edges.

    Witness on failure is ``(A, [B1, ..., Bk])`` with ``k <= t``.
    """
    if t < 1:
        raise ValueError("t must be at least 1")
    edges = F.edges
    for a in edges:
        meeting = [b for b in edges if b != a and b & a]
        for k in range(1, min(t, len(meeting)) + 1):
            for combo in combinations(meeting, k):
                u = 0
                for b in combo:
                    u |= b
                if a & u == a:
                    return Check(False, (_sets((a,))[0], _sets(combo)))
    return Check(True)

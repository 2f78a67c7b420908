"""Closed-form bounds, exact values and the modular-arithmetic machinery.

All arithmetic is exact (``int`` / ``Fraction``).  Constants that are only
known to exist (Füredi's c(r), the large-n thresholds) are never
represented as numbers; they show up only in ``applicability`` notes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Callable, Sequence

from .cliques import SetFamily, turan_clique_count

AP = "AP"
NOT_AP_LAST_GAP_DIFFERS = "NOT_AP_LAST_GAP_DIFFERS"
NOT_AP_LAST_GAP_EQUAL = "NOT_AP_LAST_GAP_EQUAL"


@dataclass(frozen=True)
class APClass:
    kind: str
    d: int | None = None
    flagged: str | None = None

    @property
    def is_ap(self) -> bool:
        return self.kind == AP


@dataclass(frozen=True)
class BoundReport:
    name: str
    value: Fraction | int
    applicability: str
    flags: tuple[str, ...] = ()

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "value": str(self.value),
            "applicability": self.applicability,
            "flags": list(self.flags),
        }


def _check_L(r: int, L: Sequence[int]) -> tuple[int, ...]:
    ls = tuple(L)
    if any(b <= a for a, b in zip(ls, ls[1:])):
        raise ValueError(f"L must be strictly increasing, got {list(ls)}")
    if ls and (ls[0] < 0 or ls[-1] > r - 1):
        raise ValueError(f"L must lie in [0, {r - 1}]")
    return ls


def classify_ap(r: int, L: Sequence[int]) -> APClass:
    """Do l_1, ..., l_s, r form an arithmetic progression?"""
    ls = _check_L(r, L)
    if not ls:
        raise ValueError("L must be non-empty")
    s = len(ls)
    flag = f"|L| = {s} is outside the classification's range (|L| not in {{1, r}})" if s in (1, r) else None
    seq = ls + (r,)
    gaps = {b - a for a, b in zip(seq, seq[1:])}
    if len(gaps) == 1:
        return APClass(AP, (r - ls[0]) // s, flag)
    if r - ls[-1] == ls[-1] - ls[-2]:
        return APClass(NOT_AP_LAST_GAP_EQUAL, None, flag)
    return APClass(NOT_AP_LAST_GAP_DIFFERS, None, flag)


def def_bound(n: int, r: int, L: Sequence[int]) -> BoundReport:
    """prod over l in L of (n - l) / (r - l)."""
    ls = _check_L(r, L)
    value = Fraction(1)
    for ell in ls:
        value *= Fraction(n - ell, r - ell)
    need = 2**r * r**3
    ok = r >= 3 and n >= need
    note = f"valid for r >= 3 and n >= 2^r r^3 = {need}; " + ("satisfied" if ok else "not satisfied at this n")
    return BoundReport("def_bound", value, note)


def helliar_liu_bound(n: int, r: int, L: Sequence[int]) -> BoundReport:
    ls = _check_L(r, L)
    if not 2 <= len(ls) <= r - 1:
        raise ValueError("bound needs 2 <= |L| <= r - 1 (it fails for |L| in {1, r})")
    value = (1 - Fraction(1, 3 * r)) * def_bound(n, r, ls).value
    need = (2 * r) ** (r + 1)
    ok = r >= 3 and n >= need
    note = f"valid for r >= 3 and n >= (2r)^(r+1) = {need}; " + ("satisfied" if ok else "not satisfied at this n")
    return BoundReport("helliar_liu_bound", value, note)


def ap_exact_value(n: int, r: int, L: Sequence[int]) -> BoundReport:
    """N(K_s, T(floor((n - l_1)/d), s)) for L + {r} an arithmetic progression."""
    ls = _check_L(r, L)
    cls_ = classify_ap(r, ls)
    if not cls_.is_ap:
        raise ValueError(f"L={list(ls)}, r={r} is not an arithmetic progression")
    s = len(ls)
    value = turan_clique_count((n - ls[0]) // cls_.d, s, s)
    flags = (cls_.flagged,) if cls_.flagged else ()
    return BoundReport(
        "ap_exact_value", value,
        "equals Psi_r(n, L) for n beyond an unspecified threshold; construction attains it for every n",
        flags,
    )


def ekr_value(n: int, r: int, t: int) -> BoundReport:
    """N(K_{r-t}, T(n - t, r - t)), the d = 1 case of ap_exact_value."""
    return BoundReport(
        "ekr_value", turan_clique_count(n - t, r - t, r - t),
        "equals Psi_r(n, [t, r-1]) for n beyond an unspecified threshold",
    )


def hm_value(n: int, r: int, t: int) -> BoundReport:
    if not (r > t >= 1 and r - t - 1 >= 1 and n >= t + 2):
        raise ValueError("need r > t >= 1, r - t - 1 >= 1 and n >= t + 2")
    k = r - t - 1
    value = turan_clique_count(n - t - 2, k, k - 1) + (t + 2) * turan_clique_count(n - t - 2, k, k)
    return BoundReport(
        "hm_value", value,
        "max r-cliques over non-trivial (K_r, t)-intersecting graphs for n beyond an unspecified threshold",
    )


Oracle = Callable[[int, int, tuple[int, ...]], "int | Fraction"]


def recursive_bound(
    n: int, r: int, L: Sequence[int], i: int, c, phi_oracle: Oracle, psi_oracle: Oracle
) -> BoundReport:
    """c^-1 max{Phi_r(n, L - l_i), Phi_{l_i}(n, {l_1..l_{i-1}}) Psi_{r-l_i}(n - l_i, shifted)}.

    ``i`` is 1-based.  Oracles are called as ``oracle(n, r, L)`` and may
    return exact values or upper bounds.  When l_i = 0 the first factor of
    the product is Phi_0(n, {}) := 1 and the result is flagged.
    """
    ls = _check_L(r, L)
    s = len(ls)
    if not 1 <= i <= s:
        raise ValueError(f"i must lie in [1, {s}]")
    c = Fraction(c)
    if c <= 0:
        raise ValueError("c must be positive")
    li = ls[i - 1]
    flags = []
    without = tuple(x for x in ls if x != li)
    first = phi_oracle(n, r, without)
    lower = ls[: i - 1]
    if li == 0:
        head = 1
        flags.append("degenerate index: l_i = 0 so Phi_0(n, {}) := 1")
    else:
        head = phi_oracle(n, li, lower)
    shifted = (0,) + tuple(x - li for x in ls[i:])
    tail = psi_oracle(n - li, r - li, shifted)
    value = max(Fraction(first), Fraction(head) * Fraction(tail)) / c
    return BoundReport(
        f"recursive_bound[i={i}]", value,
        "valid with c = c(r) from Füredi's structure theorem (non-constructive; caller-supplied)",
        tuple(flags),
    )


def best_recursive_bound(n, r, L, c, phi_oracle: Oracle, psi_oracle: Oracle) -> BoundReport:
    """Convenience loop over every i; returns the smallest bound."""
    reports = [recursive_bound(n, r, L, i, c, phi_oracle, psi_oracle) for i in range(1, len(L) + 1)]
    return min(reports, key=lambda b: b.value)


def is_prime_power(q: int) -> bool:
    if q < 2:
        return False
    p = 2
    while p * p <= q:
        if q % p == 0:
            while q % p == 0:
                q //= p
            return q == 1
        p += 1
    return True


def find_prime_power(l2: int, l3: int) -> int | None:
    """Smallest prime power q with q | l3 and q not dividing 2*l2.

    Returns None when no such q exists (which cannot happen when
    0 < l2 < l3 and l3 != 2*l2).
    """
    if l3 <= 0:
        return None
    for q in range(2, l3 + 1):
        if l3 % q == 0 and (2 * l2) % q != 0 and is_prime_power(q):
            return q
    return None


def mod_q_applicable(q: int, r: int, Lmod: Sequence[int]) -> bool:
    """r mod q lies outside the two residues ``Lmod``."""
    if not is_prime_power(q):
        raise ValueError(f"q={q} is not a prime power")
    lm = set(Lmod)
    if len(lm) != 2 or not all(0 <= x < q for x in lm):
        raise ValueError("Lmod must be two distinct residues in [0, q-1]")
    return r % q not in lm


def family_mod_q_ok(F: SetFamily, q: int, Lmod: Sequence[int]) -> bool:
    """Every pairwise intersection size reduces mod q into ``Lmod``."""
    lm = {x % q for x in Lmod}
    edges = F.edges
    for i, a in enumerate(edges):
        for b in edges[i + 1:]:
            if (a & b).bit_count() % q not in lm:
                return False
    return True


def mod_q_bound(n: int) -> int:
    """binom(n, 2), the size bound for families meeting both mod-q conditions."""
    return comb(n, 2)


def all_bounds(n: int, r: int, L: Sequence[int]) -> list[dict]:
    """Every bound applicable to (n, r, L), with notes for those that are not."""
    ls = _check_L(r, L)
    rows: list[dict] = []
    cls_ = classify_ap(r, ls)
    rows.append({
        "name": "classify_ap", "value": cls_.kind if not cls_.is_ap else f"AP({cls_.d})",
        "applicability": "classification of l_1..l_s, r", "flags": [cls_.flagged] if cls_.flagged else [],
    })
    rows.append(def_bound(n, r, ls).as_dict())
    try:
        rows.append(helliar_liu_bound(n, r, ls).as_dict())
    except ValueError as exc:
        rows.append({"name": "helliar_liu_bound", "value": None, "applicability": str(exc), "flags": ["not applicable"]})
    if cls_.is_ap:
        rows.append(ap_exact_value(n, r, ls).as_dict())
    else:
        note = "Psi_r(n, L) = o(n^s)" + ("; O(n^(s-1)) since the last two gaps agree" if cls_.kind == NOT_AP_LAST_GAP_EQUAL else "")
        rows.append({"name": "growth", "value": None, "applicability": note, "flags": ["asymptotic only"]})
    if ls and ls == tuple(range(ls[0], r)) and ls[0] >= 1:
        t = ls[0]
        rows.append(ekr_value(n, r, t).as_dict())
        rows.append({"name": "ekr_family_bound", "value": str(comb(n - t, r - t)),
                     "applicability": "Phi_r(n, [t, r-1]) for large n", "flags": []})
        if r - t - 1 >= 1 and n >= t + 2:
            rows.append(hm_value(n, r, t).as_dict())
    if len(ls) == 3 and ls[0] == 0 and r - ls[2] == ls[2] - ls[1] != ls[1]:
        q = find_prime_power(ls[1], ls[2])
        rows.append({"name": "mod_q_family_bound", "value": str(mod_q_bound(n)),
                     "applicability": f"every {{0,{ls[1]},{ls[2]}}}-intersecting r-graph; prime power q = {q}",
                     "flags": []})
    return rows

"""Closed-form edge bounds for hypergraphs without t disjoint edges, and the extremal constructions.

Two constructions have no t pairwise disjoint edges:

* cover: every k-set meeting a fixed (t-1)-set, C(n,k) - C(n-t+1,k) edges;
* clique: every k-subset of [kt-1], C(kt-1,k) edges.

The larger of the two is the expected maximum; ``erdos_bound`` reports both.
"""

from __future__ import annotations

import enum
from dataclasses import asdict, dataclass

from .errors import PreconditionError
from .family import ColoredFamilies, SetFamily, binom, checked, iter_kmasks


class Regime(str, enum.Enum):
    COVER = "CoverDominant"
    CLIQUE = "CliqueDominant"
    TIE = "Tie"


def _check_nkt(n, k, t):
    if k < 1 or t < 1 or n < 0:
        raise PreconditionError(f"need n >= 0, k >= 1, t >= 1; got n={n} k={k} t={t}")


def cover_bound(n: int, k: int, t: int) -> int:
    """Edges of the cover construction: C(n,k) - C(n-t+1,k)."""
    _check_nkt(n, k, t)
    if k > n or t - 1 > n:
        raise PreconditionError(f"cover bound needs k <= n and t-1 <= n; got n={n} k={k} t={t}")
    return checked(binom(n, k) - binom(n - t + 1, k))


def clique_bound(k: int, t: int) -> int:
    """Edges of the clique construction: C(kt-1, k)."""
    _check_nkt(0, k, t)
    return binom(checked(k * t) - 1, k)


def rainbow_threshold(n: int, k: int, t: int) -> int:
    """(t-1) * C(n-1, k-1). Families strictly larger than this always admit a rainbow t-matching."""
    _check_nkt(n, k, t)
    if n < 1:
        raise PreconditionError("rainbow threshold needs n >= 1")
    return checked((t - 1) * binom(n - 1, k - 1))


@dataclass(frozen=True)
class BoundReport:
    n: int
    k: int
    t: int
    cover_bound: int
    clique_bound: int
    erdos_bound: int
    rainbow_threshold: int
    regime: Regime
    in_theorem_range: bool
    in_cover_range: bool
    in_conjecture_range: bool

    def to_dict(self) -> dict:
        out = asdict(self)
        out["regime"] = self.regime.value
        return out


def erdos_bound(n: int, k: int, t: int) -> BoundReport:
    cover = cover_bound(n, k, t)
    clique = clique_bound(k, t)
    if cover > clique:
        regime = Regime.COVER
    elif clique > cover:
        regime = Regime.CLIQUE
    else:
        regime = Regime.TIE
    return BoundReport(
        n=n,
        k=k,
        t=t,
        cover_bound=cover,
        clique_bound=clique,
        erdos_bound=max(cover, clique),
        rainbow_threshold=rainbow_threshold(n, k, t),
        regime=regime,
        # cross-multiplied, never divided
        in_theorem_range=3 * k * k * t < n,
        in_cover_range=t * (k + 1) <= n,
        in_conjecture_range=t * k <= n,
    )


def degree_sum_gap_check(n: int, k: int, t: int) -> tuple[bool, int, int]:
    """Whether (t-1)^2 (3k-2) C(n-2,k-2) < C(n,k) - C(n-t+1,k).

    The left side caps the number of edges meeting t-1 disjoint edges once
    every degree is small; when it is strictly below the cover bound, a
    family above that bound has an edge avoiding them.
    """
    if k < 2 or t < 1:
        raise PreconditionError(f"gap check needs k >= 2 and t >= 1; got k={k} t={t}")
    lhs = checked((t - 1) ** 2 * (3 * k - 2) * binom(n - 2, k - 2))
    rhs = cover_bound(n, k, t)
    return lhs < rhs, lhs, rhs


def gen_cover_construction(n: int, k: int, t: int) -> SetFamily:
    """All k-subsets of [n] meeting {1, ..., t-1}."""
    _check_nkt(n, k, t)
    if t - 1 > n or k > n:
        raise PreconditionError(f"cover construction needs t-1 <= n and k <= n; got n={n} k={k} t={t}")
    core = (1 << (t - 1)) - 1
    return SetFamily(n, k, tuple(m for m in iter_kmasks(n, k) if m & core))


def gen_clique_construction(n: int, k: int, t: int) -> SetFamily:
    """All k-subsets of [kt-1], placed on the ground set [n]."""
    _check_nkt(n, k, t)
    size = k * t - 1
    if size > n:
        raise PreconditionError(f"clique construction needs kt-1 <= n; got kt-1={size} > n={n}")
    return SetFamily(n, k, tuple(iter_kmasks(size, k)))


def gen_star_families(n: int, k: int, t: int) -> ColoredFamilies:
    """t copies of the star at vertex 1 (all k-sets through 1)."""
    _check_nkt(n, k, t)
    if k > n or n < 1:
        raise PreconditionError(f"star families need 1 <= k <= n; got n={n} k={k}")
    star = SetFamily(n, k, tuple(m for m in iter_kmasks(n, k) if m & 1))
    return ColoredFamilies(n, (star,) * t)


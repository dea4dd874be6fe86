"""Ground sets, edges, uniform families and exact binomials.

Edges are sets of vertex ids in ``1..n``. Internally an edge is an ``int``
bitmask with bit ``v - 1`` standing for vertex ``v``; for equal-size sets the
numeric order of the masks is exactly colex order, so sorting masks gives the
canonical edge order for free.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence, Union

from .errors import (
    ArithmeticRangeError,
    ConsistencyError,
    UnsupportedUniformityError,
    ValidationError,
)

Edge = tuple  # strictly increasing tuple of 1-based vertex ids

INT_CAP = 1 << 128


def checked(value: int) -> int:
    """Return ``value`` unchanged, or raise if it escapes the 128-bit range."""
    if not -INT_CAP < value < INT_CAP:
        raise ArithmeticRangeError(f"exact result {value} does not fit in 128 bits")
    return value


def binom(n: int, k: int) -> int:
    """Exact binomial coefficient C(n, k); zero when k > n or k < 0.

    >>> binom(9, 3)
    84
    """
    if n < 0:
        raise ValueError(f"binom: n must be nonnegative, got {n}")
    if k < 0 or k > n:
        return 0
    return checked(math.comb(n, k))


# -- bitmask helpers ---------------------------------------------------------

def to_mask(edge: Iterable[int]) -> int:
    mask = 0
    for v in edge:
        mask |= 1 << (v - 1)
    return mask


def from_mask(mask: int) -> Edge:
    out = []
    v = 1
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return tuple(out)


def popcount(mask: int) -> int:
    return bin(mask).count("1")


# -- k-subset enumeration ------------------------------------------------------

def iter_kmasks(n: int, k: int) -> Iterator[int]:
    """All k-subsets of [n] as masks, in colex (= increasing numeric) order."""
    if not 0 <= k <= n:
        return
    if k == 0:
        yield 0
        return
    mask = (1 << k) - 1
    limit = 1 << n
    while mask < limit:
        yield mask
        # Gosper's hack: next integer with the same popcount
        low = mask & -mask
        ripple = mask + low
        mask = (((ripple ^ mask) >> 2) // low) | ripple


def enumerate_ksubsets(n: int, k: int) -> Iterator[Edge]:
    """Yield the C(n, k) k-subsets of [n] in colex order."""
    for mask in iter_kmasks(n, k):
        yield from_mask(mask)


def rank_ksubset(edge: Sequence[int]) -> int:
    """Colex rank of a k-subset; ``{1..k}`` has rank 0."""
    return sum(binom(c - 1, i) for i, c in enumerate(sorted(edge), start=1))


def unrank_ksubset(r: int, n: int, k: int) -> Edge:
    """Inverse of :func:`rank_ksubset` over the k-subsets of [n]."""
    total = binom(n, k)
    if not 0 <= r < total:
        raise ValidationError(f"rank {r} outside [0, C({n},{k})={total})")
    out = []
    top = n
    for i in range(k, 0, -1):
        # largest c with C(c-1, i) <= r
        c = top
        while binom(c - 1, i) > r:
            c -= 1
        out.append(c)
        r -= binom(c - 1, i)
        top = c - 1
    return tuple(reversed(out))


# -- families ----------------------------------------------------------------

@dataclass(frozen=True)
class SetFamily:
    """A k-uniform family of subsets of [n], stored as sorted edge masks.

    Build instances with :func:`make_family` (validating) or
    :meth:`from_masks` (for masks already known to be well formed).
    ``effective_n`` is bookkeeping metadata set by :func:`link`; it does not
    take part in equality.
    """

    n: int
    k: int
    masks: tuple = ()
    effective_n: int | None = field(default=None, compare=False)

    @classmethod
    def from_masks(cls, n: int, k: int, masks: Iterable[int], effective_n=None) -> "SetFamily":
        return cls(n, k, tuple(sorted(set(masks))), effective_n)

    @cached_property
    def mask_set(self) -> frozenset:
        return frozenset(self.masks)

    @property
    def edges(self) -> tuple:
        return tuple(from_mask(m) for m in self.masks)

    def __len__(self) -> int:
        return len(self.masks)

    def __iter__(self) -> Iterator[Edge]:
        return (from_mask(m) for m in self.masks)

    def __contains__(self, edge) -> bool:
        if isinstance(edge, int):
            return edge in self.mask_set
        return to_mask(edge) in self.mask_set

    def __repr__(self) -> str:
        shown = ", ".join("{" + ",".join(map(str, e)) + "}" for e in list(self)[:8])
        more = ", ..." if len(self) > 8 else ""
        return f"SetFamily(n={self.n}, k={self.k}, e={len(self)}: [{shown}{more}])"


def make_family(n: int, k: int, raw_edges: Iterable[Iterable[int]]) -> SetFamily:
    """Validate, deduplicate and colex-sort ``raw_edges`` into a SetFamily."""
    if k < 1:
        raise ValidationError(f"uniformity k must be >= 1, got {k}")
    if n < 0:
        raise ValidationError(f"ground-set size n must be >= 0, got {n}")
    masks = set()
    for raw in raw_edges:
        verts = list(raw)
        for v in verts:
            if not isinstance(v, int) or isinstance(v, bool):
                raise ValidationError(f"edge {sorted(verts)}: vertex {v!r} is not an integer")
            if v < 1:
                raise ValidationError(f"edge {sorted(verts)}: vertex {v} < 1")
            if v > n:
                raise ValidationError(f"edge {sorted(verts)}: vertex {v} > n={n}")
        if len(set(verts)) != len(verts):
            raise ValidationError(f"edge {sorted(verts)}: repeated vertex")
        if len(verts) != k:
            raise ValidationError(f"edge {sorted(verts)}: has {len(verts)} vertices, expected k={k}")
        masks.add(to_mask(verts))
    return SetFamily.from_masks(n, k, masks)


def complete_family(n: int, k: int) -> SetFamily:
    """All k-subsets of [n]."""
    return SetFamily(n, k, tuple(iter_kmasks(n, k)))


def _check_vertex(F: SetFamily, v: int) -> None:
    if not 1 <= v <= F.n:
        raise ValidationError(f"vertex {v} outside 1..{F.n}")


def degree(F: SetFamily, v: int) -> int:
    _check_vertex(F, v)
    bit = 1 << (v - 1)
    return sum(1 for m in F.masks if m & bit)


def degrees(F: SetFamily) -> list[int]:
    """Degrees indexed by vertex; index 0 is unused."""
    deg = [0] * (F.n + 1)
    for m in F.masks:
        while m:
            low = m & -m
            deg[low.bit_length()] += 1
            m ^= low
    return deg


def degree_sequence(F: SetFamily) -> list[tuple[int, int]]:
    """(vertex, degree) pairs, degree descending, ties by ascending vertex."""
    deg = degrees(F)
    return sorted(((v, deg[v]) for v in range(1, F.n + 1)), key=lambda p: (-p[1], p[0]))


def link(F: SetFamily, v: int, excluded: Iterable[int] = ()) -> SetFamily:
    """Edges through ``v`` that avoid ``excluded``, with ``v`` removed.

    The result stays on the ground set [n]; ``effective_n`` records
    ``n - |excluded| - 1``, the number of vertices it can actually use.
    """
    if F.k < 2:
        raise UnsupportedUniformityError(f"link needs k >= 2, family is {F.k}-uniform")
    _check_vertex(F, v)
    excluded = set(excluded)
    if v in excluded:
        raise ValidationError(f"vertex {v} is itself excluded")
    for u in excluded:
        _check_vertex(F, u)
    bit = 1 << (v - 1)
    block = to_mask(excluded)
    masks = [m ^ bit for m in F.masks if m & bit and not m & block]
    return SetFamily.from_masks(F.n, F.k - 1, masks, effective_n=F.n - len(excluded) - 1)


def relabel_mask(mask: int, table: dict[int, int]) -> int:
    """Map every vertex of ``mask`` through ``table`` (vertex -> vertex)."""
    out = 0
    for v in from_mask(mask):
        out |= 1 << (table[v] - 1)
    return out


def induced(F: SetFamily, keep: Iterable[int]) -> tuple[SetFamily, dict[int, int]]:
    """Sub-family on the vertices ``keep``, relabelled to 1..len(keep).

    Returns the new family and the map new id -> old id.
    """
    keep = sorted(set(keep))
    for v in keep:
        _check_vertex(F, v)
    forward = {old: new for new, old in enumerate(keep, start=1)}
    allowed = to_mask(keep)
    masks = [relabel_mask(m, forward) for m in F.masks if m & ~allowed == 0]
    mapping = {new: old for old, new in forward.items()}
    return SetFamily.from_masks(len(keep), F.k, masks), mapping


def delete_vertex(F: SetFamily, v: int) -> tuple[SetFamily, dict[int, int]]:
    """Drop ``v`` and every edge through it; ids above ``v`` shift down by one.

    >>> H, back = delete_vertex(make_family(3, 2, [(1, 2), (2, 3)]), 1)
    >>> H.edges, back
    (((1, 2),), {1: 2, 2: 3})
    """
    _check_vertex(F, v)
    return induced(F, [u for u in range(1, F.n + 1) if u != v])


@dataclass(frozen=True)
class ColoredFamilies:
    """An ordered list of families F_1..F_t over a common ground set [n]."""

    n: int
    families: tuple

    def __post_init__(self):
        fams = tuple(self.families)
        object.__setattr__(self, "families", fams)
        if not fams:
            raise ValidationError("need at least one family (t >= 1)")
        for idx, F in enumerate(fams):
            if F.n != self.n:
                raise ValidationError(f"family {idx + 1} has n={F.n}, expected n={self.n}")

    @classmethod
    def of(cls, families: Sequence[SetFamily]) -> "ColoredFamilies":
        if not families:
            raise ValidationError("need at least one family (t >= 1)")
        return cls(families[0].n, tuple(families))

    @property
    def t(self) -> int:
        return len(self.families)

    @property
    def ks(self) -> tuple:
        return tuple(F.k for F in self.families)

    def __getitem__(self, idx: int) -> SetFamily:
        return self.families[idx]

    def __iter__(self):
        return iter(self.families)

    def __len__(self) -> int:
        return len(self.families)


# -- matchings ---------------------------------------------------------------

@dataclass(frozen=True)
class Matching:
    """Pairwise-disjoint edges, each tagged with the (0-based) index of its family."""

    entries: tuple = ()

    def __post_init__(self):
        object.__setattr__(
            self, "entries", tuple((int(i), tuple(sorted(e))) for i, e in self.entries)
        )

    @classmethod
    def from_masks(cls, pairs: Iterable[tuple[int, int]]) -> "Matching":
        return cls(tuple(sorted((i, from_mask(m)) for i, m in pairs)))

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    @property
    def edges(self) -> tuple:
        return tuple(e for _, e in self.entries)

    @property
    def masks(self) -> tuple:
        return tuple(to_mask(e) for _, e in self.entries)

    @property
    def vertices(self) -> frozenset:
        return frozenset(v for e in self.edges for v in e)

    def problems(self, target: Union[SetFamily, ColoredFamilies], size: int | None = None) -> list[str]:
        """Every way this matching fails to be valid for ``target``; empty if valid.

        Against a SetFamily all entries must use index 0 and any size is
        allowed unless ``size`` is given. Against ColoredFamilies the matching
        must be rainbow (distinct family indices).
        """
        out = []
        if size is not None and len(self) != size:
            out.append(f"size {len(self)} != {size}")
        seen = 0
        for idx, e in self.entries:
            m = to_mask(e)
            if m & seen:
                out.append(f"edge {e} meets an earlier edge")
            seen |= m
        if isinstance(target, SetFamily):
            for idx, e in self.entries:
                if idx != 0:
                    out.append(f"edge {e} tagged with family {idx}, expected 0")
                if e not in target:
                    out.append(f"edge {e} not in family")
        else:
            idxs = [i for i, _ in self.entries]
            if len(set(idxs)) != len(idxs):
                out.append(f"family indices {idxs} not distinct")
            for idx, e in self.entries:
                if not 0 <= idx < target.t:
                    out.append(f"family index {idx} out of range")
                elif e not in target[idx]:
                    out.append(f"edge {e} not in family {idx}")
        return out

    def is_valid(self, target, size: int | None = None) -> bool:
        return not self.problems(target, size)

    def check(self, target, size: int | None = None) -> "Matching":
        errs = self.problems(target, size)
        if errs:
            raise ConsistencyError("invalid matching: " + "; ".join(errs))
        return self

"""Portable seeded randomness for instance generation.

The generator is SplitMix64, chosen because its update rule is short enough to
reimplement bit-for-bit in any language, so a failing seed reproduces
everywhere. With all arithmetic modulo 2**64::

    state = state + 0x9E3779B97F4A7C15
    z = state
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB
    output z ^ (z >> 31)

Bounded integers use rejection sampling (no modulo bias); subsets of colex
positions use Floyd's algorithm.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ValidationError
from .family import ColoredFamilies, SetFamily, binom, iter_kmasks, to_mask, unrank_ksubset

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + GOLDEN) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        """Uniform integer in [0, bound)."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        limit = (1 << 64) - (1 << 64) % bound
        while True:
            x = self.next_u64()
            if x < limit:
                return x % bound

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in [lo, hi], inclusive."""
        return lo + self.below(hi - lo + 1)

    def random(self) -> float:
        """Uniform float in [0, 1) with 53 random bits."""
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def choice(self, seq):
        return seq[self.below(len(seq))]

    def sample_positions(self, total: int, m: int) -> list[int]:
        """m distinct integers from [0, total), sorted (Floyd's algorithm)."""
        if not 0 <= m <= total:
            raise ValidationError(f"cannot draw {m} distinct positions from {total}")
        picked = set()
        for j in range(total - m, total):
            r = self.below(j + 1)
            picked.add(j if r in picked else r)
        return sorted(picked)

    def shuffle(self, items: list) -> list:
        for i in range(len(items) - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]
        return items


def derive_seed(seed: int, *salt: int) -> int:
    """Independent stream seed for (seed, salt...), e.g. one per suite case."""
    rng = SplitMix64(seed)
    out = rng.next_u64()
    for s in salt:
        rng = SplitMix64(out ^ ((s * GOLDEN) & MASK64))
        out = rng.next_u64()
    return out


@dataclass(frozen=True)
class RandomFamilySpec:
    """Either ``m`` (exact edge count) or ``p`` (independent inclusion probability)."""

    n: int
    k: int
    m: int | None = None
    p: float | None = None
    seed: int = 0


def random_family(spec: RandomFamilySpec, rng: SplitMix64 | None = None) -> SetFamily:
    """Uniform random k-uniform family; a pure function of ``spec`` when ``rng`` is omitted."""
    rng = rng or SplitMix64(spec.seed)
    total = binom(spec.n, spec.k)
    if (spec.m is None) == (spec.p is None):
        raise ValidationError("give exactly one of m (edge count) or p (probability)")
    if spec.m is not None:
        if not 0 <= spec.m <= total:
            raise ValidationError(f"cannot place {spec.m} edges among C({spec.n},{spec.k})={total}")
        ranks = rng.sample_positions(total, spec.m)
        masks = [to_mask(unrank_ksubset(r, spec.n, spec.k)) for r in ranks]
    else:
        masks = [mk for mk in iter_kmasks(spec.n, spec.k) if rng.random() < spec.p]
    return SetFamily.from_masks(spec.n, spec.k, masks)


def random_colored(specs, rng: SplitMix64 | None = None) -> ColoredFamilies:
    """One random family per spec; all specs must share n."""
    specs = list(specs)
    fams = tuple(random_family(s, rng) for s in specs)
    return ColoredFamilies.of(fams)

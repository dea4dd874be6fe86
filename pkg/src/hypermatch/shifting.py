"""The (i, j)-shift, compression toward the top vertex, and matching transport.

``S_ij`` (with ``j < i``) replaces ``i`` by ``j`` in an edge when ``j`` is
absent and the replacement is not already in the family. Shifting never
creates a rainbow matching; :func:`pull_back_matching` makes that
constructive by turning a matching of shifted families back into one of the
originals. :func:`lift_decomposed_matching` does the same for the split of a
compressed family into the parts with and without its top vertex.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .errors import ConsistencyError, PreconditionError, ValidationError
from .family import ColoredFamilies, Matching, SetFamily, from_mask, to_mask


class ShiftOp(NamedTuple):
    """``S_ij``: move element ``i`` down to ``j`` (requires ``j < i``)."""

    i: int
    j: int

    def validate(self, n: int) -> "ShiftOp":
        if not 1 <= self.j < self.i <= n:
            raise ValidationError(f"shift S_{self.i},{self.j} needs 1 <= j < i <= n={n}")
        return self


def shift_masks(masks: Sequence[int], op: ShiftOp) -> tuple:
    bi = 1 << (op.i - 1)
    bj = 1 << (op.j - 1)
    present = set(masks)
    out = []
    for m in masks:
        if m & bi and not m & bj:
            moved = m ^ bi ^ bj
            if moved not in present:
                m = moved
        out.append(m)
    return tuple(sorted(out))


def shift_family(F: SetFamily, op: ShiftOp) -> SetFamily:
    op.validate(F.n)
    return SetFamily(F.n, F.k, shift_masks(F.masks, op))


def apply_shift(fams: ColoredFamilies, op: ShiftOp) -> ColoredFamilies:
    """Apply ``S_ij`` to every family independently."""
    op.validate(fams.n)
    return ColoredFamilies(fams.n, tuple(shift_family(F, op) for F in fams))


@dataclass(frozen=True)
class ShiftTrace:
    """Effective shifts in the order applied, each with the families just before it.

    Only shifts that changed at least one family are recorded; a skipped shift
    is the identity and contributes nothing to a pullback.
    """

    initial: ColoredFamilies
    steps: tuple  # ((ShiftOp, ColoredFamilies before the shift), ...)
    final: ColoredFamilies

    def __len__(self) -> int:
        return len(self.steps)

    def replay(self) -> ColoredFamilies:
        current = self.initial
        for op, before in self.steps:
            if before != current:
                raise ConsistencyError(f"trace snapshot before {op} does not match replay")
            current = apply_shift(current, op)
        if current != self.final:
            raise ConsistencyError("trace replay does not reproduce the final families")
        return current

    def report(self) -> dict:
        """Plain-data summary: each op with the family sizes it acted on."""
        return {
            "initial_sizes": [len(F) for F in self.initial],
            "steps": [
                {"i": op.i, "j": op.j, "sizes": [len(F) for F in before]}
                for op, before in self.steps
            ],
            "final_sizes": [len(F) for F in self.final],
        }


def shift_with_trace(fams: ColoredFamilies, ops) -> tuple[ColoredFamilies, ShiftTrace]:
    """Apply ``ops`` in order, recording the effective ones."""
    steps = []
    current = fams
    for op in ops:
        nxt = apply_shift(current, ShiftOp(*op))
        if nxt != current:
            steps.append((ShiftOp(*op), current))
            current = nxt
    return current, ShiftTrace(fams, tuple(steps), current)


def is_compressed(fams: ColoredFamilies, target: int | None = None) -> bool:
    """True when every family is stable under every ``S_{target,j}``, ``j < target``."""
    target = fams.n if target is None else target
    for j in range(1, target):
        op = ShiftOp(target, j)
        for F in fams:
            if shift_masks(F.masks, op) != F.masks:
                return False
    return True


def compress_to_target(fams: ColoredFamilies, target: int | None = None):
    """Apply ``S_{n,1}, ..., S_{n,n-1}`` in rounds until a round changes nothing.

    Returns ``(compressed families, ShiftTrace)``.
    """
    n = fams.n
    target = n if target is None else target
    if target != n:
        raise PreconditionError(f"compression target must be the top vertex n={n}, got {target}")
    steps = []
    current = fams
    changed = True
    while changed:
        changed = False
        for j in range(1, n):
            op = ShiftOp(n, j)
            nxt = apply_shift(current, op)
            if nxt != current:
                steps.append((op, current))
                current = nxt
                changed = True
    return current, ShiftTrace(fams, tuple(steps), current)


@dataclass(frozen=True)
class Decomposition:
    """Split of a family on [n] by containment of ``n``; both parts live on [n-1]."""

    with_n: SetFamily
    without_n: SetFamily
    origin: int

    def side(self, use_with: bool) -> SetFamily:
        return self.with_n if use_with else self.without_n


def decompose(F: SetFamily) -> Decomposition:
    """``with_n`` holds ``e - {n}`` for edges through ``n``; ``without_n`` the rest.

    For a 1-uniform family containing ``{n}``, ``with_n`` is the 0-uniform
    family holding the empty set.
    """
    n = F.n
    if n < 1:
        raise ValidationError("cannot decompose a family on an empty ground set")
    top = 1 << (n - 1)
    with_n = [m ^ top for m in F.masks if m & top]
    without_n = [m for m in F.masks if not m & top]
    return Decomposition(
        SetFamily.from_masks(n - 1, F.k - 1, with_n),
        SetFamily.from_masks(n - 1, F.k, without_n),
        n,
    )


def decomposed_instance(fams: ColoredFamilies, sides: Sequence[bool]) -> ColoredFamilies:
    """Families on [n-1]: ``with_n`` parts where ``sides[i]`` is true, ``without_n`` otherwise."""
    if len(sides) != fams.t:
        raise ValidationError(f"need {fams.t} side flags, got {len(sides)}")
    parts = [decompose(F).side(bool(s)) for F, s in zip(fams, sides)]
    return ColoredFamilies(fams.n - 1, tuple(parts))


def pull_back_matching(trace: ShiftTrace, m: Matching) -> Matching:
    """Turn a rainbow matching of ``trace.final`` into one of ``trace.initial``.

    Steps are undone last to first. Within a step at most one matching edge
    can be a shifted image (it is the one containing ``j``); it is restored
    to its preimage, and if that reintroduces ``i`` into another edge, that
    edge is swapped for its own ``j``-version, which the blocked shift
    guarantees is present.
    """
    m.check(trace.final)
    entries = [(idx, to_mask(e)) for idx, e in m]
    for op, before in reversed(trace.steps):
        bi = 1 << (op.i - 1)
        bj = 1 << (op.j - 1)
        moved = [pos for pos, (idx, g) in enumerate(entries) if g not in before[idx].mask_set]
        if len(moved) > 1:
            raise ConsistencyError(f"undoing {op}: {len(moved)} edges are shifted images, expected <= 1")
        if moved:
            pos = moved[0]
            idx, g = entries[pos]
            if not (g & bj and not g & bi):
                raise ConsistencyError(f"undoing {op}: edge {from_mask(g)} cannot be a shifted image")
            pre = g ^ bj ^ bi
            if pre not in before[idx].mask_set:
                raise ConsistencyError(f"undoing {op}: preimage {from_mask(pre)} missing from family {idx}")
            entries[pos] = (idx, pre)
            for other, (jdx, h) in enumerate(entries):
                if other != pos and h & bi:
                    swapped = h ^ bi ^ bj
                    if swapped not in before[jdx].mask_set:
                        raise ConsistencyError(
                            f"undoing {op}: blocked image {from_mask(swapped)} missing from family {jdx}"
                        )
                    entries[other] = (jdx, swapped)
        union = 0
        for _, g in entries:
            if g & union:
                raise ConsistencyError(f"undoing {op}: matching edges no longer disjoint")
            union |= g
    return Matching.from_masks(entries).check(trace.initial, size=len(m))


def lift_decomposed_matching(
    fams: ColoredFamilies, sides: Sequence[bool], m: Matching
) -> Matching:
    """Extend a matching of the decomposed instance to one of ``fams`` on [n].

    Each ``with_n``-side edge gets a fresh vertex outside the matching: the
    lowest-indexed such family takes ``n`` itself, the others take the
    smallest unused ids. Stability of ``fams`` under every ``S_{n,j}``
    guarantees the extended edges are present.
    """
    n = fams.n
    if sum(fams.ks) > n:
        raise PreconditionError(f"sum of uniformities {sum(fams.ks)} exceeds n={n}")
    if not is_compressed(fams):
        raise PreconditionError("families are not stable under every S_{n,j}")
    reduced = decomposed_instance(fams, sides)
    m.check(reduced, size=fams.t)

    used = 0
    for e in m.masks:
        used |= e
    with_idx = sorted(idx for idx, _ in m if sides[idx])
    free = [v for v in range(1, n) if not used >> (v - 1) & 1]
    fresh = {}
    for pos, idx in enumerate(with_idx):
        fresh[idx] = n if pos == 0 else free[pos - 1]

    out = []
    for idx, e in m:
        g = to_mask(e)
        if sides[idx]:
            g |= 1 << (fresh[idx] - 1)
        if g not in fams[idx].mask_set:
            raise ConsistencyError(f"lifted edge {from_mask(g)} missing from family {idx}")
        out.append((idx, g))
    return Matching.from_masks(out).check(fams, size=fams.t)

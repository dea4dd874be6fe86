"""Exact matching searches by branch and bound.

Every search runs under a :class:`SolverLimits` budget. Running out of budget
raises :class:`~hypermatch.errors.ResourceError`; a search never reports "no
matching" without having exhausted the space.
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass, field

from .errors import PreconditionError, ResourceError, ValidationError
from .family import ColoredFamilies, Matching, SetFamily, binom, iter_kmasks, popcount

ENV_MAX_NODES = "HYPERMATCH_MAX_NODES"
ENV_MAX_MILLIS = "HYPERMATCH_MAX_MILLIS"


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    return int(raw) if raw else default


@dataclass(frozen=True)
class SolverLimits:
    """Search budget. Defaults can be overridden with HYPERMATCH_MAX_NODES / HYPERMATCH_MAX_MILLIS."""

    max_nodes: int = field(default_factory=lambda: _env_int(ENV_MAX_NODES, 50_000_000))
    max_millis: int = field(default_factory=lambda: _env_int(ENV_MAX_MILLIS, 600_000))

    def __post_init__(self):
        if self.max_nodes <= 0 or self.max_millis <= 0:
            raise ValidationError("solver limits must be positive")


class _Budget:
    def __init__(self, limits: SolverLimits | None):
        self.limits = limits or SolverLimits()
        self.nodes = 0
        self._deadline = time.monotonic() + self.limits.max_millis / 1000.0

    def tick(self):
        self.nodes += 1
        if self.nodes > self.limits.max_nodes:
            raise ResourceError(f"search exceeded {self.limits.max_nodes} nodes")
        if self.nodes & 1023 == 0 and time.monotonic() > self._deadline:
            raise ResourceError(f"search exceeded {self.limits.max_millis} ms")


@dataclass(frozen=True)
class SearchResult:
    """A solver answer plus the number of search nodes it took."""

    found: bool
    matching: Matching | None
    nodes: int


def greedy_matching(F: SetFamily) -> Matching:
    """Maximal matching: scan edges in colex order, keep each one that fits."""
    used = 0
    picked = []
    for m in F.masks:
        if not m & used:
            picked.append((0, m))
            used |= m
    return Matching.from_masks(picked)


def _max_matching_masks(masks, k, budget, target=None, lower=()):
    """Largest set of pairwise disjoint masks; stops early once ``target`` is reached."""
    best = list(lower)
    cap = len(masks) if target is None else min(target, len(masks))

    def search(cands, chosen):
        nonlocal best
        budget.tick()
        if len(chosen) > len(best):
            best = list(chosen)
        if len(best) >= cap or not cands:
            return
        union = 0
        for c in cands:
            union |= c
        bound = len(chosen) + min(len(cands), popcount(union) // k)
        if bound <= len(best):
            return
        # branch on the lowest vertex still coverable: matched by one of its edges, or left out
        v = union & -union
        for c in cands:
            if c & v:
                chosen.append(c)
                search([d for d in cands if not d & c], chosen)
                chosen.pop()
                if len(best) >= cap:
                    return
        search([d for d in cands if not d & v], chosen)

    search(list(masks), [])
    return best


def max_matching(F: SetFamily, limits: SolverLimits | None = None) -> tuple[int, Matching]:
    """Matching number nu(F) with a witness of that size."""
    nu, witness, _ = max_matching_stats(F, limits)
    return nu, witness


def max_matching_stats(F: SetFamily, limits: SolverLimits | None = None):
    if F.k < 1:
        raise ValidationError("max_matching needs k >= 1")
    budget = _Budget(limits)
    best = _max_matching_masks(F.masks, F.k, budget, lower=greedy_matching(F).masks)
    return len(best), Matching.from_masks((0, m) for m in best), budget.nodes


def has_t_matching(F: SetFamily, t: int, limits: SolverLimits | None = None):
    """``(True, witness of size t)`` if F has t pairwise disjoint edges, else ``(False, None)``."""
    res = t_matching_search(F, t, limits)
    return res.found, res.matching


def t_matching_search(F: SetFamily, t: int, limits: SolverLimits | None = None) -> SearchResult:
    if F.k < 1:
        raise ValidationError("has_t_matching needs k >= 1")
    budget = _Budget(limits)
    if t <= 0:
        return SearchResult(True, Matching(), 0)
    best = _max_matching_masks(F.masks, F.k, budget, target=t)
    if len(best) >= t:
        return SearchResult(True, Matching.from_masks((0, m) for m in best[:t]), budget.nodes)
    return SearchResult(False, None, budget.nodes)


def rainbow_matching(fams: ColoredFamilies, limits: SolverLimits | None = None) -> Matching | None:
    """A rainbow matching using one edge from every family, or None if none exists."""
    return rainbow_search(fams, limits).matching


def rainbow_search(fams: ColoredFamilies, limits: SolverLimits | None = None) -> SearchResult:
    """Backtracking over colors in ascending family size with forward checking."""
    budget = _Budget(limits)
    order = sorted(range(fams.t), key=lambda i: (len(fams[i]), i))
    lists = [list(fams[i].masks) for i in order]
    chosen = []

    def search(pos, remaining):
        budget.tick()
        if pos == len(order):
            return True
        for c in remaining[0]:
            rest = []
            for lst in remaining[1:]:
                filtered = [d for d in lst if not d & c]
                if not filtered:
                    break
                rest.append(filtered)
            else:
                chosen.append((order[pos], c))
                if search(pos + 1, rest):
                    return True
                chosen.pop()
        return False

    if any(not lst for lst in lists):
        return SearchResult(False, None, 1)
    if search(0, lists):
        return SearchResult(True, Matching.from_masks(chosen), budget.nodes)
    return SearchResult(False, None, budget.nodes)


ORACLE_MAX_EDGES = 24


def max_edges_no_t_matching(n: int, k: int, t: int, limits: SolverLimits | None = None):
    """Exact max of |F| over k-uniform F on [n] with no t pairwise disjoint edges.

    Exhaustive branch and bound over all subsets of the C(n, k) possible
    edges, so only for C(n, k) <= 24. Returns ``(max, extremal family)``.
    """
    total = binom(n, k)
    if k < 1 or t < 1:
        raise ResourceError(f"oracle needs k >= 1 and t >= 1, got k={k} t={t}")
    if total > ORACLE_MAX_EDGES:
        raise ResourceError(f"C({n},{k})={total} exceeds the oracle limit of {ORACLE_MAX_EDGES} edges")
    budget = _Budget(limits)
    universe = list(iter_kmasks(n, k))
    best = []

    def creates_t_matching(chosen, e):
        # adding e gives a t-matching iff the chosen edges avoiding e hold t-1 disjoint ones
        if t == 1:
            return True
        avoid = [c for c in chosen if not c & e]
        if len(avoid) < t - 1:
            return False
        return len(_max_matching_masks(avoid, k, budget, target=t - 1)) >= t - 1

    def search(pos, chosen):
        nonlocal best
        budget.tick()
        if len(chosen) > len(best):
            best = list(chosen)
        addable = [e for e in universe[pos:] if not creates_t_matching(chosen, e)]
        if len(chosen) + len(addable) <= len(best) or not addable:
            return
        e = addable[0]
        idx = universe.index(e, pos)
        chosen.append(e)
        search(idx + 1, chosen)
        chosen.pop()
        # exclusion branch: e stays out, continue past it
        search(idx + 1, chosen)

    search(0, [])
    return len(best), SetFamily(n, k, tuple(sorted(best)))

"""Constructive extraction of t disjoint (rainbow) edges from large families.

Each extractor takes an instance satisfying a size or degree hypothesis
under which t disjoint edges are guaranteed, and actually finds them by
walking the inductive argument:

* :func:`rainbow_by_lemma3` -- families F_i of k_i-sets with
  |F_i| > (t-1) C(n-1, k_i-1) and n >= sum k_i. Induction on t and n via
  compression toward n, splitting off n, and transporting the matching back.
* :func:`t_disjoint_by_cor1` -- t centers of degree > 2(t-1) C(n-2, k-2):
  the links of the centers clear the rainbow threshold.
* :func:`t_disjoint_by_thm1` -- a k-uniform family with more than
  C(n,k) - C(n-t+1,k) edges and 3k^2 t < n, by a three-way degree case split.
* :func:`rainbow_by_thm2` -- the same for t families, one edge from each.

Every returned matching is verified against the input before it is handed
back. A failed internal step raises ConsistencyError rather than returning
something unchecked.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .bounds import cover_bound
from .errors import ConsistencyError, PreconditionError
from .family import (
    ColoredFamilies,
    Matching,
    SetFamily,
    binom,
    degree_sequence,
    delete_vertex,
    induced,
    link,
    relabel_mask,
    to_mask,
)
from .shifting import (
    compress_to_target,
    decompose,
    decomposed_instance,
    lift_decomposed_matching,
    pull_back_matching,
)
from .solver import SolverLimits, rainbow_search, t_matching_search


class CaseTag(str, enum.Enum):
    HIGH_DEGREE = "HighDegreeVertex"
    TOP_DEGREE = "TopDegreeLemma3"
    GAP_SWEEP = "GapSweep"
    SHIFT_COMPRESS = "ShiftCompress"
    SINGLETON_BASE = "SingletonBase"
    MINIMAL_N_BASE = "MinimalNBase"
    SPLIT_RECURSE = "SplitRecurse"


@dataclass(frozen=True)
class ExtractionReport:
    matching: Matching
    recursion_depth: int
    case_trace: tuple

    def to_dict(self) -> dict:
        return {
            "matching": [{"family": idx + 1, "edge": list(e)} for idx, e in self.matching],
            "recursion_depth": self.recursion_depth,
            "case_trace": [tag.value for tag in self.case_trace],
        }


@dataclass
class _Audit:
    limits: SolverLimits | None = None
    trace: list = field(default_factory=list)
    depth: int = 0

    def tag(self, case: CaseTag, depth: int) -> None:
        self.trace.append(case)
        self.depth = max(self.depth, depth)

    def report(self, m: Matching) -> ExtractionReport:
        return ExtractionReport(m, self.depth, tuple(self.trace))


def _internal(problem: str | None, where: str) -> None:
    # a recursive instance failing its hypotheses means the induction step is broken
    if problem is not None:
        raise ConsistencyError(f"{where}: derived instance violates its hypotheses: {problem}")


def _union(masks) -> int:
    out = 0
    for m in masks:
        out |= m
    return out


# -- rainbow threshold --------------------------------------------------------

def threshold_problem(fams: ColoredFamilies) -> str | None:
    n, t = fams.n, fams.t
    if sum(fams.ks) > n:
        return f"sum of uniformities {sum(fams.ks)} exceeds n={n}"
    for idx, F in enumerate(fams):
        if F.k < 1:
            return f"family {idx + 1} has uniformity {F.k} < 1"
        need = (t - 1) * binom(n - 1, F.k - 1)
        if len(F) <= need:
            return f"family {idx + 1}: |F|={len(F)} is not > (t-1)*C(n-1,k-1)={need}"
    return None


def rainbow_by_lemma3(fams: ColoredFamilies, limits: SolverLimits | None = None) -> ExtractionReport:
    """Rainbow t-matching for families above the (t-1) C(n-1, k_i-1) threshold."""
    problem = threshold_problem(fams)
    if problem is not None:
        raise PreconditionError(problem)
    audit = _Audit(limits)
    m = _rainbow_rec(fams, audit, 0)
    return audit.report(m.check(fams, size=fams.t))


def _rainbow_rec(fams: ColoredFamilies, audit: _Audit, depth: int) -> Matching:
    n, t = fams.n, fams.t
    if t == 1:
        audit.tag(CaseTag.SINGLETON_BASE, depth)
        return Matching.from_masks([(0, fams[0].masks[0])])

    if sum(fams.ks) == n:
        # the edges must tile [n]; existence is guaranteed here, the search only locates it
        audit.tag(CaseTag.MINIMAL_N_BASE, depth)
        found = rainbow_search(fams, audit.limits).matching
        if found is None:
            raise ConsistencyError(f"no rainbow matching at minimal n={n} despite size hypothesis")
        return found

    compressed, trace = compress_to_target(fams)
    audit.tag(CaseTag.SHIFT_COMPRESS, depth)
    top = 1 << (n - 1)

    singleton = next(
        (idx for idx, F in enumerate(compressed) if F.k == 1 and top in F.mask_set), None
    )
    audit.tag(CaseTag.SPLIT_RECURSE, depth)
    if singleton is not None:
        # {n} serves family `singleton`; the others only need edges inside [n-1]
        others = [idx for idx in range(t) if idx != singleton]
        sub = ColoredFamilies(n - 1, tuple(decompose(compressed[i]).without_n for i in others))
        _internal(threshold_problem(sub), "singleton split")
        inner = _rainbow_rec(sub, audit, depth + 1)
        entries = [(others[idx], to_mask(e)) for idx, e in inner] + [(singleton, top)]
        lifted = Matching.from_masks(entries).check(compressed, size=t)
    else:
        sides = []
        for idx, F in enumerate(compressed):
            parts = decompose(F)
            if len(parts.without_n) > (t - 1) * binom(n - 2, F.k - 1):
                sides.append(False)
            elif len(parts.with_n) > (t - 1) * binom(n - 2, F.k - 2):
                sides.append(True)
            else:
                raise ConsistencyError(f"family {idx + 1}: neither part of the split is large enough")
        sub = decomposed_instance(compressed, sides)
        _internal(threshold_problem(sub), "split on n")
        inner = _rainbow_rec(sub, audit, depth + 1)
        lifted = lift_decomposed_matching(compressed, sides, inner)
    return pull_back_matching(trace, lifted)


# -- link reduction shared by the center-based extractors -------------------

def _rainbow_through_centers(families, centers, audit, depth) -> list[tuple[int, int]]:
    """Edges e_i through centers[i] from families[i], pairwise disjoint.

    Builds each link on the ground set without the centers and runs the
    rainbow-threshold extraction there.
    """
    n, k, t = families[0].n, families[0].k, len(families)
    keep = [v for v in range(1, n + 1) if v not in set(centers)]
    links = []
    mapping = None
    for idx, (F, v) in enumerate(zip(families, centers)):
        L = link(F, v, [c for c in centers if c != v])
        reduced, mapping = induced(L, keep)
        need = (t - 1) * binom(n - t - 1, k - 2)
        if len(reduced) <= need:
            raise ConsistencyError(
                f"link of center {v} in family {idx + 1} has {len(reduced)} edges, expected > {need}"
            )
        links.append(reduced)
    sub = ColoredFamilies(n - t, tuple(links))
    _internal(threshold_problem(sub), "link reduction")
    inner = _rainbow_rec(sub, audit, depth + 1)
    return [
        (idx, relabel_mask(to_mask(e), mapping) | 1 << (centers[idx] - 1)) for idx, e in inner
    ]


def centers_problem(F: SetFamily, t: int, centers) -> str | None:
    n, k = F.n, F.k
    if k < 2:
        return f"need k >= 2, family is {k}-uniform"
    if t < 1:
        return f"need t >= 1, got {t}"
    centers = list(centers)
    if len(centers) != t or len(set(centers)) != t:
        return f"need {t} distinct centers, got {centers}"
    if any(not 1 <= v <= n for v in centers):
        return f"centers {centers} outside 1..{n}"
    if k * t > n:
        return f"kt={k * t} exceeds n={n}"
    need = 2 * (t - 1) * binom(n - 2, k - 2)
    deg = dict(degree_sequence(F))
    for v in centers:
        if deg[v] <= need:
            return f"center {v}: degree {deg[v]} is not > 2(t-1)C(n-2,k-2)={need}"
    return None


def t_disjoint_by_cor1(F: SetFamily, t: int, centers, limits: SolverLimits | None = None) -> ExtractionReport:
    """t disjoint edges, the i-th through centers[i], when every center has high degree."""
    centers = list(centers)
    problem = centers_problem(F, t, centers)
    if problem is not None:
        raise PreconditionError(problem)
    audit = _Audit(limits)
    m = _centers_rec(F, t, centers, audit, 0)
    return audit.report(m.check(F, size=t))


def _centers_rec(F, t, centers, audit, depth) -> Matching:
    audit.tag(CaseTag.TOP_DEGREE, depth)
    pairs = _rainbow_through_centers([F] * t, centers, audit, depth)
    return Matching.from_masks((0, m) for _, m in pairs).check(F, size=t)


# -- single family, cover-bound hypothesis ------------------------------------

def cover_problem(F: SetFamily, t: int) -> str | None:
    n, k = F.n, F.k
    if k < 2:
        return f"need k >= 2, family is {k}-uniform"
    if t < 1:
        return f"need t >= 1, got {t}"
    if not 3 * k * k * t < n:
        return f"need 3k^2 t < n, got 3k^2 t={3 * k * k * t}, n={n}"
    need = cover_bound(n, k, t)
    if len(F) <= need:
        return f"e(F)={len(F)} is not > C(n,k)-C(n-t+1,k)={need}"
    return None


def t_disjoint_by_thm1(F: SetFamily, t: int, limits: SolverLimits | None = None) -> ExtractionReport:
    """t disjoint edges in a k-uniform family with more edges than the cover construction."""
    problem = cover_problem(F, t)
    if problem is not None:
        raise PreconditionError(problem)
    audit = _Audit(limits)
    m = _cover_rec(F, t, audit, 0)
    return audit.report(m.check(F, size=t))


def _sweep(F: SetFamily, used: int, through: int = 0):
    """First edge in colex order avoiding ``used`` and containing ``through``."""
    for m in F.masks:
        if not m & used and m & through == through:
            return m
    return None


def _cover_rec(F: SetFamily, t: int, audit: _Audit, depth: int) -> Matching:
    n, k = F.n, F.k
    if t == 1:
        audit.tag(CaseTag.SINGLETON_BASE, depth)
        return Matching.from_masks([(0, F.masks[0])])

    pair = binom(n - 2, k - 2)  # edges through any two fixed vertices, at most
    seq = degree_sequence(F)
    v, dv = seq[0]

    if dv > k * (t - 1) * pair:
        audit.tag(CaseTag.HIGH_DEGREE, depth)
        H, back = delete_vertex(F, v)
        _internal(cover_problem(H, t - 1), f"deleting vertex {v}")
        inner = _cover_rec(H, t - 1, audit, depth + 1)
        masks = [relabel_mask(m, back) for m in inner.masks]
        # the k(t-1) matched vertices block at most k(t-1)C(n-2,k-2) edges at v
        extra = _sweep(F, _union(masks), through=1 << (v - 1))
        if extra is None:
            raise ConsistencyError(f"no edge through high-degree vertex {v} avoids the smaller matching")
        return Matching.from_masks((0, m) for m in masks + [extra])

    if seq[t - 1][1] > 2 * (t - 1) * pair:
        centers = [u for u, _ in seq[:t]]
        return _centers_rec(F, t, centers, audit, depth)

    audit.tag(CaseTag.GAP_SWEEP, depth)
    _internal(cover_problem(F, t - 1), "gap sweep")
    inner = _cover_rec(F, t - 1, audit, depth + 1)
    # the matched vertices have degree sum <= (t-1)^2 (3k-2) C(n-2,k-2) < e(F)
    extra = _sweep(F, _union(inner.masks))
    if extra is None:
        raise ConsistencyError("every edge meets the smaller matching despite the degree-sum gap")
    return Matching.from_masks((0, m) for m in list(inner.masks) + [extra])


# -- t families, cover-bound hypothesis ---------------------------------------

def colored_cover_problem(fams: ColoredFamilies) -> str | None:
    n, t = fams.n, fams.t
    ks = set(fams.ks)
    if len(ks) != 1:
        return f"families must share one uniformity, got {sorted(ks)}"
    k = ks.pop()
    if k < 2:
        return f"need k >= 2, families are {k}-uniform"
    if not 3 * k * k * t < n:
        return f"need 3k^2 t < n, got 3k^2 t={3 * k * k * t}, n={n}"
    need = cover_bound(n, k, t)
    for idx, F in enumerate(fams):
        if len(F) <= need:
            return f"family {idx + 1}: |F|={len(F)} is not > C(n,k)-C(n-t+1,k)={need}"
    return None


def rainbow_by_thm2(fams: ColoredFamilies, limits: SolverLimits | None = None) -> ExtractionReport:
    """Rainbow t-matching when every family has more edges than the cover construction."""
    problem = colored_cover_problem(fams)
    if problem is not None:
        raise PreconditionError(problem)
    audit = _Audit(limits)
    m = _colored_cover_rec(fams, audit, 0)
    return audit.report(m.check(fams, size=fams.t))


def _distinct_centers(heavy: list[list[int]]):
    """System of distinct representatives, one heavy vertex per family, by backtracking."""
    chosen = []

    def search(i):
        if i == len(heavy):
            return True
        for v in heavy[i]:
            if v not in chosen:
                chosen.append(v)
                if search(i + 1):
                    return True
                chosen.pop()
        return False

    return list(chosen) if search(0) else None


def _colored_cover_rec(fams: ColoredFamilies, audit: _Audit, depth: int) -> Matching:
    n, t = fams.n, fams.t
    k = fams[0].k
    if t == 1:
        audit.tag(CaseTag.SINGLETON_BASE, depth)
        return Matching.from_masks([(0, fams[0].masks[0])])

    pair = binom(n - 2, k - 2)
    seqs = [degree_sequence(F) for F in fams]

    for i, seq in enumerate(seqs):
        v, dv = seq[0]
        if dv > k * (t - 1) * pair:
            audit.tag(CaseTag.HIGH_DEGREE, depth)
            others = [j for j in range(t) if j != i]
            parts = [delete_vertex(fams[j], v) for j in others]
            back = parts[0][1]
            sub = ColoredFamilies(n - 1, tuple(H for H, _ in parts))
            _internal(colored_cover_problem(sub), f"deleting vertex {v}")
            inner = _colored_cover_rec(sub, audit, depth + 1)
            pairs = [(others[idx], relabel_mask(to_mask(e), back)) for idx, e in inner]
            extra = _sweep(fams[i], _union(m for _, m in pairs), through=1 << (v - 1))
            if extra is None:
                raise ConsistencyError(f"family {i + 1}: no edge through {v} avoids the other edges")
            return Matching.from_masks(pairs + [(i, extra)])

    heavy_cut = 2 * (t - 1) * pair
    for i, seq in enumerate(seqs):
        if seq[t - 1][1] <= heavy_cut:
            audit.tag(CaseTag.GAP_SWEEP, depth)
            others = [j for j in range(t) if j != i]
            sub = ColoredFamilies(n, tuple(fams[j] for j in others))
            _internal(colored_cover_problem(sub), f"dropping family {i + 1}")
            inner = _colored_cover_rec(sub, audit, depth + 1)
            pairs = [(others[idx], to_mask(e)) for idx, e in inner]
            extra = _sweep(fams[i], _union(m for _, m in pairs))
            if extra is None:
                raise ConsistencyError(f"family {i + 1}: every edge meets the other t-1 edges")
            return Matching.from_masks(pairs + [(i, extra)])

    audit.tag(CaseTag.TOP_DEGREE, depth)
    heavy = [[v for v, d in seq if d > heavy_cut] for seq in seqs]
    centers = _distinct_centers(heavy)
    if centers is None:
        raise ConsistencyError("no distinct heavy centers although every family has t heavy vertices")
    pairs = _rainbow_through_centers(list(fams), centers, audit, depth)
    return Matching.from_masks(pairs)


# -- exact fallback -------------------------------------------------------------

def solver_witness(obj, t: int | None = None, limits: SolverLimits | None = None):
    """Exact search with no hypotheses: rainbow matching for colored input, t-matching otherwise.

    Returns ``(matching or None, nodes expanded)``.
    """
    if isinstance(obj, ColoredFamilies):
        res = rainbow_search(obj, limits)
    else:
        res = t_matching_search(obj, t, limits)
    return res.matching, res.nodes


def describe_edges(m: Matching) -> str:
    return " ".join("{" + ",".join(map(str, e)) + "}" for e in m.edges)


__all__ = [
    "CaseTag",
    "ExtractionReport",
    "centers_problem",
    "colored_cover_problem",
    "cover_problem",
    "rainbow_by_lemma3",
    "rainbow_by_thm2",
    "solver_witness",
    "t_disjoint_by_cor1",
    "t_disjoint_by_thm1",
    "threshold_problem",
]

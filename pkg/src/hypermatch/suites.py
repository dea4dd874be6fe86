"""Seeded verification suites behind ``hypermatch verify``.

Each suite draws its cases from an independent SplitMix64 stream per case
index, so a report depends only on (suite, seed, cases) and any single case
can be replayed alone. Failures carry the serialized instance.
"""

from __future__ import annotations

import itertools
import json
import time
from dataclasses import dataclass, field

from . import shg
from .bounds import (
    clique_bound,
    cover_bound,
    degree_sum_gap_check,
    erdos_bound,
    gen_clique_construction,
    gen_cover_construction,
    gen_star_families,
    rainbow_threshold,
)
from .errors import HypermatchError, PreconditionError
from .family import (
    ColoredFamilies,
    SetFamily,
    binom,
    from_mask,
    iter_kmasks,
    popcount,
    to_mask,
    unrank_ksubset,
)
from .rng import RandomFamilySpec, SplitMix64, derive_seed, random_family
from .shifting import (
    ShiftOp,
    apply_shift,
    compress_to_target,
    decomposed_instance,
    is_compressed,
    lift_decomposed_matching,
    pull_back_matching,
    shift_with_trace,
)
from .solver import SolverLimits, max_edges_no_t_matching, max_matching, rainbow_matching, t_matching_search
from .witness import (
    CaseTag,
    centers_problem,
    rainbow_by_lemma3,
    rainbow_by_thm2,
    t_disjoint_by_cor1,
    t_disjoint_by_thm1,
    cover_problem,
    colored_cover_problem,
)

SCHEMA = 1


@dataclass
class SuiteReport:
    suite: str
    seed: int
    cases: int
    checks: int = 0
    skipped: int = 0
    failures: list = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self, include_timing: bool = False) -> dict:
        out = {
            "schema": SCHEMA,
            "suite": self.suite,
            "seed": self.seed,
            "cases": self.cases,
            "checks": self.checks,
            "skipped": self.skipped,
            "failures": self.failures,
            "ok": self.ok,
        }
        if include_timing:
            out["wall_time"] = round(self.wall_time, 3)
        return out

    def to_json(self, include_timing: bool = False) -> str:
        return json.dumps(self.to_dict(include_timing), sort_keys=True, indent=2) + "\n"

    def summary(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return (
            f"{status} suite={self.suite} seed={self.seed} cases={self.cases} "
            f"checks={self.checks} skipped={self.skipped} failures={len(self.failures)}"
        )


class _Case:
    """Collects the checks and the instance of one case."""

    def __init__(self, index: int):
        self.index = index
        self.checks = 0
        self.problems = []
        self.instance = {}
        self.skipped = False

    def expect(self, cond: bool, message: str) -> None:
        self.checks += 1
        if not cond:
            self.problems.append(message)

    def record(self, **items) -> None:
        for key, value in items.items():
            if isinstance(value, (SetFamily, ColoredFamilies)):
                value = shg.format_any(value)
            self.instance[key] = value


def _run(name, seed, cases, body, limits) -> SuiteReport:
    report = SuiteReport(name, seed, cases)
    start = time.monotonic()
    for idx in range(cases):
        case = _Case(idx)
        rng = SplitMix64(derive_seed(seed, idx))
        try:
            body(case, rng, limits)
        except HypermatchError as exc:
            case.problems.append(f"{type(exc).__name__}: {exc}")
        report.checks += case.checks
        report.skipped += case.skipped
        if case.problems:
            report.failures.append({"case": idx, "problems": case.problems, "instance": case.instance})
    report.wall_time = time.monotonic() - start
    return report


# -- instance generators -----------------------------------------------------

def _random_ks(rng, t, n, cap=3):
    """t uniformities in 1..cap with sum at most n."""
    while True:
        ks = [rng.randint(1, min(cap, n)) for _ in range(t)]
        if sum(ks) <= n:
            return ks


def _covered_family(rng, n, k, core_mask, keep=0.6, extras=0):
    """Random subset of the k-sets meeting ``core_mask``, plus a few arbitrary k-sets."""
    masks = [m for m in iter_kmasks(n, k) if m & core_mask and rng.random() < keep]
    total = binom(n, k)
    for _ in range(extras):
        masks.append(to_mask(unrank_ksubset(rng.below(total), n, k)))
    return SetFamily.from_masks(n, k, masks)


def _random_subset(rng, n, size):
    return sorted(rng.shuffle(list(range(1, n + 1)))[:size])


def _no_rainbow_instance(rng, n, ks, limits, attempts=40):
    """Families with no rainbow matching: sets meeting a common (t-1)-core, plus sparse noise."""
    t = len(ks)
    for attempt in range(attempts):
        core = to_mask(_random_subset(rng, n, t - 1))
        extras = 1 if attempt < attempts // 2 else 0
        fams = ColoredFamilies(
            n, tuple(_covered_family(rng, n, k, core, rng.random(), rng.below(2) * extras) for k in ks)
        )
        if rainbow_matching(fams, limits) is None:
            return fams
    raise PreconditionError("could not draw a rainbow-free instance")


# -- suites ------------------------------------------------------------------

def _shift_case(case, rng, limits):
    n = rng.randint(3, 10)
    t = rng.randint(1, 3)
    ks = [rng.randint(1, min(3, n)) for _ in range(t)]
    mode = case.index % 3
    if mode == 0:
        fams = ColoredFamilies(n, tuple(
            random_family(RandomFamilySpec(n, k, m=rng.randint(0, min(8, binom(n, k)))), rng) for k in ks
        ))
    elif mode == 1:
        core = to_mask(_random_subset(rng, n, max(t - 1, 0)))
        fams = ColoredFamilies(n, tuple(_covered_family(rng, n, k, core, 0.6, rng.below(2)) for k in ks))
    else:
        fams = ColoredFamilies(n, tuple(random_family(RandomFamilySpec(n, k, p=0.5), rng) for k in ks))
    i = rng.randint(2, n)
    op = ShiftOp(i, rng.randint(1, i - 1))
    case.record(families=fams, op=[op.i, op.j])

    shifted = apply_shift(fams, op)
    for idx, (F, G) in enumerate(zip(fams, shifted)):
        case.expect(len(F) == len(G), f"family {idx}: size {len(F)} -> {len(G)}")
        case.expect(G.k == F.k and all(popcount(m) == F.k for m in G.masks), f"family {idx}: uniformity broken")

    if rainbow_matching(fams, limits) is None:
        case.expect(rainbow_matching(shifted, limits) is None, "shift created a rainbow matching")

    nu_before, _ = max_matching(fams[0], limits)
    nu_after, _ = max_matching(shifted[0], limits)
    case.expect(nu_after <= nu_before, f"shift raised nu from {nu_before} to {nu_after}")

    # every effective compression step strictly lowers the total element sum
    _, trace = compress_to_target(fams)
    weights = [_weight(before) for _, before in trace.steps] + [_weight(trace.final)]
    case.expect(all(a > b for a, b in zip(weights, weights[1:])), "compression weight did not decrease")


def _weight(fams):
    return sum(sum(from_mask(m)) for F in fams for m in F.masks)


def _split_case(case, rng, limits):
    n = rng.randint(3, 10)
    t = rng.randint(2, 3)
    ks = _random_ks(rng, t, n)
    fams = _no_rainbow_instance(rng, n, ks, limits)
    compressed, _ = compress_to_target(fams)
    case.record(families=fams)
    case.expect(is_compressed(compressed), "compression did not reach a fixpoint")
    case.expect(rainbow_matching(compressed, limits) is None, "compression created a rainbow matching")
    for sides in itertools.product((False, True), repeat=t):
        reduced = decomposed_instance(compressed, sides)
        found = rainbow_matching(reduced, limits)
        case.expect(found is None, f"side assignment {list(sides)} admits rainbow matching {found}")


def _pullback_case(case, rng, limits):
    n = rng.randint(3, 10)
    t = rng.randint(1, 3)
    ks = _random_ks(rng, t, n)
    for _ in range(40):
        fams = ColoredFamilies(n, tuple(
            random_family(RandomFamilySpec(n, k, p=0.3 + 0.6 * rng.random()), rng) for k in ks
        ))
        compressed, trace = compress_to_target(fams)
        m = rainbow_matching(compressed, limits)
        if m is not None:
            break
    else:
        case.skipped = True
        return
    case.record(families=fams)

    back = pull_back_matching(trace, m)
    case.expect(back.is_valid(fams, size=t), f"pullback through compression invalid: {back}")

    # arbitrary S_ij sequences, not only compression toward n
    ops = []
    for _ in range(rng.randint(1, 6)):
        i = rng.randint(2, n)
        ops.append((i, rng.randint(1, i - 1)))
    shifted, gen_trace = shift_with_trace(fams, ops)
    m2 = rainbow_matching(shifted, limits)
    if m2 is not None:
        back2 = pull_back_matching(gen_trace, m2)
        case.expect(back2.is_valid(fams, size=t), f"pullback through {ops} invalid: {back2}")

    lifted_any = False
    for sides in itertools.product((False, True), repeat=t):
        reduced = decomposed_instance(compressed, sides)
        mr = rainbow_matching(reduced, limits)
        if mr is None:
            continue
        lifted = lift_decomposed_matching(compressed, sides, mr)
        case.expect(lifted.is_valid(compressed, size=t), f"lift for sides {list(sides)} invalid")
        lifted_any = True
    if not lifted_any:
        case.skipped = True


def _threshold_case(case, rng, limits):
    while True:
        t = rng.randint(1, 3)
        ks = [rng.randint(1, 3) for _ in range(t)]
        n = rng.randint(max(sum(ks), 1), 12)
        if all(k * (t - 1) < n and k <= n for k in ks):
            break
    near = rng.below(2) == 1
    fams = []
    for k in ks:
        lo = rainbow_threshold(n, k, t) + 1
        hi = binom(n, k)
        m = lo if near else rng.randint(lo, hi)
        fams.append(random_family(RandomFamilySpec(n, k, m=m), rng))
    fams = ColoredFamilies(n, tuple(fams))
    case.record(families=fams)

    report = rainbow_by_lemma3(fams, limits)
    case.expect(report.matching.is_valid(fams, size=t), f"extracted matching invalid: {report.matching}")
    case.expect(bool(report.case_trace), "empty case trace")
    case.expect(rainbow_matching(fams, limits) is not None, "solver disagrees: no rainbow matching")

    if case.index % 10 == 0:
        # negative control: stars sit at (t-1)C(n-1,k-1) or below and share vertex 1
        tc = rng.randint(2, 3)
        kc = rng.randint(1, 3)
        nc = rng.randint(kc * tc, 12)
        stars = gen_star_families(nc, kc, tc)
        case.record(control=stars)
        try:
            rainbow_by_lemma3(stars, limits)
            case.expect(False, "star control passed the size precondition")
        except PreconditionError:
            case.expect(True, "")
        case.expect(rainbow_matching(stars, limits) is None, "star control has a rainbow matching")


def _centers_case(case, rng, limits):
    k = rng.randint(2, 3)
    t = rng.randint(1, 3)
    n = rng.randint(k * t, 12)
    for attempt in range(20):
        centers = _random_subset(rng, n, t)
        cmask = to_mask(centers)
        keep_center = 0.9 if attempt < 10 else 1.0
        F = SetFamily.from_masks(n, k, [
            m for m in iter_kmasks(n, k)
            if rng.random() < (keep_center if m & cmask else 0.3)
        ])
        if centers_problem(F, t, centers) is None:
            break
    else:
        case.skipped = True
        return
    case.record(family=F, t=t, centers=centers)
    report = t_disjoint_by_cor1(F, t, centers, limits)
    case.expect(report.matching.is_valid(F, size=t), f"extracted matching invalid: {report.matching}")
    through = all(any(c in e for e in report.matching.edges) for c in centers)
    case.expect(through, "some center is not covered by the matching")
    case.expect(t_matching_search(F, t, limits).found, "solver disagrees: no t-matching")


ABOVE_COVER_MODES = ("cover+1", "random", "star", "low-degree", "two-heavy")


def _above_cover_family(rng, n, k, t, mode):
    """A family above the cover bound, shaped to steer the degree case split.

    cover+1 and star lead with one very high degree vertex; low-degree keeps
    every degree small; two-heavy (k >= 3) plants t moderately heavy vertices.
    """
    bound = cover_bound(n, k, t)
    if mode == "cover+1":
        base = gen_cover_construction(n, k, t)
        outside = [m for m in iter_kmasks(n, k) if m not in base.mask_set]
        return SetFamily.from_masks(n, k, list(base.masks) + [rng.choice(outside)])
    if mode == "random":
        return random_family(RandomFamilySpec(n, k, m=bound + rng.randint(1, 10)), rng)
    if mode == "star":
        v = rng.randint(1, n)
        star = [m for m in iter_kmasks(n, k) if m >> (v - 1) & 1]
        rest = random_family(RandomFamilySpec(n, k, m=bound + 1), rng)
        return SetFamily.from_masks(n, k, set(rest.masks) | set(star[: rng.randint(1, len(star))]))
    if mode == "low-degree" and k == 2:
        # circulant graph with steps 1..t-1 on a random cyclic order: 2(t-1)-regular, (t-1)n edges
        order = rng.shuffle(list(range(1, n + 1)))
        masks = {to_mask((order[i], order[(i + s) % n])) for i in range(n) for s in range(1, t)}
        return SetFamily.from_masks(n, k, masks)
    if mode == "two-heavy" and k >= 3:
        pair = binom(n - 2, k - 2)
        heavy = _random_subset(rng, n, t)
        hmask = to_mask(heavy)
        masks = set()
        for v in heavy:
            through = [m for m in iter_kmasks(n, k) if m >> (v - 1) & 1 and not m & (hmask ^ 1 << (v - 1))]
            want = 2 * (t - 1) * pair + 1 + rng.below((k - 2) * (t - 1) * pair)
            masks.update(through[i] for i in rng.sample_positions(len(through), min(want, len(through))))
        rest = [m for m in iter_kmasks(n, k) if not m & hmask]
        need = bound + 1 - len(masks)
        masks.update(rest[i] for i in rng.sample_positions(len(rest), max(need, 0) + rng.below(10)))
        return SetFamily.from_masks(n, k, masks)
    return random_family(RandomFamilySpec(n, k, m=bound + rng.randint(1, 10)), rng)


def _above_cover_params(case, rng):
    """k=2 with n in [25, 40] (t=3 once n > 36), every tenth case k=3, t=2, n=55."""
    if case.index % 10 == 9:
        return 55, 3, 2
    n = rng.randint(25, 40)
    t = rng.randint(2, 3) if n > 36 else 2
    return n, 2, t


def _above_cover_mode(case, rng, k):
    modes = ("cover+1", "random", "star", "two-heavy") if k >= 3 else ("cover+1", "random", "star", "low-degree")
    return modes[(case.index // 10 if k >= 3 else case.index) % 4]


def _cover_case(case, rng, limits):
    n, k, t = _above_cover_params(case, rng)
    F = _above_cover_family(rng, n, k, t, _above_cover_mode(case, rng, k))
    case.record(family=F, t=t)
    if cover_problem(F, t) is not None:
        case.skipped = True
        return
    report = t_disjoint_by_thm1(F, t, limits)
    case.expect(report.matching.is_valid(F, size=t), f"extracted matching invalid: {report.matching}")
    high = sum(1 for tag in report.case_trace if tag is CaseTag.HIGH_DEGREE)
    case.expect(high <= t, f"{high} high-degree steps for t={t}")
    case.expect(t_matching_search(F, t, limits).found, "solver disagrees: no t-matching")


def _colored_cover_case(case, rng, limits):
    n, k, t = _above_cover_params(case, rng)
    fams = ColoredFamilies(n, tuple(_above_cover_family(rng, n, k, t, _above_cover_mode(case, rng, k)) for _ in range(t)))
    case.record(families=fams)
    if colored_cover_problem(fams) is not None:
        case.skipped = True
        return
    report = rainbow_by_thm2(fams, limits)
    case.expect(report.matching.is_valid(fams, size=t), f"extracted matching invalid: {report.matching}")
    case.expect(rainbow_matching(fams, limits) is not None, "solver disagrees: no rainbow matching")


def regime_grid(max_n=200, ks=range(2, 7)):
    """(n, k, t) with t >= 2 and t(k+1) <= n."""
    for k in ks:
        for n in range(1, max_n + 1):
            for t in range(2, n // (k + 1) + 1):
                yield n, k, t


def gap_grid(max_n=200, ks=range(2, 7)):
    """(n, k, t) with t >= 2 and 3k^2 t < n."""
    for k in ks:
        for n in range(1, max_n + 1):
            t = 2
            while 3 * k * k * t < n:
                yield n, k, t
                t += 1


def construction_grid(max_n=12, max_k=4, max_t=3):
    """(n, k, t) with kt <= n."""
    for n in range(1, max_n + 1):
        for k in range(1, max_k + 1):
            for t in range(1, max_t + 1):
                if k * t <= n:
                    yield n, k, t


def _bounds_suite(seed, cases, limits) -> SuiteReport:
    report = SuiteReport("bounds", seed, 0)
    start = time.monotonic()

    def fail(kind, problem, **instance):
        report.failures.append({"case": report.cases, "problems": [f"{kind}: {problem}"], "instance": instance})

    for n, k, t in regime_grid():
        report.cases += 1
        report.checks += 1
        cov, cli = cover_bound(n, k, t), clique_bound(k, t)
        if not cov > cli:
            fail("regime", f"cover {cov} <= clique {cli}", n=n, k=k, t=t)
    for n, k, t in gap_grid():
        report.cases += 1
        report.checks += 1
        ok, lhs, rhs = degree_sum_gap_check(n, k, t)
        if not ok:
            fail("gap", f"lhs {lhs} >= rhs {rhs}", n=n, k=k, t=t)
    for n, k, t in construction_grid():
        report.cases += 1
        cov = gen_cover_construction(n, k, t)
        cli = gen_clique_construction(n, k, t)
        checks = [
            (len(cov) == cover_bound(n, k, t), f"e(cover)={len(cov)} != {cover_bound(n, k, t)}"),
            (len(cli) == clique_bound(k, t), f"e(clique)={len(cli)} != {clique_bound(k, t)}"),
            (max_matching(cov, limits)[0] == t - 1, "nu(cover) != t-1"),
            (max_matching(cli, limits)[0] == t - 1, "nu(clique) != t-1"),
        ]
        for ok, msg in checks:
            report.checks += 1
            if not ok:
                fail("construction", msg, n=n, k=k, t=t)
    for n in range(2, 40):
        for k in range(1, min(n, 8) + 1):
            report.cases += 1
            report.checks += 1
            if cover_bound(n, k, 2) != binom(n - 1, k - 1):
                fail("identity", "cover_bound(n,k,2) != C(n-1,k-1)", n=n, k=k)
    report.wall_time = time.monotonic() - start
    return report


ORACLE_POINTS = ((4, 2, 2), (5, 2, 2), (6, 2, 2), (6, 2, 3), (6, 3, 2), (7, 2, 2), (7, 2, 3))


def _oracle_suite(seed, cases, limits) -> SuiteReport:
    report = SuiteReport("oracle", seed, 0)
    start = time.monotonic()
    for n, k, t in ORACLE_POINTS:
        report.cases += 1
        best, family = max_edges_no_t_matching(n, k, t, limits)
        expected = erdos_bound(n, k, t).erdos_bound
        nu, _ = max_matching(family, limits)
        problems = []
        if best != expected:
            problems.append(f"oracle max {best} != formula {expected}")
        if nu != t - 1:
            problems.append(f"extremal family has nu={nu}, expected {t - 1}")
        if t == 2 and best != binom(n - 1, k - 1):
            problems.append(f"t=2 max {best} != C(n-1,k-1)={binom(n - 1, k - 1)}")
        report.checks += 3 if t == 2 else 2
        if problems:
            report.failures.append({
                "case": report.cases - 1,
                "problems": problems,
                "instance": {"n": n, "k": k, "t": t, "family": shg.format_shg(family)},
            })
    report.wall_time = time.monotonic() - start
    return report


_CASE_SUITES = {
    "lemma1": (_shift_case, 1000),
    "lemma2": (_split_case, 200),
    "pullback": (_pullback_case, 500),
    "lemma3": (_threshold_case, 300),
    "cor1": (_centers_case, 100),
    "thm1": (_cover_case, 60),
    "thm2": (_colored_cover_case, 60),
}
_GRID_SUITES = {"bounds": _bounds_suite, "oracle": _oracle_suite}

SUITES = tuple(_CASE_SUITES) + tuple(_GRID_SUITES)


def default_cases(suite: str) -> int:
    return _CASE_SUITES[suite][1] if suite in _CASE_SUITES else 0


def run_suite(suite: str, seed: int = 42, cases: int | None = None,
              limits: SolverLimits | None = None) -> SuiteReport:
    """Run one suite. Grid suites (bounds, oracle) ignore ``cases``."""
    if suite in _GRID_SUITES:
        return _GRID_SUITES[suite](seed, cases, limits)
    if suite not in _CASE_SUITES:
        raise PreconditionError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    body, default = _CASE_SUITES[suite]
    return _run(suite, seed, default if cases is None else cases, body, limits)

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from hypermatch.bounds import cover_bound, gen_cover_construction, gen_star_families, rainbow_threshold
from hypermatch.errors import PreconditionError
from hypermatch.family import (
    ColoredFamilies,
    binom,
    complete_family,
    degree,
    enumerate_ksubsets,
    make_family,
)
from hypermatch.solver import has_t_matching, rainbow_matching
from hypermatch.witness import (
    CaseTag,
    rainbow_by_lemma3,
    rainbow_by_thm2,
    solver_witness,
    t_disjoint_by_cor1,
    t_disjoint_by_thm1,
)

from oracles import brute_rainbow_exists


def star_plus(n, k, centre, extras):
    edges = [e for e in enumerate_ksubsets(n, k) if centre in e]
    return make_family(n, k, edges + list(extras))


@st.composite
def above_threshold(draw):
    n = draw(st.integers(2, 9))
    t = draw(st.integers(1, 3))
    ks = draw(st.lists(st.integers(1, 3), min_size=t, max_size=t))
    assume(sum(ks) <= n)
    rnd = draw(st.randoms(use_true_random=False))
    fams = []
    for k in ks:
        universe = list(enumerate_ksubsets(n, k))
        need = rainbow_threshold(n, k, t) + 1
        assume(need <= len(universe))
        size = draw(st.integers(need, len(universe)))
        fams.append(make_family(n, k, rnd.sample(universe, size)))
    return ColoredFamilies(n, tuple(fams))


class TestRainbowThreshold:
    def test_t1(self):
        F = make_family(5, 2, [(3, 4), (2, 5)])
        r = rainbow_by_lemma3(ColoredFamilies(5, (F,)))
        assert r.matching.edges == ((3, 4),)
        assert r.case_trace == (CaseTag.SINGLETON_BASE,)

    def test_minimal_singletons(self):
        F = make_family(2, 1, [(1,), (2,)])
        r = rainbow_by_lemma3(ColoredFamilies(2, (F, F)))
        assert sorted(r.matching.edges) == [(1,), (2,)]
        assert r.matching.is_valid(ColoredFamilies(2, (F, F)), size=2)

    def test_star_plus_one_edge(self):
        F = star_plus(9, 3, 1, [(2, 3, 4)])
        assert len(F) == 29 > rainbow_threshold(9, 3, 2) == 28
        fams = ColoredFamilies(9, (F, F))
        r = rainbow_by_lemma3(fams)
        assert r.matching.is_valid(fams, size=2)
        assert rainbow_matching(fams) is not None
        assert CaseTag.SHIFT_COMPRESS in r.case_trace

    def test_stars_rejected(self):
        with pytest.raises(PreconditionError, match="family 1"):
            rainbow_by_lemma3(gen_star_families(7, 2, 2))

    def test_sum_too_large(self):
        with pytest.raises(PreconditionError, match="exceeds"):
            rainbow_by_lemma3(ColoredFamilies(3, (complete_family(3, 2), complete_family(3, 2))))

    def test_deterministic(self):
        F = star_plus(9, 3, 1, [(2, 3, 4)])
        fams = ColoredFamilies(9, (F, F))
        assert rainbow_by_lemma3(fams) == rainbow_by_lemma3(fams)

    @settings(max_examples=150, deadline=None)
    @given(above_threshold())
    def test_property(self, fams):
        r = rainbow_by_lemma3(fams)
        assert r.matching.is_valid(fams, size=fams.t)
        assert brute_rainbow_exists([F.edges for F in fams])
        assert r.case_trace


class TestThroughCenters:
    def test_t1(self):
        F = make_family(5, 2, [(1, 2), (3, 4)])
        r = t_disjoint_by_cor1(F, 1, [3])
        assert r.matching.edges == ((3, 4),)

    def test_k6(self):
        F = complete_family(6, 2)
        r = t_disjoint_by_cor1(F, 2, [1, 2])
        assert r.matching.is_valid(F, size=2)
        edges = r.matching.edges
        assert any(1 in e for e in edges) and any(2 in e for e in edges)

    def test_two_stars_k3(self):
        F = make_family(12, 3, [e for e in enumerate_ksubsets(12, 3) if {1, 2} & set(e)])
        assert degree(F, 1) == degree(F, 2) == 55
        r = t_disjoint_by_cor1(F, 2, [1, 2])
        assert r.matching.is_valid(F, size=2)
        assert has_t_matching(F, 2)[0]

    def test_low_degree_rejected(self):
        F = make_family(6, 2, [(1, 2), (1, 3), (2, 4)])
        with pytest.raises(PreconditionError, match="center"):
            t_disjoint_by_cor1(F, 2, [1, 2])

    def test_centers_must_be_distinct(self):
        with pytest.raises(PreconditionError):
            t_disjoint_by_cor1(complete_family(6, 2), 2, [1, 1])


class TestAboveCoverSingle:
    def test_t1(self):
        F = make_family(30, 2, [(5, 6)])
        r = t_disjoint_by_thm1(F, 1)
        assert r.matching.edges == ((5, 6),)

    def test_star_plus_edge_25(self):
        F = star_plus(25, 2, 1, [(2, 3)])
        assert len(F) == cover_bound(25, 2, 2) + 1
        r = t_disjoint_by_thm1(F, 2)
        assert r.matching.is_valid(F, size=2)
        assert r.matching.edges == ((1, 4), (2, 3))
        assert r.case_trace[0] is CaseTag.HIGH_DEGREE

    def test_cover_plus_edge_55(self):
        F = star_plus(55, 3, 1, [(2, 3, 4)])
        assert len(F) == binom(54, 2) + 1 == cover_bound(55, 3, 2) + 1
        r = t_disjoint_by_thm1(F, 2)
        assert r.matching.is_valid(F, size=2)

    @pytest.mark.parametrize("n", [25, 30, 40])
    def test_cover_plus_edge_k2(self, n):
        F = make_family(n, 2, list(gen_cover_construction(n, 2, 2).edges) + [(2, 3)])
        r = t_disjoint_by_thm1(F, 2)
        assert r.matching.is_valid(F, size=2)
        assert r.recursion_depth <= 2

    def test_cover_itself_rejected(self):
        with pytest.raises(PreconditionError, match="e\\(F\\)"):
            t_disjoint_by_thm1(gen_cover_construction(25, 2, 2), 2)

    def test_range_rejected(self):
        with pytest.raises(PreconditionError, match="3k\\^2"):
            t_disjoint_by_thm1(complete_family(24, 2), 2)

    def test_gap_sweep_case(self):
        # a perfect-ish matching plus a cycle: every degree is small
        n = 37
        edges = [(v, v % n + 1) for v in range(1, n + 1)]
        edges += [(v, (v + 1) % n + 1) for v in range(1, n + 1)]
        F = make_family(n, 2, [tuple(sorted(e)) for e in edges])
        assert len(F) > cover_bound(n, 2, 3)
        r = t_disjoint_by_thm1(F, 3)
        assert r.matching.is_valid(F, size=3)
        assert CaseTag.GAP_SWEEP in r.case_trace

    def test_deterministic(self):
        F = star_plus(25, 2, 1, [(2, 3)])
        assert t_disjoint_by_thm1(F, 2) == t_disjoint_by_thm1(F, 2)


class TestAboveCoverRainbow:
    def test_two_stars(self):
        fams = ColoredFamilies(25, (star_plus(25, 2, 1, [(2, 3)]), star_plus(25, 2, 4, [(5, 6)])))
        r = rainbow_by_thm2(fams)
        assert r.matching.is_valid(fams, size=2)

    def test_equal_families_like_thm1(self):
        F = star_plus(25, 2, 1, [(2, 3)])
        r = rainbow_by_thm2(ColoredFamilies(25, (F, F)))
        assert len({frozenset(e) for e in r.matching.edges}) == 2
        assert r.matching.is_valid(ColoredFamilies(25, (F, F)), size=2)

    def test_t1(self):
        F = make_family(30, 2, [(7, 9), (8, 10)])
        assert rainbow_by_thm2(ColoredFamilies(30, (F,))).matching.edges == ((7, 9),)

    def test_mixed_uniformity_rejected(self):
        fams = ColoredFamilies(40, (complete_family(40, 2), complete_family(40, 1)))
        with pytest.raises(PreconditionError, match="uniformity"):
            rainbow_by_thm2(fams)


class TestSolverWitness:
    def test_plain(self):
        m, _ = solver_witness(complete_family(4, 2), 2)
        assert len(m) == 2

    def test_colored_none(self):
        m, _ = solver_witness(gen_star_families(5, 2, 2))
        assert m is None


def test_report_json_uses_one_based_families():
    F = make_family(5, 2, [(3, 4)])
    d = rainbow_by_lemma3(ColoredFamilies(5, (F,))).to_dict()
    assert d == {"matching": [{"family": 1, "edge": [3, 4]}], "recursion_depth": 0,
                 "case_trace": ["SingletonBase"]}

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hypermatch.errors import ArithmeticRangeError, UnsupportedUniformityError, ValidationError
from hypermatch.family import (
    ColoredFamilies,
    Matching,
    SetFamily,
    binom,
    complete_family,
    degree,
    degree_sequence,
    delete_vertex,
    enumerate_ksubsets,
    link,
    make_family,
    rank_ksubset,
    unrank_ksubset,
)

from oracles import all_ksets, colex_ksets, factorial_binom
from strategies import families


class TestBinom:
    @pytest.mark.parametrize("n,k,expected", [(9, 3, 84), (5, 0, 1), (4, 6, 0)])
    def test_examples(self, n, k, expected):
        assert binom(n, k) == expected

    def test_pascal_grid(self):
        for n in range(1, 61):
            for k in range(1, n + 1):
                assert binom(n, k) == binom(n - 1, k - 1) + binom(n - 1, k)

    def test_matches_factorial_formula(self):
        for n in range(0, 40):
            for k in range(0, n + 2):
                assert binom(n, k) == factorial_binom(n, k)

    def test_overflow_detected(self):
        assert binom(130, 65) < 2**128
        with pytest.raises(ArithmeticRangeError):
            binom(200, 100)

    def test_negative_n(self):
        with pytest.raises(ValueError):
            binom(-1, 0)


class TestMakeFamily:
    def test_dedup_and_sort(self):
        F = make_family(3, 2, [{2, 1}, {1, 2}])
        assert F.edges == ((1, 2),)

    def test_vertex_out_of_range(self):
        with pytest.raises(ValidationError, match="vertex 5 > n=4"):
            make_family(4, 2, [{1, 5}])

    def test_empty(self):
        F = make_family(5, 3, [])
        assert len(F) == 0

    def test_wrong_size_names_edge(self):
        with pytest.raises(ValidationError, match=r"\[1, 2, 3\]"):
            make_family(4, 2, [(1, 2, 3)])

    def test_bad_k(self):
        with pytest.raises(ValidationError):
            make_family(4, 0, [])

    def test_input_order_irrelevant(self):
        a = make_family(5, 2, [(4, 5), (1, 2), (2, 3)])
        b = make_family(5, 2, [(3, 2), (5, 4), (2, 1)])
        assert a == b
        assert a.edges == ((1, 2), (2, 3), (4, 5))

    @given(families())
    def test_idempotent(self, F):
        assert make_family(F.n, F.k, F.edges) == F


class TestDegrees:
    def test_star_count(self):
        assert degree(complete_family(4, 2), 1) == 3

    def test_empty(self):
        assert degree(make_family(4, 2, []), 3) == 0

    def test_cover_construction(self):
        cover = make_family(5, 2, [s for s in all_ksets(5, 2) if 1 in s])
        assert degree(cover, 1) == 4

    def test_out_of_range(self):
        with pytest.raises(ValidationError):
            degree(complete_family(4, 2), 5)

    def test_sequence_k4(self):
        assert [d for _, d in degree_sequence(complete_family(4, 2))] == [3, 3, 3, 3]

    def test_sequence_small(self):
        F = make_family(3, 2, [(1, 2), (1, 3)])
        assert degree_sequence(F) == [(1, 2), (2, 1), (3, 1)]

    def test_sequence_cover_623(self):
        cover = make_family(6, 2, [s for s in all_ksets(6, 2) if s & {1, 2}])
        assert degree_sequence(cover) == [(1, 5), (2, 5), (3, 2), (4, 2), (5, 2), (6, 2)]

    @given(families())
    def test_handshake(self, F):
        assert sum(degree(F, v) for v in range(1, F.n + 1)) == F.k * len(F)


class TestLink:
    def test_basic(self):
        F = make_family(5, 3, [(1, 2, 3), (1, 4, 5)])
        L = link(F, 1)
        assert L.edges == ((2, 3), (4, 5))
        assert L.k == 2 and L.n == 5 and L.effective_n == 4

    def test_blocked(self):
        assert len(link(make_family(3, 3, [(1, 2, 3)]), 1, {2})) == 0

    def test_star(self):
        F = make_family(5, 3, [s for s in all_ksets(5, 3) if 1 in s])
        L = link(F, 1)
        assert set(L.edges) == {tuple(sorted(s)) for s in all_ksets(5, 2) if 1 not in s}
        assert len(L) == 6

    def test_k1_unsupported(self):
        with pytest.raises(UnsupportedUniformityError):
            link(make_family(3, 1, [(1,)]), 1)

    def test_center_excluded(self):
        with pytest.raises(ValidationError):
            link(complete_family(4, 2), 1, {1})


class TestDeleteVertex:
    def test_relabel(self):
        H, back = delete_vertex(make_family(3, 2, [(1, 2), (2, 3)]), 1)
        assert H.n == 2 and H.edges == ((1, 2),)
        assert back == {1: 2, 2: 3}

    def test_star(self):
        star = make_family(4, 2, [(1, 2), (1, 3), (1, 4)])
        assert len(delete_vertex(star, 1)[0]) == 0

    def test_k4(self):
        H, _ = delete_vertex(complete_family(4, 2), 4)
        assert H == complete_family(3, 2)

    @given(families(), st.data())
    def test_edge_count(self, F, data):
        v = data.draw(st.integers(1, F.n))
        assert len(delete_vertex(F, v)[0]) == len(F) - degree(F, v)


class TestEnumeration:
    def test_colex_order(self):
        assert list(enumerate_ksubsets(4, 2)) == [(1, 2), (1, 3), (2, 3), (1, 4), (2, 4), (3, 4)]

    def test_matches_oracle(self):
        for n in range(0, 8):
            for k in range(0, n + 1):
                expected = [tuple(sorted(s)) for s in colex_ksets(n, k)]
                assert list(enumerate_ksubsets(n, k)) == expected

    def test_rank_first(self):
        assert rank_ksubset((1, 2, 3)) == 0

    def test_unrank_example(self):
        assert unrank_ksubset(5, 4, 2) == (3, 4)

    def test_rank_matches_position(self):
        for pos, e in enumerate(enumerate_ksubsets(7, 3)):
            assert rank_ksubset(e) == pos
            assert unrank_ksubset(pos, 7, 3) == e

    @settings(max_examples=200)
    @given(st.data())
    def test_bijection(self, data):
        n = data.draw(st.integers(1, 30))
        k = data.draw(st.integers(0, n))
        total = binom(n, k)
        if total > 10**6:
            return
        r = data.draw(st.integers(0, total - 1))
        assert rank_ksubset(unrank_ksubset(r, n, k)) == r

    def test_unrank_out_of_range(self):
        with pytest.raises(ValidationError):
            unrank_ksubset(6, 4, 2)


class TestMatching:
    def test_valid_rainbow(self):
        fams = ColoredFamilies(4, (make_family(4, 2, [(1, 2)]), make_family(4, 2, [(3, 4)])))
        m = Matching(((0, (1, 2)), (1, (3, 4))))
        assert m.is_valid(fams, size=2)

    def test_detects_overlap_membership_and_repeat(self):
        fams = ColoredFamilies(4, (make_family(4, 2, [(1, 2)]), make_family(4, 2, [(1, 3)])))
        assert not Matching(((0, (1, 2)), (1, (1, 3)))).is_valid(fams)
        assert not Matching(((0, (1, 2)), (1, (3, 4)))).is_valid(fams)
        assert not Matching(((0, (1, 2)), (0, (3, 4)))).is_valid(fams)

    def test_plain(self):
        F = complete_family(4, 2)
        assert Matching(((0, (1, 2)), (0, (3, 4)))).is_valid(F, size=2)
        assert not Matching(((0, (1, 2)),)).is_valid(F, size=2)

    def test_colored_requires_shared_n(self):
        with pytest.raises(ValidationError):
            ColoredFamilies(4, (complete_family(4, 2), complete_family(5, 2)))


def test_setfamily_is_hashable_value():
    a = make_family(4, 2, [(1, 2)])
    b = SetFamily.from_masks(4, 2, [0b11])
    assert a == b and hash(a) == hash(b)
    assert (1, 2) in a and (1, 3) not in a

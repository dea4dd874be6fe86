"""Hypothesis strategies for families and colored families."""

from hypothesis import strategies as st

from hypermatch.family import ColoredFamilies, enumerate_ksubsets, make_family


@st.composite
def families(draw, max_n=8, max_k=4, min_n=1):
    n = draw(st.integers(min_n, max_n))
    k = draw(st.integers(1, min(max_k, n)))
    universe = list(enumerate_ksubsets(n, k))
    edges = draw(st.lists(st.sampled_from(universe), max_size=len(universe)))
    return make_family(n, k, edges)


@st.composite
def colored(draw, max_n=8, max_k=3, max_t=3, min_n=2):
    n = draw(st.integers(min_n, max_n))
    t = draw(st.integers(1, max_t))
    fams = []
    for _ in range(t):
        k = draw(st.integers(1, min(max_k, n)))
        universe = list(enumerate_ksubsets(n, k))
        edges = draw(st.lists(st.sampled_from(universe), max_size=min(len(universe), 12)))
        fams.append(make_family(n, k, edges))
    return ColoredFamilies(n, tuple(fams))

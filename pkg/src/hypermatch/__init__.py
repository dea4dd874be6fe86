"""Exact tools for hypergraph matchings: shifting, exact solvers, extremal bounds and witness extraction."""

from .bounds import (
    BoundReport,
    Regime,
    clique_bound,
    cover_bound,
    degree_sum_gap_check,
    erdos_bound,
    gen_clique_construction,
    gen_cover_construction,
    gen_star_families,
    rainbow_threshold,
)
from .errors import (
    ArithmeticRangeError,
    ConsistencyError,
    HypermatchError,
    ParseError,
    PreconditionError,
    ResourceError,
    UnsupportedUniformityError,
    ValidationError,
)
from .family import (
    ColoredFamilies,
    Matching,
    SetFamily,
    binom,
    degree,
    degree_sequence,
    delete_vertex,
    enumerate_ksubsets,
    link,
    make_family,
    rank_ksubset,
    unrank_ksubset,
)
from .rng import RandomFamilySpec, SplitMix64, random_colored, random_family
from .shifting import (
    Decomposition,
    ShiftOp,
    ShiftTrace,
    apply_shift,
    compress_to_target,
    decompose,
    lift_decomposed_matching,
    pull_back_matching,
)
from .solver import (
    SolverLimits,
    greedy_matching,
    has_t_matching,
    max_edges_no_t_matching,
    max_matching,
    rainbow_matching,
)
from .witness import (
    CaseTag,
    ExtractionReport,
    rainbow_by_lemma3,
    rainbow_by_thm2,
    t_disjoint_by_cor1,
    t_disjoint_by_thm1,
)

__version__ = "0.1.0"

"""Submodular hypergraph cut sparsification.

A hypergraph edge carries a submodular splitting function g_e; the cut
of S sums g_e(S & e) over edges.  This package models such hypergraphs,
builds reweighted sub-hypergraphs preserving every cut to a (1 + eps)
factor by three sampling schemes (pairwise importance, singleton
importance for monotone functions, and strength-based rates driven by
the spread), deforms additive edges into low-support pieces with a
bit-packed encoding, and ships the analysis suite: brute-force oracles,
spread and distance-from-additivity calculators, support lower bounds,
verification, and bit-hiding hard families with cut-query decoders.
"""

from .checks import (
    MonotonicityWitness,
    SpreadStats,
    SubmodularityWitness,
    check_monotone,
    check_submodular,
    imbalance,
    spread_stats,
)
from .deform import DeformationResult, PipelineReport, deform_additive, succinct_pipeline
from .delta import (
    DeltaStats,
    GradientSeries,
    LowerBoundReport,
    cardinality_profile,
    delta_stats,
    gradient_series,
    support_lower_bound,
)
from .encoding import EncodedSparsifier, decode, encode
from .errors import (
    BalancerError,
    DecodeFailure,
    FormatError,
    InfiniteSpreadError,
    PreconditionError,
    RefusalError,
    ThresholdExceeded,
)
from .families import (
    DirectedFamily,
    DistinguishFamily,
    DistinguishReport,
    HadamardFamily,
    decode_directed,
    decode_hadamard,
    distinguish_check,
    gen_directed_family,
    gen_distinguish_family,
    gen_hadamard_family,
)
from .generate import generate, random_instance, random_monotone_instance
from .hypergraph import (
    Hyperedge,
    SubmodularHypergraph,
    all_cut_values,
    cut_of_subsets,
    cut_value,
    total_weight,
)
from .importance import (
    ImportanceReport,
    rho_general,
    rho_monotone,
    rho_prime,
    sparsify_general,
    sparsify_monotone,
)
from .io import (
    fn_from_json,
    fn_to_json,
    hypergraph_from_json,
    hypergraph_to_json,
    load_hypergraph,
    save_hypergraph,
)
from .oracle import DirectedCutTable, directed_cut_table, directed_min_cut, sigma_brute
from .splitting import (
    KINDS,
    Additive,
    AllOrNothing,
    CardinalityBased,
    Coverage,
    DirectedAllOrNothing,
    Explicit,
    MatroidRank,
    Product,
    SmallSide,
    SplittingFn,
    eval_fn,
    fn_table,
)
from .spread import CoverageCompressReport, SpreadReport, coverage_compress, sparsify_spread
from .strength import AuxEdge, StrengthMap, build_auxiliary, min_cut, pair_strengths
from .verify import VerificationReport, verify_exhaustive, verify_sampled

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]

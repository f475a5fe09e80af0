"""Stallings core graphs, fiber products and the positive-generation
reduction for the strengthened Hanna Neumann inequality."""

from .words import (
    Alphabet,
    Endomorphism,
    Letter,
    Word,
    apply_endomorphism,
    concat_reduce,
    free_reduce,
    invert,
    is_positive,
    parse_word,
    parse_words,
)
from .stallings import (
    PreGraph,
    StallingsGraph,
    VertexCensus,
    basis,
    build_bouquet,
    canonical_form,
    census,
    chi0,
    core,
    fold,
    membership,
    rank,
    subgroup_graph,
    to_dot,
)
from .pullback import Component, PullbackReport, ShncVerdict, product, shnc_check, witness
from .positivize import (
    check_paper_theorem,
    counterexample_screen,
    dominance_predicate,
    embed_rank_n,
    phi_standard,
    positivize_pipeline,
)

__version__ = "0.1.0"

"""Corpus-based relational similarity: pair-pattern matrices, log-entropy
weighting, truncated SVD, and analogy evaluation, backed by the C++ core."""

from ._relsim import (
    AblationConfig,
    Corpus,
    Engine,
    LraParams,
    RelsimError,
    Thesaurus,
    cosine,
    load_pair_list,
    solve_sat,
    truncated_svd,
)

__all__ = [
    "AblationConfig",
    "Corpus",
    "Engine",
    "LraParams",
    "RelsimError",
    "Thesaurus",
    "cosine",
    "load_pair_list",
    "solve_sat",
    "truncated_svd",
]

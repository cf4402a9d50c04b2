"""Corpus curation by linguistic complexity.

Filter parallel bitext, train a Kneser-Ney language model, cluster
per-sentence complexity scores into intervals, and draw cluster-mix samples.
The heavy lifting lives in the compiled ``_lalita`` extension; this package
re-exports its public surface.
"""

from ._lalita import (
    ClusterModel,
    DataError,
    LanguageModel,
    UsageError,
    enumerate_configurations,
    filter_bitext,
    largest_remainder_quotas,
    normalize_tokens,
    roman_fraction,
    run_pipeline,
    silhouette,
    synthetic_filter,
)

__version__ = "0.1.0"

__all__ = [
    "ClusterModel",
    "DataError",
    "LanguageModel",
    "UsageError",
    "enumerate_configurations",
    "filter_bitext",
    "largest_remainder_quotas",
    "normalize_tokens",
    "roman_fraction",
    "run_pipeline",
    "silhouette",
    "synthetic_filter",
]

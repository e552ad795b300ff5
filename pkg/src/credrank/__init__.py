"""credrank: domain-based credibility ranking for social-post corpora.

Pipeline: ingest JSONL corpora, cleanse them, partition posts into time
chunks, score per-user per-domain credibility matrices for each chunk,
aggregate over a recency-weighted window, scale onto a 0-5 trust ladder,
and answer influencer-ranking, anomaly-retrieval, and evaluation queries.
"""

__version__ = "0.1.0"

from .errors import ConfigError, InputError, InvariantError

__all__ = ["ConfigError", "InputError", "InvariantError", "__version__"]

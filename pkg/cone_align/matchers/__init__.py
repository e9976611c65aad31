"""Node matchers: greedy k-d tree and one-to-one Sinkhorn rounding."""

from .alignment import UNMATCHED, Alignment
from .base import BaseMatcher
from .kdtree import EmbeddingIndex, KDTreeMatcher, build_index, greedy_match
from .sinkhorn import SinkhornMatcher, bijective_match

__all__ = [
    "Alignment",
    "BaseMatcher",
    "EmbeddingIndex",
    "KDTreeMatcher",
    "SinkhornMatcher",
    "UNMATCHED",
    "bijective_match",
    "build_index",
    "greedy_match",
]

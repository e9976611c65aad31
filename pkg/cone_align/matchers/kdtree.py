"""
Greedy nearest-neighbor matching with a k-d tree.

Each node of the first graph is matched to the closest row of the second
graph's embeddings after the transform Q. Matching is not one-to-one.
"""

import logging
from typing import Dict, Optional, Tuple

import numpy as np
from sklearn.neighbors import KDTree

from .alignment import Alignment
from .base import BaseMatcher, check_shapes

logger = logging.getLogger(__name__)

LEAF_SIZE = 40
TIE_RTOL = 1e-12


class EmbeddingIndex:
    """
    Exact Euclidean nearest-neighbor index over the rows of a matrix.

    Results equal a brute-force scan: candidates are ordered by distance,
    then by row index. The index is read-only after construction and can be
    queried concurrently.
    """

    def __init__(self, Y: np.ndarray, leaf_size: int = LEAF_SIZE):
        Y = np.asarray(Y, dtype=np.float64)
        if Y.ndim != 2 or Y.shape[0] == 0:
            raise ValueError(f"Cannot index an empty or non-2-D matrix of shape {Y.shape}")

        self.points = Y.copy()
        self.points.setflags(write=False)
        self.tree = KDTree(self.points, leaf_size=leaf_size)

    @property
    def size(self) -> int:
        return self.points.shape[0]

    def _ranked(self, point: np.ndarray, candidates: np.ndarray, k: int) -> Tuple[np.ndarray, np.ndarray]:
        dist = np.linalg.norm(self.points[candidates] - point, axis=1)
        order = np.lexsort((candidates, dist))[:k]
        return dist[order], candidates[order]

    def query(self, points: np.ndarray, k: int = 1) -> Tuple[np.ndarray, np.ndarray]:
        """
        k nearest rows for each query point.

        Args:
            points: (q, d) query points
            k: Number of neighbors (1 <= k <= size)

        Returns:
            (distances, indices), both of shape (q, k)
        """
        points = np.atleast_2d(np.asarray(points, dtype=np.float64))
        if points.shape[1] != self.points.shape[1]:
            raise ValueError(f"Query dimension {points.shape[1]} does not match index dimension {self.points.shape[1]}")
        if not 1 <= k <= self.size:
            raise ValueError(f"k must be in [1, {self.size}], got {k}")

        fetch = min(k + 1, self.size)
        tree_dist, tree_idx = self.tree.query(points, k=fetch)

        distances = np.empty((points.shape[0], k))
        indices = np.empty((points.shape[0], k), dtype=np.int64)

        for r, point in enumerate(points):
            candidates = tree_idx[r]
            kth = tree_dist[r, k - 1]
            if fetch > k and tree_dist[r, k] <= kth * (1.0 + TIE_RTOL):
                # More rows sit at the k-th distance than were returned.
                radius = kth * (1.0 + 2 * TIE_RTOL) + np.finfo(float).tiny
                candidates = self.tree.query_radius(point[None, :], r=radius)[0]
            distances[r], indices[r] = self._ranked(point, np.asarray(candidates, dtype=np.int64), k)

        return distances, indices


def build_index(Y: np.ndarray) -> EmbeddingIndex:
    """Build an exact nearest-neighbor index over the rows of Y."""
    return EmbeddingIndex(Y)


def greedy_match(Y1: np.ndarray, Q: np.ndarray, Y2: np.ndarray, k: int = 1) -> Alignment:
    """
    Match each row of Y1 Q to its nearest row of Y2.

    Args:
        Y1: (n1, d) embeddings of the first graph
        Q: (d, d) orthogonal transform
        Y2: (n2, d) embeddings of the second graph
        k: Number of ranked candidates to keep per node

    Returns:
        Alignment with top_k filled in when k > 1
    """
    Y1 = np.asarray(Y1, dtype=np.float64)
    Y2 = np.asarray(Y2, dtype=np.float64)
    Q = np.asarray(Q, dtype=np.float64)
    check_shapes(Y1, Q, Y2)
    if k < 1:
        raise ValueError(f"Candidate count must be >= 1, got {k}")

    index = build_index(Y2)
    distances, indices = index.query(Y1 @ Q, k=min(k, index.size))

    return Alignment(
        mapping=indices[:, 0],
        distances=distances[:, 0],
        top_k=indices if k > 1 else None
    )


class KDTreeMatcher(BaseMatcher):
    """
    Greedy nearest-neighbor matcher.

    Configuration keys (the ``matching`` section): candidates (top-k kept per node).
    """

    def __init__(self, config: Optional[Dict] = None):
        super().__init__(config)
        self.candidates = int(self.config.get('candidates', 1))
        if self.candidates < 1:
            raise ValueError(f"matching.candidates must be >= 1, got {self.candidates}")

    def match(self, Y1: np.ndarray, Q: np.ndarray, Y2: np.ndarray) -> Alignment:
        alignment = greedy_match(Y1, Q, Y2, k=self.candidates)
        n_targets = len(np.unique(alignment.mapping))
        logger.info(f"Greedy matching: {len(alignment)} nodes onto {n_targets} distinct targets")
        return alignment

"""
One-to-one matching through a full Sinkhorn plan.

The entropic transport plan between Y1 Q and Y2 under squared Euclidean
cost is rounded to a permutation with an exact assignment solver.
"""

import logging
from typing import Dict, Optional

import numpy as np
from scipy.spatial.distance import cdist

from ..solvers.procrustes import round_to_permutation
from ..solvers.sinkhorn import sinkhorn
from .alignment import Alignment
from .base import BaseMatcher, check_shapes

logger = logging.getLogger(__name__)


def bijective_match(
    Y1: np.ndarray,
    Q: np.ndarray,
    Y2: np.ndarray,
    reg: float = 0.05,
    max_iter: int = 1000,
    tol: float = 1e-6
) -> Alignment:
    """
    Injective matching by rounding the Sinkhorn plan of Y1 Q onto Y2.

    Args:
        Y1: (n1, d) embeddings of the first graph
        Q: (d, d) orthogonal transform
        Y2: (n2, d) embeddings of the second graph, n2 >= n1
        reg: Sinkhorn regularization
        max_iter: Sinkhorn iteration cap
        tol: Sinkhorn marginal tolerance

    Returns:
        Alignment whose mapping is injective; similarity holds the plan
    """
    Y1 = np.asarray(Y1, dtype=np.float64)
    Y2 = np.asarray(Y2, dtype=np.float64)
    Q = np.asarray(Q, dtype=np.float64)
    check_shapes(Y1, Q, Y2)
    if Y1.shape[0] > Y2.shape[0]:
        raise ValueError(f"Cannot match {Y1.shape[0]} nodes injectively onto {Y2.shape[0]}")

    sq_dist = cdist(Y1 @ Q, Y2, metric='sqeuclidean')
    plan = sinkhorn(sq_dist, reg, max_iter=max_iter, tol=tol)
    if not plan.converged:
        logger.warning("Sinkhorn plan for bijective matching did not converge; rounding anyway")

    mapping = round_to_permutation(plan.values)
    distances = np.sqrt(sq_dist[np.arange(len(mapping)), mapping])

    return Alignment(mapping=mapping, distances=distances, similarity=plan.values)


class SinkhornMatcher(BaseMatcher):
    """
    One-to-one matcher (rounded Sinkhorn plan).

    Configuration keys (the ``matching`` section): reg, sinkhorn_max_iter,
    sinkhorn_tol.
    """

    def __init__(self, config: Optional[Dict] = None):
        super().__init__(config)
        self.reg = float(self.config.get('reg', 0.05))
        self.max_iter = int(self.config.get('sinkhorn_max_iter', 1000))
        self.tol = float(self.config.get('sinkhorn_tol', 1e-6))
        if self.reg <= 0:
            raise ValueError(f"matching.reg must be positive, got {self.reg}")

    def match(self, Y1: np.ndarray, Q: np.ndarray, Y2: np.ndarray) -> Alignment:
        return bijective_match(Y1, Q, Y2, reg=self.reg, max_iter=self.max_iter, tol=self.tol)

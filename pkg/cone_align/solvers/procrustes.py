"""
Orthogonal Procrustes and plan rounding helpers.
"""

import logging

import numpy as np
from scipy import linalg
from scipy.optimize import linear_sum_assignment

logger = logging.getLogger(__name__)

RANK_RTOL = 1e-10


def _polar(matrix: np.ndarray) -> np.ndarray:
    """Orthogonal factor of the polar decomposition (UVᵀ of the SVD)."""
    u, _, vt = linalg.svd(matrix)
    return u @ vt


def procrustes(Y1: np.ndarray, Y2: np.ndarray) -> np.ndarray:
    """
    Orthogonal Q minimizing ||Y1 Q - Y2||_F.

    Q = UVᵀ where UΣVᵀ is the SVD of Y1ᵀY2. When the cross-covariance is
    rank deficient the minimizer is not unique: the part of Q acting on the
    null directions is then chosen as the orthogonal matrix closest to the
    identity.

    Args:
        Y1: (n, d) source embeddings
        Y2: (n, d) target embeddings

    Returns:
        (d, d) orthogonal matrix
    """
    Y1 = np.asarray(Y1, dtype=np.float64)
    Y2 = np.asarray(Y2, dtype=np.float64)
    if Y1.ndim != 2 or Y1.shape != Y2.shape:
        raise ValueError(f"Procrustes needs two matrices of equal shape, got {Y1.shape} and {Y2.shape}")

    cross = Y1.T @ Y2
    if not np.all(np.isfinite(cross)):
        raise ValueError("Procrustes inputs contain non-finite entries")

    U, s, Vt = linalg.svd(cross)
    d = cross.shape[0]
    rank = int(np.sum(s > RANK_RTOL * s[0])) if s[0] > 0 else 0

    if rank == d:
        return U @ Vt

    logger.warning(f"Rank-deficient Procrustes cross-covariance (rank {rank} of {d})")
    U_r, U_perp = U[:, :rank], U[:, rank:]
    V_r, V_perp = Vt[:rank].T, Vt[rank:].T
    Z = _polar(U_perp.T @ V_perp)
    return U_r @ V_r.T + U_perp @ Z @ V_perp.T


def orthogonality_residual(Q: np.ndarray) -> float:
    """Frobenius norm of QᵀQ - I."""
    Q = np.asarray(Q, dtype=np.float64)
    return float(np.linalg.norm(Q.T @ Q - np.eye(Q.shape[1])))


def round_to_permutation(plan: np.ndarray) -> np.ndarray:
    """
    Exact assignment maximizing the total plan mass.

    Args:
        plan: (n, m) plan values, n <= m

    Returns:
        mapping with mapping[i] = assigned column of row i
    """
    plan = np.asarray(plan, dtype=np.float64)
    rows, cols = linear_sum_assignment(plan, maximize=True)
    mapping = np.empty(plan.shape[0], dtype=np.int64)
    mapping[rows] = cols
    return mapping


def greedy_round(plan: np.ndarray) -> np.ndarray:
    """Row-wise argmax rounding (lowest column index on ties)."""
    return np.argmax(np.asarray(plan), axis=1).astype(np.int64)

"""
Entropic-regularized optimal transport with the Sinkhorn algorithm.

The scaling iterations run on log-potentials so that small regularization
on unnormalized costs does not overflow ``exp(-cost / reg)``.
"""

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np
from scipy.special import logsumexp

logger = logging.getLogger(__name__)


@dataclass
class TransportPlan:
    """
    Nonnegative coupling matrix with prescribed row and column marginals.

    Attributes:
        values: (n, m) plan
        row_marginal: Target row sums
        col_marginal: Target column sums
        n_iter: Sinkhorn iterations spent (0 when not produced by Sinkhorn)
        converged: Whether both residuals reached the tolerance
        row_residual: Max-abs deviation of row sums from the target
        col_residual: Max-abs deviation of column sums from the target
        dual_objectives: Dual objective after every iteration (only with
            ``check_objective``)
    """

    values: np.ndarray
    row_marginal: np.ndarray
    col_marginal: np.ndarray
    n_iter: int = 0
    converged: bool = True
    row_residual: float = field(default=0.0)
    col_residual: float = field(default=0.0)
    dual_objectives: Optional[List[float]] = None

    @property
    def shape(self) -> Tuple[int, int]:
        return self.values.shape

    def marginal_residuals(self) -> Tuple[float, float]:
        """Recompute (row, column) max-abs marginal violations."""
        row = float(np.max(np.abs(self.values.sum(axis=1) - self.row_marginal)))
        col = float(np.max(np.abs(self.values.sum(axis=0) - self.col_marginal)))
        return row, col

    def to_unit_marginals(self) -> 'TransportPlan':
        """
        Rescale a square uniform-marginal plan so rows and columns sum to 1.

        This is the doubly stochastic (Birkhoff polytope) scale used by the
        graph-matching relaxation.
        """
        n, m = self.values.shape
        if n != m:
            raise ValueError(f"Unit-marginal scaling needs a square plan, got {n}x{m}")
        scale = float(n)
        return TransportPlan(
            values=self.values * scale,
            row_marginal=np.ones(n),
            col_marginal=np.ones(m),
            n_iter=self.n_iter,
            converged=self.converged,
            row_residual=self.row_residual * scale,
            col_residual=self.col_residual * scale
        )

    @classmethod
    def uniform(cls, n: int, m: Optional[int] = None) -> 'TransportPlan':
        """Maximum-entropy plan with uniform marginals 1/n and 1/m."""
        m = n if m is None else m
        return cls(
            values=np.full((n, m), 1.0 / (n * m)),
            row_marginal=np.full(n, 1.0 / n),
            col_marginal=np.full(m, 1.0 / m)
        )


def sinkhorn(
    cost: np.ndarray,
    reg: float,
    max_iter: int = 500,
    tol: float = 1e-6,
    check_objective: bool = False
) -> TransportPlan:
    """
    Solve min_P <P, cost> - reg * H(P) over plans with uniform marginals.

    ``reg`` acts as the temperature of the Gibbs kernel exp(-cost / reg).
    Iteration stops once both max-abs marginal residuals drop below ``tol``
    or after ``max_iter`` iterations; in the latter case the plan is still
    returned with ``converged=False``.

    Args:
        cost: (n, m) finite cost matrix
        reg: Entropic regularization (> 0)
        max_iter: Iteration cap
        tol: Marginal tolerance
        check_objective: Evaluate the dual objective every iteration, record
            it on the plan and log any decrease (it is non-decreasing in
            exact arithmetic)

    Returns:
        TransportPlan with marginals 1/n (rows) and 1/m (columns)
    """
    cost = np.asarray(cost, dtype=np.float64)
    if cost.ndim != 2 or 0 in cost.shape:
        raise ValueError(f"Cost must be a non-empty 2-D matrix, got shape {cost.shape}")
    if not np.all(np.isfinite(cost)):
        raise ValueError("Cost matrix contains non-finite entries")
    if reg <= 0:
        raise ValueError(f"Regularization must be positive, got {reg}")
    if max_iter < 1:
        raise ValueError(f"max_iter must be >= 1, got {max_iter}")

    n, m = cost.shape
    a = np.full(n, 1.0 / n)
    b = np.full(m, 1.0 / m)
    log_a = np.log(a)
    log_b = np.log(b)
    log_kernel = -cost / reg

    f = np.zeros(n)
    g = np.zeros(m)
    plan = None
    row_residual = col_residual = np.inf
    previous_dual = -np.inf
    duals: Optional[List[float]] = [] if check_objective else None
    converged = False
    iteration = 0

    for iteration in range(1, max_iter + 1):
        g = log_b - logsumexp(log_kernel + f[:, None], axis=0)
        f = log_a - logsumexp(log_kernel + g[None, :], axis=1)

        plan = np.exp(log_kernel + f[:, None] + g[None, :])
        row_residual = float(np.max(np.abs(plan.sum(axis=1) - a)))
        col_residual = float(np.max(np.abs(plan.sum(axis=0) - b)))

        if check_objective:
            dual = reg * (f @ a + g @ b - plan.sum())
            if dual < previous_dual - 1e-12 * max(1.0, abs(previous_dual)):
                logger.warning(
                    f"Sinkhorn dual objective decreased at iteration {iteration}: "
                    f"{previous_dual:.12g} -> {dual:.12g}"
                )
            previous_dual = dual
            duals.append(float(dual))

        if row_residual < tol and col_residual < tol:
            converged = True
            break

    if not converged:
        logger.warning(
            f"Sinkhorn did not reach tol={tol:g} in {max_iter} iterations "
            f"(row residual {row_residual:.3e}, column residual {col_residual:.3e})"
        )

    return TransportPlan(
        values=plan,
        row_marginal=a,
        col_marginal=b,
        n_iter=iteration,
        converged=converged,
        row_residual=row_residual,
        col_residual=col_residual,
        dual_objectives=duals
    )


def transport_cost(plan: TransportPlan, cost: np.ndarray) -> float:
    """Linear transport cost <P, cost>."""
    return float(np.sum(plan.values * cost))

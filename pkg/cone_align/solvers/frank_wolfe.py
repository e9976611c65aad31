"""
Frank-Wolfe building blocks over the Birkhoff polytope.
"""

import numpy as np

from .sinkhorn import TransportPlan, sinkhorn


def fw_linear_step(
    gradient: np.ndarray,
    lambda0: float,
    sinkhorn_iters: int = 500,
    tol: float = 1e-6
) -> TransportPlan:
    """
    Entropically smoothed linear minimization oracle argmin_S <S, gradient>.

    Args:
        gradient: (n, n) gradient of the objective at the current iterate
        lambda0: Sinkhorn regularization
        sinkhorn_iters: Sinkhorn iteration cap
        tol: Sinkhorn marginal tolerance

    Returns:
        Uniform-marginal TransportPlan (use ``to_unit_marginals`` for the
        doubly stochastic scale)
    """
    gradient = np.asarray(gradient, dtype=np.float64)
    if not np.all(np.isfinite(gradient)):
        raise ValueError("Frank-Wolfe gradient contains non-finite entries")
    return sinkhorn(gradient, lambda0, max_iter=sinkhorn_iters, tol=tol)


def fw_step_size(k: int) -> float:
    """Classic open-loop step size 2 / (k + 2)."""
    return 2.0 / (k + 2.0)

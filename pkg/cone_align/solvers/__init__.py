"""Numerical kernels: Sinkhorn transport, Procrustes and Frank-Wolfe steps."""

from .sinkhorn import TransportPlan, sinkhorn, transport_cost
from .procrustes import procrustes, orthogonality_residual, round_to_permutation, greedy_round
from .frank_wolfe import fw_linear_step, fw_step_size

__all__ = [
    "TransportPlan",
    "sinkhorn",
    "transport_cost",
    "procrustes",
    "orthogonality_residual",
    "round_to_permutation",
    "greedy_round",
    "fw_linear_step",
    "fw_step_size",
]

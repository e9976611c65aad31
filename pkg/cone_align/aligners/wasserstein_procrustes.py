"""
Embedding-space alignment by convex-initialized Wasserstein-Procrustes.

1. Convex initialization: Frank-Wolfe on min_{P doubly stochastic}
   ||A1 P - P A2||_F^2 with Sinkhorn as the linear oracle.
2. Initial transform: Procrustes between Y1 and P* Y2.
3. Stochastic alternating optimization: on random minibatches, match rows
   with Sinkhorn under the current Q, take a gradient step on
   ||Y1t Q - Pt Y2t||^2 and project back onto the orthogonal matrices.
"""

import dataclasses
import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Union

import numpy as np
import pandas as pd
from scipy import linalg, sparse

from ..graphs.sparse_graph import SparseGraph
from ..solvers.frank_wolfe import fw_linear_step, fw_step_size
from ..solvers.procrustes import greedy_round, orthogonality_residual, procrustes
from ..solvers.sinkhorn import TransportPlan, sinkhorn
from .base import BaseAligner

logger = logging.getLogger(__name__)

GraphLike = Union[SparseGraph, sparse.spmatrix, np.ndarray]


@dataclass(frozen=True)
class SubspaceConfig:
    """Hyperparameters of the subspace alignment step."""

    init_iterations: int = 10
    init_reg: float = 1.0
    iterations: int = 50
    batch_size: int = 10
    learning_rate: float = 1.0
    reg: float = 0.05
    seed: Optional[int] = 0
    sinkhorn_max_iter: int = 500
    sinkhorn_tol: float = 1e-6
    hard_rounding: bool = False
    diagnostics: bool = False

    def __post_init__(self):
        for name in ('init_iterations', 'iterations', 'batch_size', 'sinkhorn_max_iter'):
            if getattr(self, name) < 1:
                raise ValueError(f"alignment.{name} must be >= 1, got {getattr(self, name)}")
        for name in ('init_reg', 'reg', 'sinkhorn_tol'):
            if getattr(self, name) <= 0:
                raise ValueError(f"alignment.{name} must be positive, got {getattr(self, name)}")
        # A zero learning rate is allowed and freezes Q.
        if self.learning_rate < 0:
            raise ValueError(f"alignment.learning_rate must be >= 0, got {self.learning_rate}")

    @classmethod
    def from_dict(cls, config: Dict) -> 'SubspaceConfig':
        """Build from an ``alignment`` config section, ignoring unrelated keys."""
        names = {f.name for f in dataclasses.fields(cls)}
        return cls(**{k: v for k, v in config.items() if k in names and (v is not None or k == 'seed')})

    def to_dict(self) -> Dict:
        return dataclasses.asdict(self)


def _as_sparse(graph: GraphLike) -> sparse.csr_matrix:
    if isinstance(graph, SparseGraph):
        return graph.adjacency
    return sparse.csr_matrix(graph, dtype=np.float64)


def _right_multiply(X: np.ndarray, B: sparse.csr_matrix) -> np.ndarray:
    """Dense X times sparse B, computed as (Bᵀ Xᵀ)ᵀ."""
    return np.asarray(B.T @ X.T).T


def matching_objective(A1: sparse.csr_matrix, A2: sparse.csr_matrix, P: np.ndarray) -> float:
    """||A1 P - P A2||_F^2."""
    residual = np.asarray(A1 @ P) - _right_multiply(P, A2)
    return float(np.sum(residual * residual))


class WassersteinProcrustesAligner(BaseAligner):
    """
    Convex-initialized stochastic Wasserstein-Procrustes aligner.

    After a run, ``init_objectives`` holds the relaxed matching objective of
    every Frank-Wolfe iterate (starting point included) and ``trace`` one
    record per stochastic iteration.
    """

    def __init__(self, config: Optional[Dict] = None):
        """
        Initialize the aligner.

        Args:
            config: Alignment configuration dictionary (see SubspaceConfig)
        """
        super().__init__(config)
        self.subspace_config = SubspaceConfig.from_dict(self.config)
        self.init_objectives: List[float] = []
        self.trace: List[Dict] = []

    def convex_init(self, A1: GraphLike, A2: GraphLike) -> TransportPlan:
        """
        Frank-Wolfe on the doubly stochastic relaxation of graph matching.

        Starts at the uniform matrix 11ᵀ/n and takes ``init_iterations``
        steps P <- P + 2/(k+2) (S - P), where S is the Sinkhorn solution of
        the linear problem on the gradient
        2 (A1ᵀ (A1 P - P A2) - (A1 P - P A2) A2ᵀ).

        Args:
            A1: First graph (or adjacency matrix)
            A2: Second graph of the same size

        Returns:
            Doubly stochastic plan P* (rows and columns sum to 1)
        """
        cfg = self.subspace_config
        A1 = _as_sparse(A1)
        A2 = _as_sparse(A2)
        if A1.shape != A2.shape or A1.shape[0] != A1.shape[1]:
            raise ValueError(f"Convex init needs two square matrices of equal size, got {A1.shape} and {A2.shape}")

        n = A1.shape[0]
        P = np.full((n, n), 1.0 / n)
        self.init_objectives = [matching_objective(A1, A2, P)]

        for k in range(1, cfg.init_iterations + 1):
            residual = np.asarray(A1 @ P) - _right_multiply(P, A2)
            gradient = 2.0 * (np.asarray(A1.T @ residual) - _right_multiply(residual, A2.T.tocsr()))

            direction = fw_linear_step(
                gradient,
                cfg.init_reg,
                sinkhorn_iters=cfg.sinkhorn_max_iter,
                tol=cfg.sinkhorn_tol
            ).to_unit_marginals()

            P = P + fw_step_size(k) * (direction.values - P)
            self.init_objectives.append(matching_objective(A1, A2, P))
            logger.debug(f"Frank-Wolfe {k}/{cfg.init_iterations}: objective {self.init_objectives[-1]:.6g}")

        logger.info(
            f"Convex initialization: objective {self.init_objectives[0]:.6g} -> {self.init_objectives[-1]:.6g}"
        )

        plan = TransportPlan(
            values=P,
            row_marginal=np.ones(n),
            col_marginal=np.ones(n),
            n_iter=cfg.init_iterations
        )
        plan.row_residual, plan.col_residual = plan.marginal_residuals()
        return plan

    def init_transform(self, Y1: np.ndarray, Y2: np.ndarray, Pstar: TransportPlan) -> np.ndarray:
        """
        Initial orthogonal transform: Procrustes between Y1 and P* Y2.

        Args:
            Y1: (n, d) embeddings of the first graph
            Y2: (n, d) embeddings of the second graph
            Pstar: (n, n) plan from ``convex_init``

        Returns:
            (d, d) orthogonal matrix UVᵀ with UΣVᵀ = SVD(Y1ᵀ P* Y2)
        """
        values = Pstar.values if isinstance(Pstar, TransportPlan) else np.asarray(Pstar)
        if values.shape != (Y1.shape[0], Y2.shape[0]):
            raise ValueError(f"Plan shape {values.shape} does not match embeddings {Y1.shape}, {Y2.shape}")
        return procrustes(Y1, values @ Y2)

    def _minibatch_plan(self, Y1t: np.ndarray, Y2t: np.ndarray, Q: np.ndarray, t: int) -> np.ndarray:
        cfg = self.subspace_config
        with np.errstate(over='ignore', invalid='ignore'):
            cost = -(Y1t @ Q) @ Y2t.T
        if not np.all(np.isfinite(cost)):
            raise RuntimeError(f"Non-finite minibatch cost at iteration {t}")
        # Rows and columns of Pt sum to 1, as for a b x b permutation matrix.
        plan = sinkhorn(
            cost, cfg.reg, max_iter=cfg.sinkhorn_max_iter, tol=cfg.sinkhorn_tol
        ).to_unit_marginals().values

        if cfg.hard_rounding:
            b = plan.shape[0]
            hard = np.zeros_like(plan)
            hard[np.arange(b), greedy_round(plan)] = 1.0
            return hard
        return plan

    def stochastic_wp(
        self,
        Y1: np.ndarray,
        Y2: np.ndarray,
        Q0: np.ndarray,
        reference_plan: Optional[np.ndarray] = None
    ) -> np.ndarray:
        """
        Stochastic alternating Wasserstein-Procrustes optimization.

        Each iteration samples b rows of Y1 and b rows of Y2 (independently,
        without replacement), matches them with Sinkhorn under the current Q,
        computes G = -2 Y1tᵀ Pt Y2t and sets Q to the orthogonal factor of
        Q - eta G. Pt is the Sinkhorn plan rescaled to unit row and column
        sums (or its 0/1 greedy rounding with ``hard_rounding``).

        Args:
            Y1: (n, d) embeddings of the first graph
            Y2: (n, d) embeddings of the second graph
            Q0: (d, d) orthogonal starting transform
            reference_plan: Optional (n, n) plan; when given, the full-data
                objective ||Y1 Q - P Y2||^2 is recorded every iteration

        Returns:
            Final (d, d) orthogonal transform
        """
        cfg = self.subspace_config
        Y1 = np.asarray(Y1, dtype=np.float64)
        Y2 = np.asarray(Y2, dtype=np.float64)
        Q = np.array(Q0, dtype=np.float64)

        if Y1.shape[1] != Y2.shape[1] or Q.shape != (Y1.shape[1], Y1.shape[1]):
            raise ValueError(f"Shapes do not conform: Y1 {Y1.shape}, Y2 {Y2.shape}, Q {Q.shape}")
        if cfg.batch_size > min(Y1.shape[0], Y2.shape[0]):
            raise ValueError(f"Batch size {cfg.batch_size} exceeds node count {min(Y1.shape[0], Y2.shape[0])}")
        if orthogonality_residual(Q) > 1e-6:
            raise ValueError("Starting transform is not orthogonal")

        rng = np.random.default_rng(cfg.seed)
        self.trace = []

        for t in range(1, cfg.iterations + 1):
            rows1 = rng.choice(Y1.shape[0], size=cfg.batch_size, replace=False)
            rows2 = rng.choice(Y2.shape[0], size=cfg.batch_size, replace=False)
            Y1t, Y2t = Y1[rows1], Y2[rows2]

            Pt = self._minibatch_plan(Y1t, Y2t, Q, t)
            with np.errstate(over='ignore', invalid='ignore'):
                gradient = -2.0 * Y1t.T @ Pt @ Y2t
            if not np.all(np.isfinite(gradient)):
                raise RuntimeError(f"Non-finite gradient at iteration {t} (batch rows {rows1.tolist()})")

            if cfg.learning_rate > 0:
                U, _, Vt = linalg.svd(Q - cfg.learning_rate * gradient)
                Q = U @ Vt

            mapped = Y1t @ Q
            sq_dist = (
                np.sum(mapped ** 2, axis=1)[:, None]
                + np.sum(Y2t ** 2, axis=1)[None, :]
                - 2.0 * mapped @ Y2t.T
            )
            record = {
                'iteration': t,
                'minibatch_objective': float(np.sum(Pt * sq_dist)),
                'orthogonality_residual': orthogonality_residual(Q)
            }
            if reference_plan is not None:
                diff = Y1 @ Q - reference_plan @ Y2
                record['full_objective'] = float(np.sum(diff * diff))
            self.trace.append(record)

            if cfg.diagnostics:
                logger.debug(
                    f"WP {t}/{cfg.iterations}: minibatch objective {record['minibatch_objective']:.6g}, "
                    f"orthogonality residual {record['orthogonality_residual']:.2e}"
                )

        return Q

    def align(
        self,
        Y1: np.ndarray,
        Y2: np.ndarray,
        A1: GraphLike,
        A2: GraphLike
    ) -> np.ndarray:
        """
        Full subspace alignment: convex init, initial Procrustes, stochastic WP.

        Args:
            Y1: (n, d) embeddings of the first graph
            Y2: (n, d) embeddings of the second graph
            A1: First graph
            A2: Second graph

        Returns:
            (d, d) orthogonal transform
        """
        if Y1.shape != Y2.shape:
            raise ValueError(f"Embedding shapes differ: {Y1.shape} vs {Y2.shape}")

        Pstar = self.convex_init(A1, A2)
        Q0 = self.init_transform(Y1, Y2, Pstar)
        return self.stochastic_wp(Y1, Y2, Q0)

    def trace_frame(self) -> pd.DataFrame:
        """Stochastic-phase trace as a table (iteration, objectives, residual)."""
        return pd.DataFrame(self.trace)

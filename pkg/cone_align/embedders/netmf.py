"""
NetMF node embeddings.

Factorizes the truncated-log pointwise mutual information matrix of
random-walk co-occurrences,

    M = vol(G) / (w * alpha) * sum_{r=1..w} (D^-1 A)^r D^-1,
    M' = log(max(M, 1)),

either exactly (dense matrix powers) or through a truncated
eigendecomposition of the normalized adjacency D^-1/2 A D^-1/2, and returns
the rank-d factor U_d sqrt(Sigma_d) scaled to unit norm.

With window_scaling='double' the window sum is averaged once more, i.e. M
is further divided by w.
"""

import dataclasses
import logging
from dataclasses import dataclass
from typing import Dict, Optional

import numpy as np
from scipy import linalg, sparse
from scipy.sparse.linalg import ArpackNoConvergence, eigsh

from ..graphs.sparse_graph import SparseGraph
from .base import BaseEmbedder
from .cache import EmbeddingCache

logger = logging.getLogger(__name__)

EIGSH_TOL = 1e-8
MODES = ('exact', 'approx')
NORMALIZATIONS = ('spectral', 'frobenius')
WINDOW_SCALINGS = ('single', 'double')


@dataclass(frozen=True)
class EmbedConfig:
    """NetMF hyperparameters."""

    dimensions: int = 128
    window: int = 10
    negative: float = 1.0
    eigenpairs: int = 256
    mode: str = 'approx'
    normalization: str = 'spectral'
    window_scaling: str = 'single'

    def __post_init__(self):
        if self.dimensions < 1:
            raise ValueError(f"embedding.dimensions must be >= 1, got {self.dimensions}")
        if self.window < 1:
            raise ValueError(f"embedding.window must be >= 1, got {self.window}")
        if self.negative < 1:
            raise ValueError(f"embedding.negative must be >= 1, got {self.negative}")
        if self.eigenpairs < 1:
            raise ValueError(f"embedding.eigenpairs must be >= 1, got {self.eigenpairs}")
        if self.mode not in MODES:
            raise ValueError(f"embedding.mode must be one of {MODES}, got '{self.mode}'")
        if self.normalization not in NORMALIZATIONS:
            raise ValueError(
                f"embedding.normalization must be one of {NORMALIZATIONS}, got '{self.normalization}'"
            )
        if self.window_scaling not in WINDOW_SCALINGS:
            raise ValueError(
                f"embedding.window_scaling must be one of {WINDOW_SCALINGS}, got '{self.window_scaling}'"
            )

    @classmethod
    def from_dict(cls, config: Dict) -> 'EmbedConfig':
        """Build from an ``embedding`` config section, ignoring unrelated keys."""
        names = {f.name for f in dataclasses.fields(cls)}
        return cls(**{k: v for k, v in config.items() if k in names and v is not None})

    def clamped(self, n: int) -> 'EmbedConfig':
        """Copy with dimensions and eigenpairs capped at the node count."""
        return dataclasses.replace(
            self,
            dimensions=min(self.dimensions, n),
            eigenpairs=min(self.eigenpairs, n)
        )

    def to_dict(self) -> Dict:
        return dataclasses.asdict(self)


def _inverse_degrees(degrees: np.ndarray, power: float = 1.0) -> np.ndarray:
    """Entrywise degrees ** -power with 0 for isolated nodes."""
    inv = np.zeros(len(degrees), dtype=np.float64)
    nonzero = degrees > 0
    inv[nonzero] = degrees[nonzero].astype(np.float64) ** -power
    return inv


def _volume_scale(g: SparseGraph, cfg: EmbedConfig) -> float:
    """vol(G) / (w * alpha), divided by w again for double window scaling."""
    window_factor = cfg.window if cfg.window_scaling == 'single' else cfg.window ** 2
    return g.volume / (window_factor * cfg.negative)


def _clip_log(M: np.ndarray) -> np.ndarray:
    return np.log(np.maximum(M, 1.0))


def _check_has_edges(g: SparseGraph) -> None:
    if g.num_edges == 0:
        raise ValueError("NetMF needs a graph with at least one edge")


def netmf_matrix_exact(g: SparseGraph, cfg: EmbedConfig) -> np.ndarray:
    """
    NetMF matrix from explicit powers of the random-walk matrix.

    Args:
        g: Input graph (at least one edge)
        cfg: Embedding configuration

    Returns:
        (n, n) matrix log(max(M, 1))
    """
    _check_has_edges(g)

    A = g.to_dense()
    d_inv = _inverse_degrees(g.degrees)
    P = d_inv[:, None] * A

    window_sum = np.zeros_like(P)
    power = np.eye(g.n)
    for _ in range(cfg.window):
        power = power @ P
        window_sum += power

    M = _volume_scale(g, cfg) * window_sum * d_inv[None, :]
    return _clip_log(M)


def _top_eigenpairs(N: sparse.csr_matrix, k: int):
    """Top-k eigenpairs of a symmetric matrix by eigenvalue magnitude."""
    n = N.shape[0]

    if k >= n - 1:
        evals, evecs = linalg.eigh(N.toarray())
    else:
        # Fixed start vector keeps ARPACK deterministic.
        v0 = np.random.default_rng(0).uniform(-1.0, 1.0, size=n)
        try:
            evals, evecs = eigsh(N, k=k, which='LM', tol=EIGSH_TOL, v0=v0)
        except ArpackNoConvergence as e:
            if len(e.eigenvalues):
                residual = np.linalg.norm(N @ e.eigenvectors - e.eigenvectors * e.eigenvalues, axis=0).max()
            else:
                residual = float('nan')
            raise RuntimeError(
                f"Eigensolver did not converge: {len(e.eigenvalues)} of {k} eigenpairs, "
                f"max residual {residual:.3e}"
            ) from e

        residual = np.linalg.norm(N @ evecs - evecs * evals, axis=0).max()
        logger.debug(f"eigsh: {k} eigenpairs, max residual {residual:.3e}")

    order = np.argsort(-np.abs(evals), kind='stable')[:k]
    return evals[order], evecs[:, order]


def netmf_matrix_approx(g: SparseGraph, cfg: EmbedConfig) -> np.ndarray:
    """
    NetMF matrix through the top eigenpairs of D^-1/2 A D^-1/2.

    With N ~ U Λ Uᵀ the window sum becomes
    M ~ vol / (w * alpha) * D^-1/2 U (sum_r Λ^r) Uᵀ D^-1/2.

    Args:
        g: Input graph (at least one edge)
        cfg: Embedding configuration (eigenpairs <= n)

    Returns:
        (n, n) matrix log(max(M, 1))
    """
    _check_has_edges(g)
    if cfg.eigenpairs > g.n:
        raise ValueError(f"Requested {cfg.eigenpairs} eigenpairs for a graph of {g.n} nodes")

    d_inv_sqrt = _inverse_degrees(g.degrees, power=0.5)
    scaling = sparse.diags(d_inv_sqrt)
    N = (scaling @ g.adjacency @ scaling).tocsr()

    evals, evecs = _top_eigenpairs(N, cfg.eigenpairs)

    filtered = np.zeros_like(evals)
    power = np.ones_like(evals)
    for _ in range(cfg.window):
        power = power * evals
        filtered += power

    X = d_inv_sqrt[:, None] * evecs
    M = _volume_scale(g, cfg) * (X * filtered) @ X.T
    return _clip_log(M)


def embed_graph(g: SparseGraph, cfg: EmbedConfig, mode: Optional[str] = None) -> np.ndarray:
    """
    NetMF embedding of a graph.

    Takes the rank-d truncated SVD M' ~ U_d Σ_d V_dᵀ and returns
    Y = U_d sqrt(Σ_d) / ||U_d sqrt(Σ_d)||. Each left singular vector is
    signed so that its largest-magnitude entry is positive, which makes the
    output deterministic and equivariant under node relabeling.

    Args:
        g: Input graph
        cfg: Embedding configuration
        mode: 'exact' or 'approx' (defaults to cfg.mode)

    Returns:
        (n, d) embedding matrix
    """
    mode = mode or cfg.mode
    if mode not in MODES:
        raise ValueError(f"Unknown NetMF mode '{mode}', expected one of {MODES}")
    if g.n == 0:
        raise ValueError("Cannot embed an empty graph")
    if cfg.dimensions > g.n:
        raise ValueError(f"Embedding dimension {cfg.dimensions} exceeds node count {g.n}")

    M = netmf_matrix_exact(g, cfg) if mode == 'exact' else netmf_matrix_approx(g, cfg)

    U, s, _ = linalg.svd(M, full_matrices=False)
    U, s = U[:, :cfg.dimensions], s[:cfg.dimensions]

    pivots = np.argmax(np.abs(U), axis=0)
    signs = np.sign(U[pivots, np.arange(U.shape[1])])
    signs[signs == 0] = 1.0
    Y = (U * signs) * np.sqrt(s)

    norm = np.linalg.norm(Y, 2) if cfg.normalization == 'spectral' else np.linalg.norm(Y)
    if norm == 0:
        logger.warning("NetMF matrix is identically zero; returning zero embeddings")
        return Y

    return Y / norm


class NetMFEmbedder(BaseEmbedder):
    """
    NetMF embedder with an optional on-disk cache.

    Configuration keys (the ``embedding`` section): dimensions, window,
    negative, eigenpairs, mode, normalization, cache_dir.
    """

    def __init__(self, config: Optional[Dict] = None):
        """
        Initialize the embedder.

        Args:
            config: Embedding configuration dictionary
        """
        super().__init__(config)
        self.embed_config = EmbedConfig.from_dict(self.config)

        cache_dir = self.config.get('cache_dir')
        self.cache = EmbeddingCache(cache_dir) if cache_dir else None

    @property
    def dimensions(self) -> int:
        return self.embed_config.dimensions

    def embed(self, graph: SparseGraph) -> np.ndarray:
        """
        Embed a graph, capping d and the eigenpair count at the node count.

        Args:
            graph: Input graph

        Returns:
            (n, min(d, n)) embedding matrix
        """
        cfg = self.embed_config.clamped(graph.n)
        if cfg != self.embed_config:
            logger.info(
                f"Graph has {graph.n} nodes: using d={cfg.dimensions}, "
                f"eigenpairs={cfg.eigenpairs}"
            )

        if self.cache is not None:
            cached = self.cache.load(graph, cfg.to_dict())
            if cached is not None:
                logger.debug("Loaded embedding from cache")
                return cached

        Y = embed_graph(graph, cfg)

        if self.cache is not None:
            self.cache.save(graph, cfg.to_dict(), Y)

        return Y

"""
Undirected graph representation and the noisy-permutation operations.

A graph and its noisy permuted copy are the inputs of every alignment run:
the copy is produced with ``permute_graph`` followed by ``drop_edges``, and
``pad_to_size`` equalizes node counts when two graphs differ in size.
"""

import logging
from typing import Dict, Hashable, Iterable, List, Optional, Tuple

import numpy as np
import pandas as pd
from scipy import sparse

logger = logging.getLogger(__name__)


class SparseGraph:
    """
    Immutable undirected, unweighted graph stored as a symmetric CSR matrix.

    Self-loops are dropped and duplicate edges collapsed at construction.
    Nodes are the indices ``0..n-1``; optional external labels are kept for
    reporting.
    """

    def __init__(
        self,
        n: int,
        edges: Iterable[Tuple[int, int]],
        labels: Optional[List[Hashable]] = None
    ):
        """
        Build a graph from an edge iterable.

        Args:
            n: Number of nodes
            edges: Pairs of node indices in [0, n)
            labels: Optional external label per node index
        """
        if n < 0:
            raise ValueError(f"Node count must be non-negative, got {n}")
        if labels is not None and len(labels) != n:
            raise ValueError(f"Got {len(labels)} labels for {n} nodes")

        pairs = np.asarray(list(edges), dtype=np.int64).reshape(-1, 2)
        if pairs.size and (pairs.min() < 0 or pairs.max() >= n):
            raise ValueError(f"Edge endpoint outside [0, {n})")

        pairs = pairs[pairs[:, 0] != pairs[:, 1]]
        pairs = np.sort(pairs, axis=1)
        pairs = np.unique(pairs, axis=0) if len(pairs) else pairs.reshape(0, 2)

        self._n = int(n)
        self._edges = pairs
        self._labels = list(labels) if labels is not None else None

        rows = np.concatenate([pairs[:, 0], pairs[:, 1]])
        cols = np.concatenate([pairs[:, 1], pairs[:, 0]])
        data = np.ones(len(rows), dtype=np.float64)
        adjacency = sparse.csr_matrix((data, (rows, cols)), shape=(self._n, self._n))
        adjacency.sort_indices()
        self._adjacency = adjacency
        self._degrees = np.diff(adjacency.indptr).astype(np.int64)

    @classmethod
    def from_adjacency(cls, adjacency, labels: Optional[List[Hashable]] = None) -> 'SparseGraph':
        """
        Build a graph from a (dense or sparse) adjacency matrix.

        Only the upper triangle is read; nonzero entries become edges.
        """
        upper = sparse.triu(sparse.csr_matrix(adjacency), k=1).tocoo()
        return cls(adjacency.shape[0], zip(upper.row, upper.col), labels=labels)

    @property
    def n(self) -> int:
        """Number of nodes."""
        return self._n

    @property
    def num_edges(self) -> int:
        """Number of undirected edges."""
        return len(self._edges)

    @property
    def edges(self) -> np.ndarray:
        """Edge array of shape (|E|, 2) with i < j, sorted lexicographically."""
        view = self._edges.view()
        view.flags.writeable = False
        return view

    @property
    def adjacency(self) -> sparse.csr_matrix:
        """Symmetric CSR adjacency matrix (a copy; the graph stays immutable)."""
        return self._adjacency.copy()

    @property
    def degrees(self) -> np.ndarray:
        """Degree of every node."""
        return self._degrees.copy()

    @property
    def volume(self) -> int:
        """Sum of degrees (twice the edge count)."""
        return int(self._degrees.sum())

    @property
    def labels(self) -> Optional[List[Hashable]]:
        """External node labels, if the graph was loaded from a file."""
        return list(self._labels) if self._labels is not None else None

    def label_index(self) -> Dict[Hashable, int]:
        """Map from external label to node index."""
        if self._labels is None:
            return {i: i for i in range(self._n)}
        return {label: i for i, label in enumerate(self._labels)}

    def neighbors(self, i: int) -> np.ndarray:
        """Sorted neighbor indices of node ``i``."""
        if not 0 <= i < self._n:
            raise ValueError(f"Node {i} outside [0, {self._n})")
        start, end = self._adjacency.indptr[i], self._adjacency.indptr[i + 1]
        return self._adjacency.indices[start:end].copy()

    def has_edge(self, i: int, j: int) -> bool:
        """Whether the undirected edge (i, j) is present."""
        return bool(self._adjacency[i, j] != 0)

    def to_dense(self) -> np.ndarray:
        """Dense adjacency matrix."""
        return self._adjacency.toarray()

    def fingerprint(self) -> bytes:
        """Canonical byte representation of the structure (n and edges)."""
        header = np.array([self._n, len(self._edges)], dtype='<i8').tobytes()
        return header + self._edges.astype('<i8').tobytes()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SparseGraph):
            return NotImplemented
        return self._n == other._n and np.array_equal(self._edges, other._edges)

    def __hash__(self) -> int:
        return hash(self.fingerprint())

    def __repr__(self) -> str:
        return f"SparseGraph(n={self._n}, edges={self.num_edges})"


class GroundTruthPermutation:
    """
    Node correspondence used to build a permuted copy of a graph.

    Node ``i`` of the source graph becomes node ``perm[i]`` of the copy.
    """

    def __init__(self, perm: Iterable[int], seed: Optional[int] = None):
        """
        Args:
            perm: Bijection on [0, n) as a sequence of target indices
            seed: RNG seed the permutation was drawn with, if any
        """
        perm = np.array(list(perm) if not isinstance(perm, np.ndarray) else perm, dtype=np.int64)
        n = len(perm)
        if perm.ndim != 1 or not np.array_equal(np.sort(perm), np.arange(n)):
            raise ValueError("Permutation must contain every index in [0, n) exactly once")

        self.perm = perm
        self.perm.flags.writeable = False
        self.seed = seed

    @classmethod
    def random(cls, n: int, seed: Optional[int] = None) -> 'GroundTruthPermutation':
        """Draw a uniformly random permutation of ``n`` nodes."""
        rng = np.random.default_rng(seed)
        return cls(rng.permutation(n), seed=seed)

    @classmethod
    def identity(cls, n: int) -> 'GroundTruthPermutation':
        """Identity permutation."""
        return cls(np.arange(n))

    @property
    def n(self) -> int:
        return len(self.perm)

    def inverse(self) -> 'GroundTruthPermutation':
        """Permutation undoing this one."""
        inv = np.empty_like(self.perm)
        inv[self.perm] = np.arange(len(self.perm))
        return GroundTruthPermutation(inv, seed=self.seed)

    def to_frame(self) -> pd.DataFrame:
        """Two-column (source_index, target_index) table."""
        return pd.DataFrame({
            'source_index': np.arange(len(self.perm)),
            'target_index': self.perm
        })

    def to_csv(self, filepath: str) -> None:
        """
        Save as a two-column CSV.

        Args:
            filepath: Destination path
        """
        self.to_frame().to_csv(filepath, index=False)

    @classmethod
    def from_csv(cls, filepath: str) -> 'GroundTruthPermutation':
        """Load a permutation saved with ``to_csv``."""
        df = pd.read_csv(filepath).sort_values('source_index')
        if not np.array_equal(df['source_index'].values, np.arange(len(df))):
            raise ValueError(f"{filepath}: source_index must cover 0..n-1")
        return cls(df['target_index'].values)

    def __len__(self) -> int:
        return len(self.perm)

    def __repr__(self) -> str:
        return f"GroundTruthPermutation(n={len(self.perm)}, seed={self.seed})"


def permute_graph(g: SparseGraph, perm: GroundTruthPermutation) -> SparseGraph:
    """
    Relabel nodes: edge (i, j) of ``g`` becomes (perm[i], perm[j]).

    Args:
        g: Source graph
        perm: Permutation with ``len(perm) == g.n``

    Returns:
        Permuted graph (the matrix P A Pᵀ)
    """
    if len(perm) != g.n:
        raise ValueError(f"Permutation length {len(perm)} does not match graph size {g.n}")

    mapped = perm.perm[g.edges] if g.num_edges else np.empty((0, 2), dtype=np.int64)

    labels = None
    if g.labels is not None:
        labels = [None] * g.n
        for i, label in enumerate(g.labels):
            labels[perm.perm[i]] = label

    return SparseGraph(g.n, mapped, labels=labels)


def drop_edges(g: SparseGraph, p: float, seed: Optional[int] = None) -> SparseGraph:
    """
    Remove each undirected edge independently with probability ``p``.

    One Bernoulli draw per unordered edge keeps the result symmetric; nodes
    that lose all their edges stay in the graph.

    Args:
        g: Source graph
        p: Removal probability in [0, 1]
        seed: RNG seed

    Returns:
        Noisy graph on the same node set
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"Edge removal probability must be in [0, 1], got {p}")

    rng = np.random.default_rng(seed)
    keep = rng.random(g.num_edges) >= p
    logger.debug(f"Dropping {int((~keep).sum())} of {g.num_edges} edges (p={p})")

    return SparseGraph(g.n, g.edges[keep], labels=g.labels)


def pad_to_size(g: SparseGraph, n_target: int) -> SparseGraph:
    """
    Append isolated nodes until the graph has ``n_target`` nodes.

    Args:
        g: Source graph
        n_target: Desired node count (>= g.n)

    Returns:
        Padded graph
    """
    if n_target < g.n:
        raise ValueError(f"Cannot pad a graph of {g.n} nodes down to {n_target}")
    if n_target == g.n:
        return g

    labels = None
    if g.labels is not None:
        labels = g.labels + [f"__pad_{k}" for k in range(n_target - g.n)]

    return SparseGraph(n_target, g.edges, labels=labels)

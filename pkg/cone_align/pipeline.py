"""
Unsupervised network alignment pipeline.

This module provides the ConeAligner class that wires the three steps
together: embed both graphs, align the embedding subspaces, match nodes.
"""

import logging
import time
from dataclasses import dataclass, field
from typing import Dict, List, Optional

import numpy as np
import pandas as pd

from .aligners.wasserstein_procrustes import WassersteinProcrustesAligner
from .embedders.netmf import NetMFEmbedder
from .graphs.sparse_graph import SparseGraph, pad_to_size
from .matchers.alignment import UNMATCHED, Alignment
from .matchers.kdtree import KDTreeMatcher
from .matchers.sinkhorn import SinkhornMatcher
from .utils.config import Config

logger = logging.getLogger(__name__)


@dataclass
class PipelineResult:
    """Output of one alignment run."""

    alignment: Alignment
    Q: np.ndarray
    Y1: np.ndarray
    Y2: np.ndarray
    timings: Dict[str, float] = field(default_factory=dict)
    init_objectives: List[float] = field(default_factory=list)
    trace: pd.DataFrame = field(default_factory=pd.DataFrame)


class ConeAligner:
    """
    Embedding-based graph aligner that coordinates all components.

    Components are chosen by the ``type`` key of their config section:
    embedding 'netmf', alignment 'wasserstein_procrustes', matching
    'kdtree' (greedy nearest neighbor) or 'sinkhorn' (one-to-one).
    """

    def __init__(self, config: Optional[Config] = None):
        """
        Initialize the aligner pipeline.

        Args:
            config: Configuration object (uses defaults if not provided)
        """
        self.config = config or Config()

        self.embedder = None
        self.matcher = None

        self._initialize_components()

    def _initialize_components(self) -> None:
        """Initialize pipeline components based on configuration."""
        embedding_config = self.config.get_embedding_config()
        embedding_type = embedding_config.get('type', 'netmf')

        if embedding_type == 'netmf':
            self.embedder = NetMFEmbedder(embedding_config)
        else:
            raise ValueError(f"Unsupported embedding type: {embedding_type}")

        alignment_type = self.config.get('alignment.type', 'wasserstein_procrustes')
        if alignment_type != 'wasserstein_procrustes':
            raise ValueError(f"Unsupported alignment type: {alignment_type}")
        # Validates the section now; a fresh aligner is built per run.
        self.build_aligner()

        matching_config = self.config.get_matching_config()
        matching_type = matching_config.get('type', 'kdtree')

        if matching_type == 'kdtree':
            self.matcher = KDTreeMatcher(matching_config)
        elif matching_type == 'sinkhorn':
            self.matcher = SinkhornMatcher(matching_config)
        else:
            raise ValueError(f"Unsupported matching type: {matching_type}")

        logger.debug(f"Initialized pipeline: {embedding_type} / {alignment_type} / {matching_type}")

    def build_aligner(
        self,
        seed: Optional[int] = None,
        n_nodes: Optional[int] = None
    ) -> WassersteinProcrustesAligner:
        """
        Build a subspace aligner from the alignment section.

        Args:
            seed: Minibatch seed overriding alignment.seed
            n_nodes: Node count; the batch size is capped at it

        Returns:
            Fresh aligner
        """
        alignment_config = dict(self.config.get_alignment_config())
        if seed is not None:
            alignment_config['seed'] = seed

        batch_size = alignment_config.get('batch_size', 10)
        if n_nodes is not None and batch_size is not None and batch_size > n_nodes:
            logger.info(f"Graph has {n_nodes} nodes: using batch size {n_nodes}")
            alignment_config['batch_size'] = n_nodes

        return WassersteinProcrustesAligner(alignment_config)

    def align(self, g1: SparseGraph, g2: SparseGraph, seed: Optional[int] = None) -> PipelineResult:
        """
        Align g1 to g2.

        Graphs of different sizes are padded with isolated nodes to the larger
        size first. The returned mapping covers the nodes of g1 only; a node
        of g1 whose nearest match is a padding node maps to UNMATCHED (-1)
        with a NaN distance.

        Args:
            g1: First graph
            g2: Second graph
            seed: Minibatch seed for the stochastic phase

        Returns:
            PipelineResult with the alignment, transform, embeddings and timings
        """
        n1, n2 = g1.n, g2.n
        n = max(n1, n2)
        if g1.n != g2.n:
            logger.info(f"Padding graphs to {n} nodes ({g1.n} vs {g2.n})")
            g1, g2 = pad_to_size(g1, n), pad_to_size(g2, n)

        timings: Dict[str, float] = {}

        start = time.perf_counter()
        Y1 = self.embedder.embed(g1)
        Y2 = self.embedder.embed(g2)
        timings['embed'] = time.perf_counter() - start
        logger.info(f"Embedded {n} nodes into {Y1.shape[1]} dimensions ({timings['embed']:.2f}s)")

        aligner = self.build_aligner(seed=seed, n_nodes=n)

        start = time.perf_counter()
        Q = aligner.align(Y1, Y2, g1, g2)
        timings['align'] = time.perf_counter() - start
        logger.info(f"Aligned embedding subspaces ({timings['align']:.2f}s)")

        start = time.perf_counter()
        alignment = self.matcher.match(Y1, Q, Y2)
        timings['match'] = time.perf_counter() - start

        if n1 != n2:
            alignment = alignment.restrict(n1, n2)
            unmatched = int(np.sum(alignment.mapping == UNMATCHED))
            if unmatched:
                logger.info(f"{unmatched} node(s) matched to padding; marked unmatched")

        return PipelineResult(
            alignment=alignment,
            Q=Q,
            Y1=Y1,
            Y2=Y2,
            timings=timings,
            init_objectives=list(aligner.init_objectives),
            trace=aligner.trace_frame()
        )

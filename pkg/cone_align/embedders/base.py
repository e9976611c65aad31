"""
Abstract base class for node embedding implementations.

This module defines the interface that all embedders must follow, so the
alignment pipeline can work with any proximity-preserving embedding.
"""

from abc import ABC, abstractmethod
from typing import Dict, Optional

import numpy as np

from ..graphs.sparse_graph import SparseGraph


class BaseEmbedder(ABC):
    """
    Abstract base class for node embedders.

    Implementations map a graph to an (n, d) float64 matrix whose rows are
    node embeddings, normalized as the pipeline expects.
    """

    def __init__(self, config: Optional[Dict] = None):
        """
        Initialize the embedder with configuration.

        Args:
            config: Dictionary containing embedder-specific configuration
        """
        self.config = config or {}

    @abstractmethod
    def embed(self, graph: SparseGraph) -> np.ndarray:
        """
        Embed the nodes of a graph.

        Args:
            graph: Input graph

        Returns:
            (n, d) embedding matrix
        """
        pass

    @property
    @abstractmethod
    def dimensions(self) -> int:
        """Embedding dimension d."""
        pass

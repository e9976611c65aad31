"""
Abstract base class for embedding-subspace aligners.

This module defines the interface that all aligners must follow: given the
embeddings of two graphs (and the graphs themselves), find an orthogonal
transform Q that maps the first embedding space onto the second.
"""

from abc import ABC, abstractmethod
from typing import Dict, Optional

import numpy as np

from ..graphs.sparse_graph import SparseGraph


class BaseAligner(ABC):
    """
    Abstract base class for subspace aligners.

    Aligner objects keep per-run diagnostics on themselves, so one instance
    must not be shared between threads while a run is in progress.
    """

    def __init__(self, config: Optional[Dict] = None):
        """
        Initialize the aligner with configuration.

        Args:
            config: Dictionary containing aligner-specific configuration
        """
        self.config = config or {}

    @abstractmethod
    def align(
        self,
        Y1: np.ndarray,
        Y2: np.ndarray,
        A1: SparseGraph,
        A2: SparseGraph
    ) -> np.ndarray:
        """
        Align the embedding space of Y1 to that of Y2.

        Args:
            Y1: (n, d) embeddings of the first graph
            Y2: (n, d) embeddings of the second graph
            A1: First graph
            A2: Second graph

        Returns:
            (d, d) orthogonal transform Q such that Y1 Q is comparable to Y2
        """
        pass

"""
Abstract base class for node matchers.

A matcher turns two embedding matrices and the subspace transform Q into a
node alignment from the first graph to the second.
"""

from abc import ABC, abstractmethod
from typing import Dict, Optional

import numpy as np

from .alignment import Alignment


class BaseMatcher(ABC):
    """Abstract base class for matchers."""

    def __init__(self, config: Optional[Dict] = None):
        """
        Initialize the matcher with configuration.

        Args:
            config: Dictionary containing matcher-specific configuration
        """
        self.config = config or {}

    @abstractmethod
    def match(self, Y1: np.ndarray, Q: np.ndarray, Y2: np.ndarray) -> Alignment:
        """
        Match every row of Y1 Q to a row of Y2.

        Args:
            Y1: (n1, d) embeddings of the first graph
            Q: (d, d) orthogonal transform
            Y2: (n2, d) embeddings of the second graph

        Returns:
            Alignment of the first graph's nodes onto the second graph's
        """
        pass


def check_shapes(Y1: np.ndarray, Q: np.ndarray, Y2: np.ndarray) -> None:
    """Raise ValueError unless Y1 Q and Y2 live in the same space."""
    if Y1.ndim != 2 or Y2.ndim != 2 or Q.ndim != 2:
        raise ValueError("Embeddings and transform must be 2-D")
    if Q.shape[0] != Q.shape[1] or Y1.shape[1] != Q.shape[0] or Y2.shape[1] != Q.shape[1]:
        raise ValueError(f"Shapes do not conform: Y1 {Y1.shape}, Q {Q.shape}, Y2 {Y2.shape}")
    if Y1.shape[0] == 0 or Y2.shape[0] == 0:
        raise ValueError("Cannot match empty embeddings")

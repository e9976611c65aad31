"""
Node alignment result.
"""

from dataclasses import dataclass
from typing import Dict, List, Optional

import numpy as np
import pandas as pd

UNMATCHED = -1


@dataclass
class Alignment:
    """
    Map from the nodes of one graph to the nodes of another.

    Attributes:
        mapping: mapping[i] is the node of the second graph matched to node i
            (UNMATCHED when its match was a padding node, see ``restrict``)
        distances: Euclidean distance between row i of Y1 Q and row mapping[i] of Y2
        top_k: Optional (n, k) ranked candidate lists, nearest first
        similarity: Optional soft alignment (transport plan) the mapping was rounded from
    """

    mapping: np.ndarray
    distances: np.ndarray
    top_k: Optional[np.ndarray] = None
    similarity: Optional[np.ndarray] = None

    def __post_init__(self):
        self.mapping = np.asarray(self.mapping, dtype=np.int64)
        self.distances = np.asarray(self.distances, dtype=np.float64)
        if self.mapping.shape != self.distances.shape:
            raise ValueError(
                f"mapping and distances differ in length: {self.mapping.shape} vs {self.distances.shape}"
            )

    def __len__(self) -> int:
        return len(self.mapping)

    @property
    def is_injective(self) -> bool:
        matched = self.mapping[self.mapping != UNMATCHED]
        return len(np.unique(matched)) == len(matched)

    def to_frame(self) -> pd.DataFrame:
        """Table with columns source_index, target_index, distance."""
        return pd.DataFrame({
            'source_index': np.arange(len(self.mapping)),
            'target_index': self.mapping,
            'distance': self.distances
        })

    def top_k_dict(self) -> Dict[str, List[int]]:
        """Ranked candidates keyed by source index (JSON-ready)."""
        if self.top_k is None:
            return {}
        return {str(i): [int(j) for j in row] for i, row in enumerate(self.top_k)}

    def restrict(self, n_source: int, n_target: int) -> 'Alignment':
        """
        Alignment of the first n_source nodes onto the first n_target nodes.

        Undoes padding: rows beyond n_source are dropped, and matches (and
        top-k candidates) pointing at a node >= n_target become UNMATCHED
        with a NaN distance.
        """
        mapping = self.mapping[:n_source].copy()
        distances = self.distances[:n_source].copy()
        padded = mapping >= n_target
        mapping[padded] = UNMATCHED
        distances[padded] = np.nan

        top_k = None
        if self.top_k is not None:
            top_k = np.where(self.top_k[:n_source] >= n_target, UNMATCHED, self.top_k[:n_source])

        similarity = None
        if self.similarity is not None:
            similarity = self.similarity[:n_source, :n_target]

        return Alignment(mapping=mapping, distances=distances, top_k=top_k, similarity=similarity)

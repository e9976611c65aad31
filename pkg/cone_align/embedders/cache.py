"""
On-disk cache of embedding matrices.

Files are keyed by a hash of the graph structure and the embedding
configuration. Layout: two little-endian int64 header fields (n, d)
followed by the row-major little-endian float64 values.
"""

import hashlib
import json
import logging
import os
from typing import Dict, Optional

import numpy as np

from ..graphs.sparse_graph import SparseGraph

logger = logging.getLogger(__name__)

HEADER_DTYPE = np.dtype('<i8')
VALUE_DTYPE = np.dtype('<f8')


class EmbeddingCache:
    """Binary embedding store keyed by (graph, config)."""

    def __init__(self, cache_dir: str):
        """
        Args:
            cache_dir: Directory holding ``<key>.emb`` files (created if missing)
        """
        self.cache_dir = cache_dir
        os.makedirs(self.cache_dir, exist_ok=True)

    @staticmethod
    def key(graph: SparseGraph, config: Dict) -> str:
        """Hex digest identifying the graph structure and configuration."""
        digest = hashlib.sha256()
        digest.update(graph.fingerprint())
        digest.update(json.dumps(config, sort_keys=True).encode('utf-8'))
        return digest.hexdigest()

    def path_for(self, graph: SparseGraph, config: Dict) -> str:
        return os.path.join(self.cache_dir, f"{self.key(graph, config)}.emb")

    def save(self, graph: SparseGraph, config: Dict, values: np.ndarray) -> str:
        """
        Store an embedding matrix.

        Returns:
            Path of the written file
        """
        path = self.path_for(graph, config)
        write_embedding(path, values)
        return path

    def load(self, graph: SparseGraph, config: Dict) -> Optional[np.ndarray]:
        """
        Fetch a cached embedding.

        Returns:
            The matrix, or None on a cache miss or unreadable file
        """
        path = self.path_for(graph, config)
        if not os.path.exists(path):
            return None
        try:
            values = read_embedding(path)
        except ValueError as e:
            logger.warning(f"Ignoring corrupt cache entry {path}: {e}")
            return None
        if values.shape[0] != graph.n:
            logger.warning(f"Ignoring cache entry {path}: {values.shape[0]} rows for {graph.n} nodes")
            return None
        return values


def write_embedding(path: str, values: np.ndarray) -> None:
    """Write an (n, d) matrix in the cache file layout."""
    values = np.asarray(values, dtype=np.float64)
    if values.ndim != 2:
        raise ValueError(f"Embedding must be 2-D, got shape {values.shape}")

    header = np.array(values.shape, dtype=HEADER_DTYPE)
    with open(path, 'wb') as f:
        f.write(header.tobytes())
        f.write(np.ascontiguousarray(values, dtype=VALUE_DTYPE).tobytes())


def read_embedding(path: str) -> np.ndarray:
    """Read a matrix written by ``write_embedding``."""
    with open(path, 'rb') as f:
        payload = f.read()

    header_size = 2 * HEADER_DTYPE.itemsize
    if len(payload) < header_size:
        raise ValueError("file shorter than header")

    n, d = (int(x) for x in np.frombuffer(payload[:header_size], dtype=HEADER_DTYPE))
    expected = header_size + n * d * VALUE_DTYPE.itemsize
    if n < 0 or d < 0 or len(payload) != expected:
        raise ValueError(f"size mismatch for header ({n}, {d})")

    values = np.frombuffer(payload[header_size:], dtype=VALUE_DTYPE).reshape(n, d)
    return values.astype(np.float64)

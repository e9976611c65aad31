"""Node embedding implementations."""

from .base import BaseEmbedder
from .cache import EmbeddingCache
from .netmf import (
    EmbedConfig,
    NetMFEmbedder,
    netmf_matrix_exact,
    netmf_matrix_approx,
    embed_graph,
)

__all__ = [
    "BaseEmbedder",
    "EmbeddingCache",
    "EmbedConfig",
    "NetMFEmbedder",
    "netmf_matrix_exact",
    "netmf_matrix_approx",
    "embed_graph",
]

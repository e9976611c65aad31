"""Embedding-subspace aligners."""

from .base import BaseAligner
from .wasserstein_procrustes import (
    SubspaceConfig,
    WassersteinProcrustesAligner,
    matching_objective,
)

__all__ = [
    "BaseAligner",
    "SubspaceConfig",
    "WassersteinProcrustesAligner",
    "matching_objective",
]

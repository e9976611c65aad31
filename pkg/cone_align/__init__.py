"""
Cone Align - Unsupervised network alignment with embedding subspace alignment
"""

__version__ = "0.1.0"

from .aligners.base import BaseAligner
from .embedders.base import BaseEmbedder
from .matchers.base import BaseMatcher
from .pipeline import ConeAligner, PipelineResult

__all__ = ["BaseAligner", "BaseEmbedder", "BaseMatcher", "ConeAligner", "PipelineResult"]

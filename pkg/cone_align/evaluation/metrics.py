"""
Alignment quality metrics.

Accuracy against the ground-truth permutation, matched neighborhood
consistency (MNC) per node and on average, and the degree-stratified MNC
breakdown for correctly and incorrectly aligned nodes.

MNC of node i matched to node j is the Jaccard similarity between the image
of i's neighborhood under the alignment and j's actual neighborhood. It is
undefined (None) when both sets are empty.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Dict, Optional, Union

import numpy as np
import pandas as pd

from ..graphs.sparse_graph import GroundTruthPermutation, SparseGraph
from ..matchers.alignment import Alignment

logger = logging.getLogger(__name__)

AlignmentLike = Union[Alignment, np.ndarray]
BUCKETS = ('low', 'mid', 'high')


def _mapping(pi: AlignmentLike) -> np.ndarray:
    if isinstance(pi, Alignment):
        return pi.mapping
    return np.asarray(pi, dtype=np.int64)


def mnc(g1: SparseGraph, g2: SparseGraph, pi: AlignmentLike, i: int, j: int) -> Optional[float]:
    """
    Matched neighborhood consistency of node i (in g1) against node j (in g2).

    Args:
        g1: First graph
        g2: Second graph
        pi: Alignment (or raw mapping array) from g1 to g2
        i: Node of g1
        j: Node of g2

    Returns:
        Jaccard similarity in [0, 1], or None when both sets are empty
    """
    mapping = _mapping(pi)
    if not 0 <= i < g1.n:
        raise ValueError(f"Node {i} is not in the first graph (n={g1.n})")
    if not 0 <= j < g2.n:
        raise ValueError(f"Node {j} is not in the second graph (n={g2.n})")

    mapped = np.unique(mapping[g1.neighbors(i)])
    actual = g2.neighbors(j)

    union = np.union1d(mapped, actual)
    if len(union) == 0:
        return None
    return len(np.intersect1d(mapped, actual, assume_unique=True)) / len(union)


@dataclass
class EvalReport:
    """
    Evaluation of one alignment.

    Attributes:
        accuracy: Fraction of nodes matched to their true counterpart
        mean_mnc: Mean MNC over nodes where it is defined (NaN if none)
        n_undefined: Number of nodes with undefined MNC
        per_node: Table with columns node, match, mnc (NaN if undefined), correct, degree
        degree_groups: Degree-stratified summary (see degree_stratified_mnc)
    """

    accuracy: float
    mean_mnc: float
    n_undefined: int
    per_node: pd.DataFrame
    degree_groups: Dict = field(default_factory=dict)

    @property
    def n_nodes(self) -> int:
        return len(self.per_node)

    def to_dict(self, include_values: bool = False) -> Dict:
        """JSON-safe summary; per-bucket MNC value lists only when requested."""
        groups = {}
        for name, group in self.degree_groups.items():
            groups[name] = {
                'bounds': group['bounds'],
                'size': group['size'],
                'correct': _without_values(group['correct'], include_values),
                'incorrect': _without_values(group['incorrect'], include_values)
            }

        return {
            'accuracy': _finite_or_none(self.accuracy),
            'mean_mnc': _finite_or_none(self.mean_mnc),
            'n_undefined': int(self.n_undefined),
            'n_nodes': int(self.n_nodes),
            'degree_groups': groups
        }


def _finite_or_none(value: Optional[float]) -> Optional[float]:
    if value is None or not math.isfinite(value):
        return None
    return float(value)


def _without_values(stats: Dict, include_values: bool) -> Dict:
    if include_values:
        return dict(stats)
    return {k: v for k, v in stats.items() if k != 'values'}


def evaluate(
    g1: SparseGraph,
    g2: SparseGraph,
    pi: AlignmentLike,
    truth: GroundTruthPermutation
) -> EvalReport:
    """
    Accuracy and MNC of an alignment against the ground truth.

    Args:
        g1: First graph
        g2: Second graph
        pi: Alignment from g1 to g2
        truth: True correspondence (node i of g1 is node truth.perm[i] of g2)

    Returns:
        EvalReport with per-node records and degree groups filled in
    """
    mapping = _mapping(pi)
    if len(mapping) != g1.n or truth.n != g1.n:
        raise ValueError(
            f"Size mismatch: alignment covers {len(mapping)} nodes, graph has {g1.n}, truth has {truth.n}"
        )
    if len(mapping) and (mapping.min() < 0 or mapping.max() >= g2.n):
        raise ValueError(f"Alignment maps outside the second graph (n={g2.n})")

    correct = mapping == truth.perm
    scores = [mnc(g1, g2, mapping, i, int(mapping[i])) for i in range(g1.n)]
    values = np.array([np.nan if s is None else s for s in scores], dtype=np.float64)

    defined = ~np.isnan(values)
    n_undefined = int(np.sum(~defined))
    mean_mnc = float(values[defined].mean()) if defined.any() else float('nan')
    if n_undefined:
        logger.info(f"MNC undefined for {n_undefined} node(s); excluded from the mean")

    per_node = pd.DataFrame({
        'node': np.arange(g1.n),
        'match': mapping,
        'mnc': values,
        'correct': correct,
        'degree': g1.degrees
    })

    report = EvalReport(
        accuracy=float(correct.mean()) if g1.n else 0.0,
        mean_mnc=mean_mnc,
        n_undefined=n_undefined,
        per_node=per_node
    )
    report.degree_groups = degree_stratified_mnc(report, g1)
    return report


def _mnc_stats(values: np.ndarray) -> Dict:
    values = values[~np.isnan(values)]
    if len(values) == 0:
        return {'count': 0, 'mean': None, 'std': None, 'median': None, 'values': []}
    return {
        'count': int(len(values)),
        'mean': float(np.mean(values)),
        'std': float(np.std(values)),
        'median': float(np.median(values)),
        'values': [float(v) for v in values]
    }


def degree_stratified_mnc(report: EvalReport, g1: SparseGraph) -> Dict[str, Dict]:
    """
    MNC distributions by degree group.

    Nodes are split by their degree in g1 into [0, D/3), [D/3, 2D/3) and
    [2D/3, D] where D is the maximum degree of g1. Within each group the MNC
    values of correctly and incorrectly aligned nodes are summarized
    separately.

    Args:
        report: Populated evaluation report
        g1: First graph (degrees are taken from it)

    Returns:
        Dict keyed 'low', 'mid', 'high' with bounds, size and
        'correct'/'incorrect' statistics (count, mean, std, median, values)
    """
    if len(report.per_node) != g1.n:
        raise ValueError(f"Report covers {len(report.per_node)} nodes, graph has {g1.n}")

    degrees = g1.degrees.astype(np.float64)
    max_degree = float(degrees.max()) if g1.n else 0.0
    lower, upper = max_degree / 3.0, 2.0 * max_degree / 3.0

    masks = {
        'low': degrees < lower,
        'mid': (degrees >= lower) & (degrees < upper),
        'high': degrees >= upper
    }
    bounds = {'low': [0.0, lower], 'mid': [lower, upper], 'high': [upper, max_degree]}

    values = report.per_node['mnc'].to_numpy(dtype=np.float64)
    correct = report.per_node['correct'].to_numpy(dtype=bool)

    groups = {}
    for name in BUCKETS:
        mask = masks[name]
        groups[name] = {
            'bounds': bounds[name],
            'size': int(mask.sum()),
            'correct': _mnc_stats(values[mask & correct]),
            'incorrect': _mnc_stats(values[mask & ~correct])
        }
    return groups

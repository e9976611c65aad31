"""
Edge-list ingestion.

Reads plain-text edge lists (one edge per line, whitespace- or
comma-separated, '#' / '%' comment lines) such as the KONECT and SNAP
dumps the alignment benchmarks are distributed as.
"""

import logging
import os
import re
from typing import Dict, List, Tuple

from .sparse_graph import SparseGraph

logger = logging.getLogger(__name__)

COMMENT_PREFIXES = ('#', '%')
FORMATS = ('auto', 'whitespace', 'comma')


def _split_line(line: str, fmt: str) -> List[str]:
    if fmt == 'comma':
        return [tok.strip() for tok in line.split(',') if tok.strip()]
    if fmt == 'whitespace':
        return line.split()
    return [tok for tok in re.split(r'[,\s]+', line) if tok]


def _is_int(token: str) -> bool:
    try:
        int(token)
    except ValueError:
        return False
    return True


def load_edge_list(path: str, fmt: str = 'auto') -> SparseGraph:
    """
    Load an undirected graph from an edge-list file.

    Node identifiers are relabeled to contiguous 0-based indices: in numeric
    order when every identifier is an integer, in order of first appearance
    otherwise. Columns after the first two (weights, timestamps) are
    ignored, duplicate edges are collapsed and self-loops dropped.

    Args:
        path: Edge-list file
        fmt: 'auto', 'whitespace' or 'comma'

    Returns:
        SparseGraph carrying the original labels
    """
    if fmt not in FORMATS:
        raise ValueError(f"Unsupported edge-list format '{fmt}', expected one of {FORMATS}")
    if not os.path.exists(path):
        raise ValueError(f"Edge-list file not found: {path}")

    raw_edges: List[Tuple[str, str]] = []
    first_seen: Dict[str, int] = {}

    with open(path, 'rb') as f:
        for line_no, raw in enumerate(f, start=1):
            try:
                stripped = raw.decode('utf-8-sig').strip()
            except UnicodeDecodeError as e:
                raise ValueError(f"{path}:{line_no}: not valid UTF-8 ({e.reason})") from e
            if not stripped or stripped.startswith(COMMENT_PREFIXES):
                continue

            tokens = _split_line(stripped, fmt)
            if len(tokens) < 2:
                raise ValueError(
                    f"{path}:{line_no}: expected two node identifiers, got {stripped!r}"
                )

            u, v = tokens[0], tokens[1]
            for token in (u, v):
                if token not in first_seen:
                    first_seen[token] = len(first_seen)
            raw_edges.append((u, v))

    if not raw_edges:
        raise ValueError(f"{path}: no edges found")

    tokens = list(first_seen)
    if all(_is_int(tok) for tok in tokens):
        labels = sorted({int(tok) for tok in tokens})
        index = {str(label): i for i, label in enumerate(labels)}
        # Tokens like "007" and "7" name the same node.
        index.update({tok: index[str(int(tok))] for tok in tokens})
    else:
        labels = tokens
        index = dict(first_seen)

    edges = [(index[u], index[v]) for u, v in raw_edges]
    graph = SparseGraph(len(labels), edges, labels=labels)

    if graph.num_edges == 0:
        raise ValueError(f"{path}: graph has no edges after dropping self-loops")

    logger.info(f"Loaded {path}: {graph.n} nodes, {graph.num_edges} edges")
    return graph


def save_edge_list(graph: SparseGraph, path: str, use_labels: bool = True) -> None:
    """
    Write a graph as a whitespace-separated edge list.

    Args:
        graph: Graph to write
        path: Destination file
        use_labels: Write external labels instead of indices when available
    """
    labels = graph.labels if use_labels else None
    with open(path, 'w', encoding='utf-8') as f:
        f.write(f"# nodes: {graph.n} edges: {graph.num_edges}\n")
        for i, j in graph.edges:
            if labels is not None:
                f.write(f"{labels[i]} {labels[j]}\n")
            else:
                f.write(f"{i} {j}\n")

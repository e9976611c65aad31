"""
Deterministic synthetic graphs for desk-scale experiments and tests.
"""

from typing import Any, Dict, Optional, Tuple

import networkx as nx

from .sparse_graph import SparseGraph

GENERATORS = ('random_regular', 'erdos_renyi', 'barbell')


def _from_networkx(graph: nx.Graph) -> SparseGraph:
    return SparseGraph(graph.number_of_nodes(), graph.edges())


def synth_graph(
    kind: str,
    n: int,
    params: Optional[Dict[str, Any]] = None,
    seed: Optional[int] = None
) -> SparseGraph:
    """
    Generate a synthetic graph.

    Kinds and their parameters:
        random_regular: degree (default 6)
        erdos_renyi: p (default 0.1)
        barbell: clique_size (default n // 2); leftover nodes form the path
            joining the two cliques

    Args:
        kind: Generator name
        n: Number of nodes (>= 2)
        params: Generator parameters
        seed: RNG seed (ignored by the deterministic barbell)

    Returns:
        SparseGraph on n nodes
    """
    params = params or {}
    if n < 2:
        raise ValueError(f"Synthetic graphs need at least 2 nodes, got {n}")

    if kind == 'random_regular':
        degree = int(params.get('degree', 6))
        if degree < 0 or degree >= n:
            raise ValueError(f"Degree {degree} infeasible for a regular graph on {n} nodes")
        if (n * degree) % 2 != 0:
            raise ValueError(f"n * degree must be even, got n={n}, degree={degree}")
        return _from_networkx(nx.random_regular_graph(degree, n, seed=seed))

    if kind == 'erdos_renyi':
        p = float(params.get('p', 0.1))
        if not 0.0 <= p <= 1.0:
            raise ValueError(f"Edge probability must be in [0, 1], got {p}")
        return _from_networkx(nx.erdos_renyi_graph(n, p, seed=seed))

    if kind == 'barbell':
        clique_size = int(params.get('clique_size', n // 2))
        if clique_size < 2 or 2 * clique_size > n:
            raise ValueError(f"Clique size {clique_size} infeasible for a barbell on {n} nodes")
        return _from_networkx(nx.barbell_graph(clique_size, n - 2 * clique_size))

    raise ValueError(f"Unknown generator '{kind}', expected one of {GENERATORS}")


def _coerce(value: str) -> Any:
    for cast in (int, float):
        try:
            return cast(value)
        except ValueError:
            continue
    return value


def parse_generator_descriptor(descriptor: str) -> Tuple[str, int, Dict[str, Any], Optional[int]]:
    """
    Parse ``"kind:n=100,degree=6,seed=1"`` into synth_graph arguments.

    Returns:
        (kind, n, params, seed)
    """
    kind, _, rest = descriptor.partition(':')
    kind = kind.strip()
    params: Dict[str, Any] = {}

    for item in filter(None, (part.strip() for part in rest.split(','))):
        key, sep, value = item.partition('=')
        if not sep:
            raise ValueError(f"Malformed generator parameter '{item}' in '{descriptor}'")
        params[key.strip()] = _coerce(value.strip())

    if 'n' not in params:
        raise ValueError(f"Generator descriptor '{descriptor}' must set n")

    n = int(params.pop('n'))
    seed = params.pop('seed', None)
    return kind, n, params, (int(seed) if seed is not None else None)

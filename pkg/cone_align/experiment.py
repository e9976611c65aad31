"""
Noisy-permutation experiment harness.

For every noise level p and trial, a graph is aligned to a randomly
permuted copy of itself from which each edge was removed with probability
p. Every run writes its own records; an aggregate table summarizes accuracy
and MNC per noise level.
"""

import logging
import os
import platform
import time
import traceback
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np
import pandas as pd
from joblib import Parallel, delayed

from .evaluation.metrics import evaluate
from .graphs.generators import parse_generator_descriptor, synth_graph
from .graphs.loader import load_edge_list
from .graphs.sparse_graph import GroundTruthPermutation, SparseGraph, drop_edges, permute_graph
from .pipeline import ConeAligner
from .utils.config import Config
from .utils.data_store import ResultStore

logger = logging.getLogger(__name__)

AGGREGATE_COLUMNS = [
    'p', 'n_runs', 'n_failed', 'accuracy_mean', 'accuracy_std', 'mnc_mean', 'mnc_std'
]


@dataclass
class ExperimentSpec:
    """
    Full description of an experiment.

    Attributes:
        dataset: Edge-list path or generator descriptor ("kind:n=..,k=v,seed=..")
        noise_levels: Edge-removal probabilities
        trials: Runs per noise level
        seed: Master seed
        embed_cfg: ``embedding`` config section
        subspace_cfg: ``alignment`` config section
        matching_cfg: ``matching`` config section
        output_dir: Result directory
        dataset_format: Edge-list format ('auto', 'whitespace', 'comma')
        diagnostics: Record per-iteration traces
        parallel: Number of runs executed concurrently
    """

    dataset: str
    noise_levels: List[float] = field(default_factory=lambda: [0.05, 0.10, 0.15, 0.20, 0.25])
    trials: int = 5
    seed: int = 0
    embed_cfg: Dict = field(default_factory=dict)
    subspace_cfg: Dict = field(default_factory=dict)
    matching_cfg: Dict = field(default_factory=dict)
    output_dir: str = 'results'
    dataset_format: str = 'auto'
    diagnostics: bool = False
    parallel: int = 1

    def __post_init__(self):
        if not self.dataset:
            raise ValueError("Experiment needs a dataset path or generator descriptor")
        if not self.noise_levels:
            raise ValueError("Experiment needs at least one noise level")
        for p in self.noise_levels:
            if not 0.0 <= float(p) <= 1.0:
                raise ValueError(f"Noise level must be in [0, 1], got {p}")
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")
        if self.parallel < 1:
            raise ValueError(f"parallel must be >= 1, got {self.parallel}")

    @classmethod
    def from_config(cls, config: Config) -> 'ExperimentSpec':
        """
        Build from a Config.

        The dataset is dataset.path when set, dataset.generator otherwise.
        """
        dataset_config = config.get_dataset_config()
        experiment_config = config.get_experiment_config()

        subspace_cfg = dict(config.get_alignment_config())
        diagnostics = bool(subspace_cfg.get('diagnostics', False))

        return cls(
            dataset=dataset_config.get('path') or dataset_config.get('generator'),
            noise_levels=[float(p) for p in experiment_config.get('noise_levels', [])],
            trials=int(experiment_config.get('trials', 5)),
            seed=int(experiment_config.get('seed', 0)),
            embed_cfg=dict(config.get_embedding_config()),
            subspace_cfg=subspace_cfg,
            matching_cfg=dict(config.get_matching_config()),
            output_dir=experiment_config.get('output_dir', 'results'),
            dataset_format=dataset_config.get('format', 'auto'),
            diagnostics=diagnostics,
            parallel=int(experiment_config.get('parallel', 1))
        )

    def to_config(self) -> Config:
        """Config holding this spec's component sections."""
        config = Config()
        config.set('embedding', dict(self.embed_cfg))
        config.set('alignment', {**self.subspace_cfg, 'diagnostics': self.diagnostics})
        config.set('matching', dict(self.matching_cfg))
        return config


def load_dataset(descriptor: str, fmt: str = 'auto') -> SparseGraph:
    """
    Load an edge list, or generate a graph from a generator descriptor.

    Args:
        descriptor: Existing file path or "kind:n=..,param=..,seed=.."
        fmt: Edge-list format for files

    Returns:
        The graph
    """
    if os.path.exists(descriptor):
        return load_edge_list(descriptor, fmt=fmt)

    if ':' not in descriptor:
        raise ValueError(f"Dataset '{descriptor}' is neither an existing file nor a generator descriptor")

    kind, n, params, seed = parse_generator_descriptor(descriptor)
    return synth_graph(kind, n, params, seed)


def stage_seeds(seed: int, level_index: int, trial: int) -> Dict[str, int]:
    """
    Independent seeds for the permutation, noise and minibatch stages.

    Derived from the master seed, the noise level's position and the trial
    number, so every run is reproducible on its own.
    """
    children = np.random.SeedSequence([seed, level_index, trial]).spawn(3)
    names = ('permutation', 'noise', 'minibatch')
    return {name: int(child.generate_state(1)[0]) for name, child in zip(names, children)}


def _run_single(
    graph: SparseGraph,
    config: Config,
    p: float,
    level_index: int,
    trial: int,
    seed: int,
    diagnostics: bool
) -> Tuple[Dict, Dict, Dict]:
    """
    One (noise level, trial) run.

    Returns:
        (record, tables, timings) where record is the JSON run summary,
        tables maps table names to DataFrames and timings holds stage seconds
    """
    run_id = ResultStore.run_id(p, trial)
    seeds = stage_seeds(seed, level_index, trial)
    record = {'run_id': run_id, 'p': p, 'trial': trial, 'seeds': seeds, 'n_nodes': graph.n}
    tables: Dict = {}
    timings: Dict = {}

    try:
        start = time.perf_counter()
        truth = GroundTruthPermutation.random(graph.n, seed=seeds['permutation'])
        noisy = drop_edges(permute_graph(graph, truth), p, seed=seeds['noise'])
        timings['perturb'] = time.perf_counter() - start
        record['edges'] = [graph.num_edges, noisy.num_edges]

        result = ConeAligner(config).align(graph, noisy, seed=seeds['minibatch'])
        timings.update(result.timings)

        start = time.perf_counter()
        report = evaluate(graph, noisy, result.alignment, truth)
        timings['evaluate'] = time.perf_counter() - start

        record.update(report.to_dict())
        record['status'] = 'ok'
        record['init_objective'] = [result.init_objectives[0], result.init_objectives[-1]]

        tables['nodes'] = report.per_node
        tables['alignment'] = result.alignment.to_frame()
        tables['permutation'] = truth.to_frame()
        if result.alignment.top_k is not None:
            tables['topk'] = result.alignment.top_k_dict()
        if diagnostics:
            tables['trace'] = result.trace

    except Exception as e:
        logger.error(f"Run {run_id} failed: {e}")
        logger.debug(traceback.format_exc())
        record['status'] = 'failed'
        record['error'] = f"{type(e).__name__}: {e}"

    return record, tables, timings


def aggregate_runs(records: List[Dict]) -> pd.DataFrame:
    """
    Per noise level mean and standard deviation of accuracy and MNC.

    Failed runs are counted but excluded from the statistics. Standard
    deviations are population (ddof=0) values.
    """
    rows = []
    by_level: Dict[float, List[Dict]] = {}
    for record in records:
        by_level.setdefault(record['p'], []).append(record)

    for p in sorted(by_level):
        runs = by_level[p]
        ok = [r for r in runs if r.get('status') == 'ok']
        accuracy = np.array([r['accuracy'] for r in ok], dtype=np.float64)
        mnc = np.array([np.nan if r.get('mean_mnc') is None else r['mean_mnc'] for r in ok], dtype=np.float64)
        mnc = mnc[~np.isnan(mnc)]

        rows.append({
            'p': p,
            'n_runs': len(runs),
            'n_failed': len(runs) - len(ok),
            'accuracy_mean': float(accuracy.mean()) if len(accuracy) else np.nan,
            'accuracy_std': float(accuracy.std()) if len(accuracy) else np.nan,
            'mnc_mean': float(mnc.mean()) if len(mnc) else np.nan,
            'mnc_std': float(mnc.std()) if len(mnc) else np.nan
        })

    return pd.DataFrame(rows, columns=AGGREGATE_COLUMNS)


def run_experiment(spec: ExperimentSpec) -> pd.DataFrame:
    """
    Run every (noise level, trial) combination and write the results.

    Args:
        spec: Experiment description

    Returns:
        Aggregate table (one row per noise level)
    """
    store = ResultStore(spec.output_dir)
    graph = load_dataset(spec.dataset, fmt=spec.dataset_format)
    logger.info(
        f"Dataset {spec.dataset}: {graph.n} nodes, {graph.num_edges} edges; "
        f"{len(spec.noise_levels)} noise levels x {spec.trials} trials"
    )

    config = spec.to_config()
    # Fail fast on bad hyperparameters before launching runs.
    ConeAligner(config)

    jobs = [
        (float(p), level_index, trial)
        for level_index, p in enumerate(spec.noise_levels)
        for trial in range(spec.trials)
    ]

    start = time.perf_counter()
    outputs = Parallel(n_jobs=spec.parallel)(
        delayed(_run_single)(graph, config, p, level_index, trial, spec.seed, spec.diagnostics)
        for p, level_index, trial in jobs
    )
    elapsed = time.perf_counter() - start

    records = []
    for record, tables, timings in outputs:
        run_id = record['run_id']
        store.save_run(run_id, record)
        for name, table in tables.items():
            if name == 'topk':
                store.save_top_k(run_id, table)
            else:
                store.save_table(run_id, name, table)

        store.append_run_log({
            'run_id': run_id,
            'status': record['status'],
            'timings': timings,
            'host': platform.node()
        })
        records.append(record)

        if record['status'] == 'ok':
            logger.info(
                f"{run_id}: accuracy {record['accuracy']:.4f}, mean MNC "
                f"{record['mean_mnc'] if record['mean_mnc'] is not None else float('nan'):.4f}"
            )

    aggregate = aggregate_runs(records)
    store.save_aggregate(aggregate)

    n_failed = sum(1 for r in records if r['status'] != 'ok')
    logger.info(f"Experiment complete: {len(records)} runs ({n_failed} failed) in {elapsed:.1f}s")
    return aggregate

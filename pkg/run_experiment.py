#!/usr/bin/env python3
"""
Network alignment experiment runner.

This script:
1. Loads the configuration (defaults, optional JSON file, command-line flags)
2. Loads or generates the dataset graph
3. Aligns the graph to noisy permuted copies across noise levels and trials
4. Writes per-run records, the aggregate table and the run log
"""

import argparse
import os
import platform
import sys
from datetime import datetime
from typing import List, Optional

from cone_align.experiment import ExperimentSpec, run_experiment
from cone_align.utils.config import Config
from cone_align.utils.logger import setup_logger


# (flag, config key, type)
OVERRIDES = [
    ('dataset', 'dataset.path', str),
    ('synthetic', 'dataset.generator', str),
    ('format', 'dataset.format', str),
    ('trials', 'experiment.trials', int),
    ('seed', 'experiment.seed', int),
    ('output_dir', 'experiment.output_dir', str),
    ('parallel', 'experiment.parallel', int),
    ('log_level', 'experiment.log_level', str),
    ('dimensions', 'embedding.dimensions', int),
    ('window', 'embedding.window', int),
    ('negative', 'embedding.negative', float),
    ('eigenpairs', 'embedding.eigenpairs', int),
    ('embed_mode', 'embedding.mode', str),
    ('normalization', 'embedding.normalization', str),
    ('window_scaling', 'embedding.window_scaling', str),
    ('cache_dir', 'embedding.cache_dir', str),
    ('init_iterations', 'alignment.init_iterations', int),
    ('init_reg', 'alignment.init_reg', float),
    ('iterations', 'alignment.iterations', int),
    ('batch_size', 'alignment.batch_size', int),
    ('learning_rate', 'alignment.learning_rate', float),
    ('reg', 'alignment.reg', float),
    ('sinkhorn_max_iter', 'alignment.sinkhorn_max_iter', int),
    ('sinkhorn_tol', 'alignment.sinkhorn_tol', float),
    ('matcher', 'matching.type', str),
    ('candidates', 'matching.candidates', int),
    ('match_reg', 'matching.reg', float),
]


def _parse_noise(value: str) -> List[float]:
    """Parse a comma-separated list of noise levels."""
    try:
        levels = [float(v) for v in value.split(',') if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid noise list '{value}'")
    if not levels:
        raise argparse.ArgumentTypeError("noise list is empty")
    return levels


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description="Align a graph to noisy permuted copies of itself and report accuracy and MNC."
    )
    parser.add_argument('--config', help="JSON configuration file (flags override its values)")

    data = parser.add_argument_group('dataset')
    data.add_argument('--dataset', help="Edge-list file")
    data.add_argument('--synthetic', help="Generator descriptor, e.g. random_regular:n=100,degree=6,seed=1")
    data.add_argument('--format', choices=['auto', 'whitespace', 'comma'], help="Edge-list format")

    experiment = parser.add_argument_group('experiment')
    experiment.add_argument('--noise', type=_parse_noise, help="Comma-separated edge removal probabilities")
    experiment.add_argument('--trials', type=int, help="Trials per noise level")
    experiment.add_argument('--seed', type=int, help="Master seed")
    experiment.add_argument('--output-dir', dest='output_dir', help="Result directory")
    experiment.add_argument('--parallel', type=int, help="Runs executed concurrently")
    experiment.add_argument('--diagnostics', action='store_true', default=None,
                            help="Record per-iteration objectives and traces")
    experiment.add_argument('--log-level', dest='log_level', help="DEBUG, INFO, WARNING or ERROR")

    embedding = parser.add_argument_group('embedding')
    embedding.add_argument('--dimensions', type=int, help="Embedding dimension d")
    embedding.add_argument('--window', type=int, help="NetMF window size")
    embedding.add_argument('--negative', type=float, help="Negative sampling parameter")
    embedding.add_argument('--eigenpairs', type=int, help="Eigenpairs of the approximate NetMF matrix")
    embedding.add_argument('--embed-mode', dest='embed_mode', choices=['approx', 'exact'])
    embedding.add_argument('--normalization', choices=['spectral', 'frobenius'])
    embedding.add_argument(
        '--window-scaling', dest='window_scaling', choices=['single', 'double'],
        help="Average the NetMF window sum once (single) or twice (double)"
    )
    embedding.add_argument('--cache-dir', dest='cache_dir', help="Embedding cache directory")

    alignment = parser.add_argument_group('alignment')
    alignment.add_argument('--init-iterations', dest='init_iterations', type=int, help="Frank-Wolfe steps")
    alignment.add_argument('--init-reg', dest='init_reg', type=float, help="Sinkhorn reg of the convex init")
    alignment.add_argument('--iterations', type=int, help="Stochastic Wasserstein-Procrustes steps")
    alignment.add_argument('--batch-size', dest='batch_size', type=int, help="Minibatch size")
    alignment.add_argument('--learning-rate', dest='learning_rate', type=float, help="Gradient step size")
    alignment.add_argument('--reg', type=float, help="Sinkhorn reg of the minibatch plans")
    alignment.add_argument('--sinkhorn-max-iter', dest='sinkhorn_max_iter', type=int)
    alignment.add_argument('--sinkhorn-tol', dest='sinkhorn_tol', type=float)
    alignment.add_argument('--hard-rounding', dest='hard_rounding', action='store_true', default=None,
                           help="Round minibatch plans to greedy matchings")

    matching = parser.add_argument_group('matching')
    matching.add_argument('--matcher', choices=['kdtree', 'sinkhorn'], help="Greedy or one-to-one matching")
    matching.add_argument('--candidates', type=int, help="Ranked candidates kept per node")
    matching.add_argument('--match-reg', dest='match_reg', type=float, help="Sinkhorn reg of one-to-one matching")

    return parser


def build_config(args: argparse.Namespace) -> Config:
    """Defaults, then the config file, then command-line flags."""
    config = Config(args.config) if args.config else Config()

    for attr, key, cast in OVERRIDES:
        value = getattr(args, attr, None)
        if value is not None:
            config.set(key, cast(value))

    if args.synthetic and not args.dataset:
        config.set('dataset.path', None)
    if args.noise is not None:
        config.set('experiment.noise_levels', args.noise)
    if args.diagnostics:
        config.set('alignment.diagnostics', True)
    if args.hard_rounding:
        config.set('alignment.hard_rounding', True)

    return config


def main(argv: Optional[List[str]] = None) -> int:
    """Main experiment execution."""
    args = build_parser().parse_args(argv)

    try:
        config = build_config(args)
    except ValueError as e:
        print(f"Configuration error: {e}", file=sys.stderr)
        return 2

    if not config.validate():
        print("Invalid configuration: need a dataset and noise levels in [0, 1]", file=sys.stderr)
        return 2

    output_dir = config.get('experiment.output_dir', 'results')
    os.makedirs(output_dir, exist_ok=True)
    logger = setup_logger(
        level=config.get('experiment.log_level', 'INFO'),
        log_file=os.path.join(output_dir, 'run.log')
    )

    logger.info("=" * 60)
    logger.info("Network Alignment Experiment")
    logger.info(f"Execution Time: {datetime.now().isoformat()} on {platform.node()}")
    logger.info("=" * 60)

    config.save_to_file(os.path.join(output_dir, 'config.json'))

    try:
        spec = ExperimentSpec.from_config(config)
        aggregate = run_experiment(spec)
    except Exception as e:
        logger.error(f"Experiment failed: {e}")
        return 1

    logger.info("Aggregate results:")
    for line in aggregate.to_string(index=False).splitlines():
        logger.info(f"  {line}")

    return 1 if (aggregate['n_failed'] == aggregate['n_runs']).all() else 0


if __name__ == "__main__":
    sys.exit(main())

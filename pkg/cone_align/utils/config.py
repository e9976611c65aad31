"""
Configuration management for the alignment pipeline.

This module handles loading and validating configuration from files and
command-line overrides.
"""

import copy
import json
import os
from typing import Any, Dict, Optional


# Default configuration: NetMF with 256 eigenpairs, d=128, w=10, one negative
# sample; n0=10 Frank-Wolfe steps at reg 1.0; T=50 minibatch steps of size 10
# at learning rate 1.0 and reg 0.05.
DEFAULTS: Dict[str, Any] = {
    'dataset': {
        'path': None,
        'format': 'auto',
        'generator': None
    },
    'embedding': {
        'type': 'netmf',
        'dimensions': 128,
        'window': 10,
        'negative': 1,
        'eigenpairs': 256,
        'mode': 'approx',
        'normalization': 'spectral',
        'window_scaling': 'single',
        'cache_dir': None
    },
    'alignment': {
        'type': 'wasserstein_procrustes',
        'init_iterations': 10,
        'init_reg': 1.0,
        'iterations': 50,
        'batch_size': 10,
        'learning_rate': 1.0,
        'reg': 0.05,
        'seed': 0,
        'sinkhorn_max_iter': 500,
        'sinkhorn_tol': 1e-6,
        'hard_rounding': False,
        'diagnostics': False
    },
    'matching': {
        'type': 'kdtree',
        'candidates': 1,
        'reg': 0.05
    },
    'experiment': {
        'noise_levels': [0.05, 0.10, 0.15, 0.20, 0.25],
        'trials': 5,
        'seed': 0,
        'output_dir': 'results',
        'parallel': 1,
        'log_level': 'INFO'
    }
}


def _deep_merge(base: Dict, override: Dict) -> Dict:
    """Recursively merge ``override`` into a copy of ``base``."""
    merged = copy.deepcopy(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _deep_merge(merged[key], value)
        else:
            merged[key] = copy.deepcopy(value)
    return merged


class Config:
    """
    Configuration manager for the alignment pipeline.

    Starts from the built-in defaults; a JSON file is merged over them so
    partial files only need the keys they change.
    """

    def __init__(self, config_file: Optional[str] = None):
        """
        Initialize configuration.

        Args:
            config_file: Path to JSON configuration file
        """
        self.load_defaults()

        if config_file:
            if not os.path.exists(config_file):
                raise ValueError(f"Configuration file not found: {config_file}")
            self.load_from_file(config_file)

    def load_from_file(self, filepath: str) -> None:
        """
        Load configuration from JSON file, merged over the current values.

        Args:
            filepath: Path to configuration file
        """
        with open(filepath, 'r') as f:
            try:
                loaded = json.load(f)
            except json.JSONDecodeError as e:
                raise ValueError(f"Invalid configuration file {filepath}: {e}") from e

        if not isinstance(loaded, dict):
            raise ValueError(f"Configuration file {filepath} must contain a JSON object")

        self.config = _deep_merge(self.config, loaded)

    def load_defaults(self) -> None:
        """Load default configuration."""
        self.config = copy.deepcopy(DEFAULTS)

    def get(self, key: str, default: Any = None) -> Any:
        """
        Get configuration value.

        Args:
            key: Configuration key (supports dot notation, e.g., 'alignment.reg')
            default: Default value if key not found

        Returns:
            Configuration value
        """
        keys = key.split('.')
        value = self.config

        for k in keys:
            if isinstance(value, dict) and k in value:
                value = value[k]
            else:
                return default

        return value

    def set(self, key: str, value: Any) -> None:
        """
        Set configuration value.

        Args:
            key: Configuration key (supports dot notation)
            value: Value to set
        """
        keys = key.split('.')
        config = self.config

        for k in keys[:-1]:
            if k not in config or not isinstance(config[k], dict):
                config[k] = {}
            config = config[k]

        config[keys[-1]] = value

    def save_to_file(self, filepath: str) -> None:
        """
        Save configuration to JSON file.

        Args:
            filepath: Path to save configuration
        """
        with open(filepath, 'w') as f:
            json.dump(self.config, f, indent=2, sort_keys=True)

    def validate(self) -> bool:
        """
        Validate configuration.

        Returns:
            True if valid, False otherwise
        """
        required_keys = [
            'embedding.type',
            'alignment.type',
            'matching.type',
            'experiment.trials'
        ]

        for key in required_keys:
            if self.get(key) is None:
                return False

        if self.get('dataset.path') is None and self.get('dataset.generator') is None:
            return False

        levels = self.get('experiment.noise_levels') or []
        if not levels or any(not 0.0 <= float(p) <= 1.0 for p in levels):
            return False

        return int(self.get('experiment.trials')) >= 1

    def get_dataset_config(self) -> Dict:
        """Get dataset configuration."""
        return self.get('dataset', {})

    def get_embedding_config(self) -> Dict:
        """Get embedding configuration."""
        return self.get('embedding', {})

    def get_alignment_config(self) -> Dict:
        """Get subspace alignment configuration."""
        return self.get('alignment', {})

    def get_matching_config(self) -> Dict:
        """Get node matching configuration."""
        return self.get('matching', {})

    def get_experiment_config(self) -> Dict:
        """Get experiment configuration."""
        return self.get('experiment', {})

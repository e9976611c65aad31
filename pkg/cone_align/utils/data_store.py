"""
Result persistence for alignment experiments.

Result files hold no timestamps, so repeating an identical experiment
reproduces them byte for byte. Timestamps and stage timings go to the run
log only.
"""

import json
import os
from datetime import datetime
from typing import Dict, List, Optional

import pandas as pd


class ResultStore:
    """
    Handles the on-disk layout of an experiment's output directory.

    Layout:
        runs/<run_id>.json              per-run record
        runs/<run_id>_nodes.csv         per-node evaluation records
        runs/<run_id>_alignment.csv     source_index, target_index, distance
        runs/<run_id>_topk.json         ranked candidates (when kept)
        runs/<run_id>_permutation.csv   ground-truth permutation
        runs/<run_id>_trace.csv         stochastic-phase trace (diagnostics)
        aggregate.csv                   per noise level summary
        run_log.jsonl                   timings and timestamps
    """

    def __init__(self, output_dir: str = "results"):
        """
        Initialize result store.

        Args:
            output_dir: Directory to store result files
        """
        self.output_dir = output_dir
        self.runs_dir = os.path.join(output_dir, "runs")
        self.aggregate_file = os.path.join(output_dir, "aggregate.csv")
        self.run_log_file = os.path.join(output_dir, "run_log.jsonl")

        os.makedirs(self.runs_dir, exist_ok=True)

    @staticmethod
    def run_id(p: float, trial: int) -> str:
        """Stable run identifier for a (noise level, trial) pair."""
        return f"p{p:.4f}_t{trial:02d}"

    def _run_path(self, run_id: str, suffix: str) -> str:
        return os.path.join(self.runs_dir, f"{run_id}{suffix}")

    def save_run(self, run_id: str, record: Dict) -> str:
        """
        Save the per-run JSON record.

        Args:
            run_id: Run identifier
            record: JSON-serializable run summary

        Returns:
            Path of the written file
        """
        path = self._run_path(run_id, ".json")
        with open(path, 'w') as f:
            json.dump(record, f, indent=2, sort_keys=True)
            f.write("\n")
        return path

    def save_table(self, run_id: str, name: str, frame: pd.DataFrame) -> str:
        """Save a per-run table as runs/<run_id>_<name>.csv."""
        path = self._run_path(run_id, f"_{name}.csv")
        frame.to_csv(path, index=False)
        return path

    def save_top_k(self, run_id: str, top_k: Dict[str, List[int]]) -> str:
        path = self._run_path(run_id, "_topk.json")
        with open(path, 'w') as f:
            json.dump(top_k, f, sort_keys=True)
            f.write("\n")
        return path

    def load_run(self, run_id: str) -> Optional[Dict]:
        """
        Load a per-run record.

        Returns:
            The record, or None if the run has not been saved
        """
        path = self._run_path(run_id, ".json")
        if not os.path.exists(path):
            return None
        with open(path, 'r') as f:
            return json.load(f)

    def load_runs(self) -> List[Dict]:
        """All per-run records, ordered by run identifier."""
        records = []
        for name in sorted(os.listdir(self.runs_dir)):
            if name.endswith(".json") and not name.endswith("_topk.json"):
                with open(os.path.join(self.runs_dir, name), 'r') as f:
                    records.append(json.load(f))
        return records

    def load_table(self, run_id: str, name: str) -> Optional[pd.DataFrame]:
        path = self._run_path(run_id, f"_{name}.csv")
        if not os.path.exists(path):
            return None
        return pd.read_csv(path)

    def save_aggregate(self, frame: pd.DataFrame) -> str:
        frame.to_csv(self.aggregate_file, index=False)
        return self.aggregate_file

    def load_aggregate(self) -> Optional[pd.DataFrame]:
        if not os.path.exists(self.aggregate_file):
            return None
        return pd.read_csv(self.aggregate_file)

    def append_run_log(self, entry: Dict) -> None:
        """
        Append an entry to the run log.

        Args:
            entry: Dictionary with run timings and status
        """
        entry = dict(entry)
        entry['timestamp'] = datetime.now().isoformat()

        with open(self.run_log_file, 'a') as f:
            f.write(json.dumps(entry, sort_keys=True) + "\n")

    def get_run_log(self, limit: Optional[int] = None) -> List[Dict]:
        """
        Get run log entries.

        Args:
            limit: Maximum number of entries to return (most recent last)

        Returns:
            List of run log entries
        """
        if not os.path.exists(self.run_log_file):
            return []

        with open(self.run_log_file, 'r') as f:
            entries = [json.loads(line) for line in f if line.strip()]

        if limit:
            return entries[-limit:]
        return entries

#!/usr/bin/env python3
"""
Text report generator for an experiment's result directory.

This script:
1. Loads the aggregate table and per-run records
2. Summarizes accuracy and MNC per noise level
3. Pools the degree-stratified MNC of correctly and incorrectly aligned nodes
4. Prints the report and saves it as report.txt in the result directory
"""

import argparse
import logging
import os
import sys
from typing import Dict, List, Optional

import pandas as pd

from cone_align.evaluation.metrics import BUCKETS
from cone_align.utils.data_store import ResultStore

logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger(__name__)


def _fmt(value: Optional[float], width: int = 8) -> str:
    if value is None or pd.isna(value):
        return f"{'n/a':>{width}}"
    return f"{value:>{width}.4f}"


class ExperimentReporter:
    """Render the results of one experiment as text."""

    def __init__(self, output_dir: str = "results"):
        """
        Args:
            output_dir: Result directory written by run_experiment.py
        """
        if not os.path.isdir(output_dir):
            raise ValueError(f"Result directory not found: {output_dir}")
        self.store = ResultStore(output_dir)

    def pooled_degree_groups(self, records: List[Dict]) -> pd.DataFrame:
        """
        Count-weighted MNC means per noise level, degree bucket and correctness.

        Returns:
            Table with columns p, bucket, outcome, count, mean_mnc
        """
        rows = []
        for record in records:
            if record.get('status') != 'ok':
                continue
            for bucket in BUCKETS:
                group = record.get('degree_groups', {}).get(bucket, {})
                for outcome in ('correct', 'incorrect'):
                    stats = group.get(outcome, {})
                    if stats.get('count'):
                        rows.append({
                            'p': record['p'],
                            'bucket': bucket,
                            'outcome': outcome,
                            'count': stats['count'],
                            'weighted': stats['count'] * stats['mean']
                        })

        if not rows:
            return pd.DataFrame(columns=['p', 'bucket', 'outcome', 'count', 'mean_mnc'])

        frame = pd.DataFrame(rows).groupby(['p', 'bucket', 'outcome'], as_index=False)[['count', 'weighted']].sum()
        frame['mean_mnc'] = frame['weighted'] / frame['count']
        return frame.drop(columns='weighted')

    def generate_report(self) -> str:
        """
        Generate the formatted report.

        Returns:
            Report text
        """
        aggregate = self.store.load_aggregate()
        if aggregate is None:
            return "No aggregate results found. Run run_experiment.py first."

        records = self.store.load_runs()
        pooled = self.pooled_degree_groups(records)

        lines = []
        lines.append("=" * 70)
        lines.append("NETWORK ALIGNMENT EXPERIMENT REPORT")
        lines.append("=" * 70)
        lines.append(f"Result directory: {self.store.output_dir}")
        lines.append("")

        lines.append("ACCURACY AND MNC BY NOISE LEVEL")
        lines.append("-" * 70)
        lines.append(f"{'p':>6} {'runs':>5} {'failed':>6} {'acc mean':>9} {'acc std':>8} {'mnc mean':>9} {'mnc std':>8}")
        for row in aggregate.itertuples(index=False):
            lines.append(
                f"{row.p:>6.2f} {row.n_runs:>5} {row.n_failed:>6} {_fmt(row.accuracy_mean, 9)} "
                f"{_fmt(row.accuracy_std)} {_fmt(row.mnc_mean, 9)} {_fmt(row.mnc_std)}"
            )
        lines.append("")

        lines.append("MNC BY DEGREE GROUP (correct / incorrect)")
        lines.append("-" * 70)
        if pooled.empty:
            lines.append("No successful runs")
        else:
            lines.append(f"{'p':>6} {'group':>6} {'n ok':>6} {'mnc ok':>8} {'n bad':>6} {'mnc bad':>8}")
            for p in sorted(pooled['p'].unique()):
                for bucket in BUCKETS:
                    cells = []
                    for outcome in ('correct', 'incorrect'):
                        match = pooled[(pooled['p'] == p) & (pooled['bucket'] == bucket) & (pooled['outcome'] == outcome)]
                        if match.empty:
                            cells.append((0, None))
                        else:
                            cells.append((int(match['count'].iloc[0]), float(match['mean_mnc'].iloc[0])))
                    lines.append(
                        f"{p:>6.2f} {bucket:>6} {cells[0][0]:>6} {_fmt(cells[0][1])} {cells[1][0]:>6} {_fmt(cells[1][1])}"
                    )
        lines.append("")

        failed = [r for r in records if r.get('status') != 'ok']
        if failed:
            lines.append("FAILED RUNS")
            lines.append("-" * 70)
            for record in failed:
                lines.append(f"{record['run_id']}: {record.get('error', 'unknown error')}")
            lines.append("")

        lines.append("=" * 70)
        return "\n".join(lines)

    def save_report(self, report: str) -> str:
        """
        Save report to report.txt in the result directory.

        Returns:
            Path to saved report file
        """
        report_file = os.path.join(self.store.output_dir, "report.txt")
        with open(report_file, 'w') as f:
            f.write(report + "\n")

        logger.info(f"Report saved to {report_file}")
        return report_file


def main(argv: Optional[List[str]] = None) -> int:
    """Main execution function."""
    parser = argparse.ArgumentParser(description="Summarize an alignment experiment's results.")
    parser.add_argument('output_dir', nargs='?', default='results', help="Result directory")
    args = parser.parse_args(argv)

    try:
        reporter = ExperimentReporter(args.output_dir)
        report = reporter.generate_report()
        print("\n" + report + "\n")
        reporter.save_report(report)
        return 0

    except Exception as e:
        logger.error(f"Error generating report: {e}", exc_info=True)
        return 1


if __name__ == "__main__":
    sys.exit(main())

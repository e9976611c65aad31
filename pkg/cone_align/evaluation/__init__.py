"""Alignment quality metrics."""

from .metrics import BUCKETS, EvalReport, degree_stratified_mnc, evaluate, mnc

__all__ = ["BUCKETS", "EvalReport", "degree_stratified_mnc", "evaluate", "mnc"]

"""Experiment harness: configuration, session runner, statistics, batches."""

from __future__ import annotations

from .config import ExperimentConfig
from .runner import BatchResult, run_batch, sweep
from .session import SessionResult, run_session
from .stats import (
    BatchSummary,
    SessionStats,
    convergence_point,
    interaction_load,
    percentile,
    session_stats,
    summarize,
)

__all__ = [
    "BatchResult",
    "BatchSummary",
    "ExperimentConfig",
    "SessionResult",
    "SessionStats",
    "convergence_point",
    "interaction_load",
    "percentile",
    "run_batch",
    "run_session",
    "session_stats",
    "summarize",
    "sweep",
]

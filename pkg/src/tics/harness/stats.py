"""Convergence detection, percentile reporting and interaction-load accounting."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .session import FB_FLAG, INSTR_FLAG, SessionResult

CRITERIA = {"sorting-4": 4, "sorting-5": 5, "maze-24": 24}


def convergence_point(result: SessionResult, criterion: str) -> int | None:
    """Earliest retrospective convergence: the step count accumulated before
    the first episode from which every remaining episode meets the criterion
    (within the step limit and successful).

    Returns None when the final episode itself fails (the session never
    converged).
    """
    limit = CRITERIA[criterion]
    spe = result.steps_per_episode
    ok = result.episode_success
    if not spe or spe[-1] > limit or not ok[-1]:
        return None
    e = len(spe) - 1
    while e > 0 and spe[e - 1] <= limit and ok[e - 1]:
        e -= 1
    return sum(spe[:e])


def percentile(samples, q: float = 0.99) -> float:
    """Nearest-rank percentile: the value at 1-based index ceil(q * n)."""
    if len(samples) == 0:
        raise ValueError("percentile of an empty sample set")
    ordered = sorted(samples)
    rank = max(1, math.ceil(q * len(ordered)))
    return ordered[rank - 1]


def interaction_load(result: SessionResult, converged_at: int | None) -> tuple[int, int, int]:
    """(feedback count, instruction count, total): feedback up to convergence
    (whole session when non-converged), instructions over the whole session."""
    if result.total_steps == 0:
        return 0, 0, 0
    arr = np.frombuffer(bytes(result.step_flags), dtype=np.uint8)
    end = len(arr) if converged_at is None else converged_at
    fb = int((arr[:end] & FB_FLAG).sum())
    instr = int((arr & INSTR_FLAG).sum() // INSTR_FLAG)
    return fb, instr, fb + instr


@dataclass(frozen=True)
class SessionStats:
    """One CSV row of sessions.csv."""

    session: int
    converged: bool
    steps_to_convergence: int | None
    feedback_count: int
    instruction_count: int
    total_signals: int
    total_steps: int


def session_stats(index: int, result: SessionResult, criterion: str) -> SessionStats:
    converged_at = convergence_point(result, criterion)
    fb, instr, total = interaction_load(result, converged_at)
    return SessionStats(
        session=index,
        converged=converged_at is not None,
        steps_to_convergence=converged_at,
        feedback_count=fb,
        instruction_count=instr,
        total_signals=total,
        total_steps=result.total_steps,
    )


@dataclass(frozen=True)
class BatchSummary:
    """Aggregate over one batch; the percentile covers converged sessions only."""

    sessions: int
    criterion: str
    p99_steps_to_convergence: float | None
    non_converged_count: int
    max_total_teaching_signals: int
    median_steps_to_convergence: float | None

    def to_dict(self) -> dict:
        return {
            "sessions": self.sessions,
            "criterion": self.criterion,
            "p99_steps_to_convergence": self.p99_steps_to_convergence,
            "non_converged_count": self.non_converged_count,
            "max_total_teaching_signals": self.max_total_teaching_signals,
            "median_steps_to_convergence": self.median_steps_to_convergence,
        }


def summarize(rows: list[SessionStats], criterion: str) -> BatchSummary:
    converged = [r.steps_to_convergence for r in rows if r.converged]
    return BatchSummary(
        sessions=len(rows),
        criterion=criterion,
        p99_steps_to_convergence=percentile(converged, 0.99) if converged else None,
        non_converged_count=len(rows) - len(converged),
        max_total_teaching_signals=max((r.total_signals for r in rows), default=0),
        median_steps_to_convergence=percentile(converged, 0.5) if converged else None,
    )

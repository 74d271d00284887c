"""Seeded multi-session batches, sweeps, and their CSV/JSON outputs."""

from __future__ import annotations

import csv
import json
import multiprocessing as mp
import os
from dataclasses import dataclass, replace
from pathlib import Path

from .config import ExperimentConfig
from .session import run_session
from .stats import BatchSummary, SessionStats, session_stats, summarize

SWEEP_AXES = ("p_instruction", "p_feedback", "e_instruction", "e_feedback")


@dataclass(frozen=True)
class BatchResult:
    config: ExperimentConfig
    summary: BatchSummary
    rows: list[SessionStats]


def _one_session(args: tuple[ExperimentConfig, int, int]) -> SessionStats:
    config, index, seed = args
    result = run_session(config, seed)
    return session_stats(index, result, config.criterion)


def default_workers() -> int:
    return max(1, os.cpu_count() or 1)


def run_batch(
    config: ExperimentConfig,
    out_dir: str | Path | None = None,
    workers: int | None = None,
) -> BatchResult:
    """Run ``config.sessions`` independent sessions (session k seeded with
    base_seed + k), aggregate, and optionally write sessions.csv/summary.json."""
    if workers is None:
        workers = default_workers()
    tasks = [(config, k, config.base_seed + k) for k in range(config.sessions)]
    if workers > 1 and config.sessions > 1:
        ctx = mp.get_context("fork")
        chunk = max(1, config.sessions // (workers * 8))
        with ctx.Pool(workers) as pool:
            rows = pool.map(_one_session, tasks, chunksize=chunk)
    else:
        rows = [_one_session(t) for t in tasks]
    rows.sort(key=lambda r: r.session)
    summary = summarize(rows, config.criterion)
    result = BatchResult(config=config, summary=summary, rows=rows)
    if out_dir is not None:
        write_batch(result, out_dir)
    return result


def write_batch(result: BatchResult, out_dir: str | Path) -> None:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    with open(out / "sessions.csv", "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(
            ["session", "converged", "steps_to_convergence", "feedback_count",
             "instruction_count", "total_signals"]
        )
        for r in result.rows:
            writer.writerow(
                [r.session,
                 "true" if r.converged else "false",
                 "" if r.steps_to_convergence is None else r.steps_to_convergence,
                 r.feedback_count,
                 r.instruction_count,
                 r.total_signals]
            )
    with open(out / "summary.json", "w", encoding="utf-8") as fh:
        payload = result.summary.to_dict()
        payload["config"] = result.config.to_dict()
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def sweep(
    config: ExperimentConfig,
    axis: str,
    values: list[float],
    out_dir: str | Path | None = None,
    workers: int | None = None,
) -> dict[str, BatchResult]:
    """One batch per axis value under a shared base seed, plus an
    instruction-free baseline batch for comparison."""
    if axis not in SWEEP_AXES:
        raise ValueError(f"axis must be one of {SWEEP_AXES}")
    if any(not 0.0 <= v <= 1.0 for v in values):
        raise ValueError("sweep values must lie in [0, 1]")

    results: dict[str, BatchResult] = {}
    for v in values:
        cfg = config.replace(teacher=replace(config.teacher, **{axis: v}))
        results[format_value(v)] = run_batch(cfg, workers=workers)
    baseline_cfg = config.replace(
        model=replace_model(config.model, interpretation="none")
    )
    results["baseline"] = run_batch(baseline_cfg, workers=workers)

    if out_dir is not None:
        write_sweep(results, axis, out_dir)
    return results


def replace_model(model, **kwargs):
    from ..agent import ModelSpec

    data = {"sources": model.sources, "interpretation": model.interpretation}
    data.update(kwargs)
    return ModelSpec(**data)


def format_value(v: float) -> str:
    return f"{v:g}"


def write_sweep(results: dict[str, BatchResult], axis: str, out_dir: str | Path) -> None:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    with open(out / "sweep.csv", "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(
            [axis, "p99_steps_to_convergence", "non_converged_count",
             "max_total_teaching_signals", "sessions"]
        )
        for key, res in results.items():
            s = res.summary
            writer.writerow(
                [key,
                 "" if s.p99_steps_to_convergence is None else s.p99_steps_to_convergence,
                 s.non_converged_count,
                 s.max_total_teaching_signals,
                 s.sessions]
            )
    payload = {
        "axis": axis,
        "results": {k: r.summary.to_dict() for k, r in results.items()},
    }
    with open(out / "sweep.json", "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")
    for key, res in results.items():
        write_batch(res, out / f"{axis}={key}")

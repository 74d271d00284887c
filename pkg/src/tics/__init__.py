"""Interactive tabular RL shaped by rewards, evaluative feedback and
online-interpreted instruction signals, with benchmark domains, a simulated
teacher, an experiment harness and a live teaching service."""

from __future__ import annotations

__version__ = "0.1.0"

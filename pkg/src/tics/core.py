"""Tabular learning primitives shared by the task learner and the signal learner.

Everything here operates on plain Python lists so the per-step cost stays low;
the tables are tiny (at most a few hundred rows by eight actions).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from random import Random
from typing import Sequence

POSITIVE_FEEDBACK = 1
NEGATIVE_FEEDBACK = -1


@dataclass
class LearnerConfig:
    """Learning-rate and exploration settings for one training session."""

    gamma: float = 0.9
    alpha: float = 0.1
    beta: float = 0.1
    epsilon0: float = 0.1
    epsilon_decay: float = 0.001
    epsilon_reset_per_episode: bool = False

    def __post_init__(self) -> None:
        if not 0.0 <= self.gamma <= 1.0:
            raise ValueError(f"gamma must be in [0, 1], got {self.gamma}")
        if self.alpha <= 0.0 or self.beta <= 0.0:
            raise ValueError("learning rates must be positive")
        if not 0.0 <= self.epsilon0 <= 1.0:
            raise ValueError(f"epsilon0 must be in [0, 1], got {self.epsilon0}")
        if self.epsilon_decay < 0.0:
            raise ValueError("epsilon_decay must be >= 0")

    @classmethod
    def q_variant(cls) -> "LearnerConfig":
        """Myopic preset used with the Q-table learner (no bootstrapping, no exploration)."""
        return cls(gamma=0.0, alpha=0.3, beta=0.1, epsilon0=0.0, epsilon_decay=0.0)


class PreferenceTable:
    """Actor parameters p(x, a): one row per state (or signal), one column per action."""

    __slots__ = ("p", "n_actions")

    def __init__(self, n_rows: int, n_actions: int):
        self.p = [[0.0] * n_actions for _ in range(n_rows)]
        self.n_actions = n_actions

    def __len__(self) -> int:
        return len(self.p)


class ValueTable:
    """Critic values V(x), zero-initialised at session start."""

    __slots__ = ("v",)

    def __init__(self, n_rows: int):
        self.v = [0.0] * n_rows

    def __len__(self) -> int:
        return len(self.v)


class QTable:
    """Action values Q(x, a), zero-initialised at session start."""

    __slots__ = ("q", "n_actions")

    def __init__(self, n_rows: int, n_actions: int):
        self.q = [[0.0] * n_actions for _ in range(n_rows)]
        self.n_actions = n_actions

    def __len__(self) -> int:
        return len(self.q)


def softmax_row(row: Sequence[float]) -> list[float]:
    """Softmax of one table row, computed with max-subtraction so large
    preferences never overflow."""
    m = max(row)
    exps = [math.exp(x - m) for x in row]
    total = sum(exps)
    return [e / total for e in exps]


def softmax_dist(prefs: PreferenceTable, x: int) -> list[float]:
    """Action distribution pi(x, .) derived from the preference row x."""
    return softmax_row(prefs.p[x])


def td_error(r: float, v_next: float, v_cur: float, gamma: float, terminal: bool) -> float:
    """One-step temporal-difference error; the bootstrap term is dropped on
    terminal transitions."""
    if terminal:
        return r - v_cur
    return r + gamma * v_next - v_cur


def critic_update(values: ValueTable, s: int, delta: float, alpha: float) -> None:
    values.v[s] += alpha * delta


def actor_update(prefs: PreferenceTable, s: int, a: int, delta: float, beta: float) -> float:
    """Move the preference for (s, a) along the TD error.

    Returns the applied increment so interpretation can mirror it exactly.
    """
    inc = beta * delta
    prefs.p[s][a] += inc
    return inc


def feedback_update(prefs: PreferenceTable, s: int, a: int, f: int, beta: float) -> float:
    """Apply binary evaluative feedback directly to the preference for (s, a).

    The critic is untouched: feedback shapes the policy, not the value function.
    Returns the applied increment for mirroring.
    """
    if f not in (POSITIVE_FEEDBACK, NEGATIVE_FEEDBACK):
        raise ValueError(f"feedback must be +1 or -1, got {f}")
    inc = beta * f
    prefs.p[s][a] += inc
    return inc


def q_update(
    q: QTable,
    s: int,
    a: int,
    r: float,
    s_next: int,
    gamma: float,
    alpha: float,
    terminal: bool,
) -> None:
    """Standard one-step Q-learning backup; terminal transitions bootstrap with 0."""
    row = q.q[s]
    if terminal or gamma == 0.0:
        target = r
    else:
        target = r + gamma * max(q.q[s_next])
    row[a] += alpha * (target - row[a])


def argmax_lowest(row: Sequence[float]) -> int:
    """Index of the largest entry; ties resolve to the lowest index."""
    best = 0
    best_v = row[0]
    for i in range(1, len(row)):
        v = row[i]
        if v > best_v:
            best = i
            best_v = v
    return best


def select_action(dist: Sequence[float], epsilon: float, rng: Random) -> tuple[int, bool]:
    """Epsilon-greedy selection over an action distribution.

    With probability epsilon a uniformly random action is drawn; otherwise the
    distribution argmax is taken, ties to the lowest action id. Returns
    (action, explored). The caller owns the epsilon decay.
    """
    if epsilon > 0.0 and rng.random() < epsilon:
        return rng.randrange(len(dist)), True
    return argmax_lowest(dist), False


def confidence(dist: Sequence[float]) -> float:
    """Certainty of a policy distribution: gap between its two largest
    probabilities, in [0, 1]."""
    if len(dist) < 2:
        raise ValueError("confidence needs at least two actions")
    top = second = float("-inf")
    for v in dist:
        if v > top:
            second = top
            top = v
        elif v > second:
            second = v
    return top - second

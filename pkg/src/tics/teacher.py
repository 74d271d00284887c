"""Simulated teacher: preferred policy, feedback rule, and the transparency
protocol for instructions, with configurable sparsity masks and error rates.

The teacher prefers the canonical optimal policy of the domain and uses one
fixed signal per action. Sparsity is a per-session mask drawn once; errors are
per-event corruptions drawn from a dedicated stream so that error-free runs
consume no corruption randomness at all.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from random import Random

from .core import NEGATIVE_FEEDBACK, POSITIVE_FEEDBACK
from .domains import get_domain, optimal_policy


@lru_cache(maxsize=None)
def _cached_policy(domain_name: str, gamma: float):
    return optimal_policy(get_domain(domain_name), gamma=gamma)


@dataclass
class TeacherConfig:
    """Availability and reliability of the two teaching channels."""

    p_feedback: float = 1.0
    p_instruction: float = 1.0
    e_feedback: float = 0.0
    e_instruction: float = 0.0
    per_encounter_sparsity: bool = False

    def __post_init__(self) -> None:
        for field in ("p_feedback", "p_instruction", "e_feedback", "e_instruction"):
            v = getattr(self, field)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{field} must be in [0, 1], got {v}")


def optimal_feedback(preferred_action: int, action: int) -> int:
    """The teacher's judgement of an action: +1 iff it matches the preferred policy."""
    return POSITIVE_FEEDBACK if action == preferred_action else NEGATIVE_FEEDBACK


def sample_mask(n: int, p: float, rng: Random) -> bytes:
    """Bernoulli(p) eligibility mask; the degenerate rates skip the RNG entirely
    so ideal configurations share random streams with sparse ones."""
    if p >= 1.0:
        return b"\x01" * n
    if p <= 0.0:
        return b"\x00" * n
    return bytes(1 if rng.random() < p else 0 for _ in range(n))


class Teacher:
    """One session's teacher: fixed preferences, fixed masks, seeded errors."""

    def __init__(self, domain, config: TeacherConfig, seed: int, gamma: float = 0.9):
        self.domain = domain
        self.config = config
        name = getattr(domain, "name", None)
        try:
            shared = name is not None and get_domain(name) is domain
        except ValueError:
            shared = False
        if shared:
            policy = _cached_policy(name, gamma)
        else:
            policy = optimal_policy(domain, gamma=gamma)
        self.preferred = policy.canonical
        self.optimal_sets = policy.optimal_sets
        self.n_signals = domain.n_actions
        # One signal per action; the learner never sees this mapping.
        self.signal_of = list(range(domain.n_actions))

        mask_rng = Random(f"{seed}:teacher-masks")
        self._mask_rng = mask_rng
        self._err_rng = Random(f"{seed}:teacher-errors")
        c = config
        if c.per_encounter_sparsity:
            self.fb_mask = None
            self.instr_mask = None
        else:
            self.fb_mask = sample_mask(domain.n_states * domain.n_actions, c.p_feedback, mask_rng)
            self.instr_mask = sample_mask(domain.n_states, c.p_instruction, mask_rng)

    def _fb_eligible(self, s: int, a: int) -> bool:
        if self.fb_mask is None:
            c = self.config.p_feedback
            return c >= 1.0 or (c > 0.0 and self._mask_rng.random() < c)
        return bool(self.fb_mask[s * self.domain.n_actions + a])

    def _instr_eligible(self, s: int) -> bool:
        if self.instr_mask is None:
            c = self.config.p_instruction
            return c >= 1.0 or (c > 0.0 and self._mask_rng.random() < c)
        return bool(self.instr_mask[s])

    def feedback(self, s: int, a: int) -> int | None:
        """Binary judgement of action a in state s, or None where the mask is silent."""
        if not self._fb_eligible(s, a):
            return None
        base = optimal_feedback(self.preferred[s], a)
        e = self.config.e_feedback
        if e > 0.0 and self._err_rng.random() < e:
            return -base
        return base

    def instruction(self, s: int, displayed: int | None) -> int | None:
        """Transparency-gated instruction for state s.

        ``displayed`` is the contingency model's current signal for s. The
        teacher stays silent when the mask excludes s or the display already
        shows the signal of its preferred action; otherwise it emits that
        signal, corrupted to a uniformly random different one with probability
        e_instruction.
        """
        if not self._instr_eligible(s):
            return None
        correct = self.signal_of[self.preferred[s]]
        if displayed == correct:
            return None
        e = self.config.e_instruction
        if e > 0.0 and self._err_rng.random() < e:
            wrong = self._err_rng.randrange(self.n_signals - 1)
            return wrong if wrong < correct else wrong + 1
        return correct


def build_teacher(domain, config: TeacherConfig, seed: int, gamma: float = 0.9) -> Teacher:
    """Deterministic teacher for (domain, config, seed)."""
    return Teacher(domain, config, seed, gamma=gamma)

"""One training session: the episode loop and its compact per-step log."""

from __future__ import annotations

from dataclasses import dataclass, field
from random import Random

from ..agent import TicsAgent
from ..domains import get_domain
from ..teacher import build_teacher
from .config import ExperimentConfig

FB_FLAG = 1
INSTR_FLAG = 2

# The teacher's preferred policy is the canonical optimum of the task itself,
# independent of the learner's own (possibly myopic) discounting.
TEACHER_GAMMA = 0.9


class SessionEnv:
    """Cursor over a domain's precomputed transition tables."""

    __slots__ = ("domain", "rng", "state", "_na", "_nxt", "_rew", "_term", "_succ")

    def __init__(self, domain, rng: Random):
        self.domain = domain
        self.rng = rng
        self.state = 0
        self._na = domain.n_actions
        self._nxt = domain.next_state
        self._rew = domain.reward
        self._term = domain.step_terminal
        self._succ = domain.step_success

    def reset(self, episode: int) -> int:
        self.state = self.domain.reset_index(episode, self.rng)
        return self.state

    def step(self, a: int):
        k = self.state * self._na + a
        s2 = self._nxt[k]
        self.state = s2
        return s2, self._rew[k], self._term[k], self._succ[k]


@dataclass
class SessionResult:
    """Episode lengths plus a per-step log of which teaching signals arrived.

    ``step_flags`` holds one byte per environment step: bit 0 set when feedback
    was given for that step's action, bit 1 when an instruction was given for
    the state the step acted from. ``episode_success`` marks episodes that
    ended in the domain's success condition (goal reached, object sorted into
    the correct zone); episodes cut at the step cap or ending in a failure
    placement are False.
    """

    steps_per_episode: list[int] = field(default_factory=list)
    episode_success: list[bool] = field(default_factory=list)
    step_flags: bytearray = field(default_factory=bytearray)

    @property
    def total_steps(self) -> int:
        return len(self.step_flags)


def run_session(config: ExperimentConfig, seed: int) -> SessionResult:
    """Run one seeded session to completion and return its log."""
    domain = get_domain(config.domain)
    teacher = build_teacher(domain, config.teacher, seed, gamma=TEACHER_GAMMA)
    agent = TicsAgent(
        domain,
        config.model,
        config.learner,
        shaping=config.shaping,
        tm_variant=config.tm_variant,
        seed=seed,
    )
    env = SessionEnv(domain, Random(f"{seed}:env"))

    result = SessionResult()
    flags = result.step_flags
    spe = result.steps_per_episode
    outcome = result.episode_success
    max_steps = config.max_steps
    step = agent.step

    for episode in range(config.episodes):
        env.reset(episode)
        agent.begin_episode()
        n = 0
        success = False
        while True:
            rec = step(env, teacher)
            n += 1
            flags.append(
                (FB_FLAG if rec.feedback is not None else 0)
                | (INSTR_FLAG if rec.signal is not None else 0)
            )
            if rec.terminal:
                success = bool(rec.success)
                break
            if n >= max_steps:
                agent.end_episode()
                break
        spe.append(n)
        outcome.append(success)
    return result

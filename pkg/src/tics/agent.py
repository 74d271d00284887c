"""The interactive learning agent: task model, contingency model, instruction
model and the shaping step that combines them.

Per step the agent: takes any instruction offered for the state it is about to
act from (recording it in the contingency model), arbitrates between the task
policy and the signal policy of the state's associated signal, acts, then folds
reward and feedback into the task model and mirrors or relays the result into
the instruction model according to the interpretation mode.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from random import Random
from typing import Protocol

from .core import (
    LearnerConfig,
    PreferenceTable,
    QTable,
    ValueTable,
    argmax_lowest,
    confidence,
    feedback_update,
    softmax_row,
)

SOURCE_TM = "TM"
SOURCE_IM = "IM"
SOURCE_EXPLORE = "explore"

INTERPRETATIONS = ("none", "PU", "RU")
VARIANTS = ("ActorCritic", "QLearner")
STRATEGIES = ("ConfidenceArbitration", "QPull")


@dataclass(frozen=True)
class ModelSpec:
    """Which evaluation sources feed the task model, and how instructions are
    interpreted."""

    sources: tuple[str, ...] = ("feedback",)
    interpretation: str = "none"

    def __post_init__(self) -> None:
        srcs = tuple(sorted(set(self.sources)))
        object.__setattr__(self, "sources", srcs)
        if not srcs or any(s not in ("reward", "feedback") for s in srcs):
            raise ValueError(f"sources must be a non-empty subset of reward/feedback, got {self.sources}")
        if self.interpretation not in INTERPRETATIONS:
            raise ValueError(f"interpretation must be one of {INTERPRETATIONS}")

    @property
    def uses_reward(self) -> bool:
        return "reward" in self.sources

    @property
    def uses_feedback(self) -> bool:
        return "feedback" in self.sources


@dataclass(frozen=True)
class ShapingConfig:
    strategy: str = "ConfidenceArbitration"
    qpull_rate: float = 0.3

    def __post_init__(self) -> None:
        if self.strategy not in STRATEGIES:
            raise ValueError(f"strategy must be one of {STRATEGIES}")
        if not 0.0 < self.qpull_rate <= 1.0:
            raise ValueError("qpull_rate must be in (0, 1]")


class InputSource(Protocol):
    """Where teaching signals come from: a simulated teacher or queued human input."""

    def feedback(self, s: int, a: int) -> int | None: ...

    def instruction(self, s: int, displayed: int | None) -> int | None: ...


class NullInputs:
    """No teaching at all (pure RL baselines, or human sessions between submissions)."""

    def feedback(self, s: int, a: int) -> int | None:
        return None

    def instruction(self, s: int, displayed: int | None) -> int | None:
        return None


NULL_INPUTS = NullInputs()


class ContingencyMatrix:
    """Co-occurrence counts between task states and observed instruction signals.

    Keeps the per-state argmax (ties to the lowest signal id) incrementally so
    lookups are O(1).
    """

    __slots__ = ("counts", "row_total", "best", "n_signals")

    def __init__(self, n_states: int, n_signals: int):
        self.counts = [[0] * n_signals for _ in range(n_states)]
        self.row_total = [0] * n_states
        self.best = [-1] * n_states  # -1 while no signal has been seen for the state
        self.n_signals = n_signals

    def observe(self, s: int, i: int) -> None:
        row = self.counts[s]
        row[i] += 1
        self.row_total[s] += 1
        b = self.best[s]
        if b < 0 or row[i] > row[b] or (row[i] == row[b] and i < b):
            self.best[s] = i

    def best_signal(self, s: int) -> tuple[int, float] | None:
        b = self.best[s]
        if b < 0:
            return None
        return b, self.counts[s][b] / self.row_total[s]


def cm_observe(cm: ContingencyMatrix, s: int, i: int) -> None:
    """Record one observation of signal i in state s."""
    cm.observe(s, i)


def cm_best_signal(cm: ContingencyMatrix, s: int) -> tuple[int, float] | None:
    """Most likely signal for s with its empirical probability, or None for a
    state that has never received an instruction."""
    return cm.best_signal(s)


class TaskModel:
    """Task policy learner: actor-critic preferences or a Q-table."""

    def __init__(self, variant: str, n_states: int, n_actions: int, config: LearnerConfig):
        if variant not in VARIANTS:
            raise ValueError(f"variant must be one of {VARIANTS}")
        self.variant = variant
        self.config = config
        if variant == "ActorCritic":
            self.prefs = PreferenceTable(n_states, n_actions)
            self.values = ValueTable(n_states)
            self.q = None
        else:
            self.prefs = None
            self.values = None
            self.q = QTable(n_states, n_actions)


class InstructionModel:
    """Signal policy learner over the instruction alphabet."""

    def __init__(self, mode: str, n_signals: int, n_actions: int):
        if mode not in ("PU", "RU-actor", "RU-q"):
            raise ValueError(f"unknown instruction model mode {mode!r}")
        self.mode = mode
        self.n_signals = n_signals
        if mode == "RU-q":
            self.signal_prefs = None
            self.signal_values = None
            self.signal_q = QTable(n_signals, n_actions)
        else:
            self.signal_prefs = PreferenceTable(n_signals, n_actions)
            self.signal_values = ValueTable(n_signals) if mode == "RU-actor" else None
            self.signal_q = None
        # pending (signal, action, reward) transition awaiting its successor signal
        self.prev: tuple[int, int, float] | None = None


def im_mirror_pu(im: InstructionModel, i: int, a: int, inc: float) -> None:
    """Apply to the signal policy exactly the increment just applied to the
    task policy for the state associated with signal i."""
    if im.mode != "PU":
        raise ValueError("im_mirror_pu called on a non-PU instruction model")
    im.signal_prefs.p[i][a] += inc


def im_update_ru_actor(
    im: InstructionModel,
    i_prev: int | None,
    i_cur: int | None,
    a_prev: int,
    r: float,
    cfg: LearnerConfig,
    terminal: bool = False,
) -> None:
    """Actor-critic backup on the signal space for the transition
    (i_prev, a_prev, r, i_cur). Gaps in the signal stream produce no update."""
    if im.mode != "RU-actor":
        raise ValueError("im_update_ru_actor called on a wrong-mode instruction model")
    if i_prev is None:
        return
    v = im.signal_values.v
    if terminal:
        delta = r - v[i_prev]
    else:
        if i_cur is None:
            return
        delta = r + cfg.gamma * v[i_cur] - v[i_prev]
    v[i_prev] += cfg.alpha * delta
    im.signal_prefs.p[i_prev][a_prev] += cfg.beta * delta


def im_update_ru_q(im: InstructionModel, i: int, a: int, r: float, alpha: float) -> None:
    """Myopic Q backup on the signal space: Q(i,a) moves toward r."""
    if im.mode != "RU-q":
        raise ValueError("im_update_ru_q called on a wrong-mode instruction model")
    row = im.signal_q.q[i]
    row[a] += alpha * (r - row[a])


def arbitrate(
    task_dist: list[float], signal_dist: list[float] | None
) -> tuple[str, list[float]]:
    """Pick the more confident policy; ties (and missing signals) go to the
    task model."""
    if signal_dist is None:
        return SOURCE_TM, task_dist
    if confidence(task_dist) < confidence(signal_dist):
        return SOURCE_IM, signal_dist
    return SOURCE_TM, task_dist


def qpull_shape(q_task: QTable, s: int, q_signal: QTable, i: int, rate: float) -> None:
    """Pull the task Q row for s toward the signal Q row for its associated
    signal; applied once per step before action selection."""
    trow = q_task.q[s]
    irow = q_signal.q[i]
    for a in range(len(trow)):
        trow[a] += rate * (irow[a] - trow[a])


class StepRecord:
    """What happened in one environment step."""

    __slots__ = (
        "state",
        "action",
        "source",
        "reward",
        "feedback",
        "signal",
        "td_err",
        "terminal",
        "success",
    )

    def __init__(self, state, action, source, reward, feedback, signal, td_err, terminal, success):
        self.state = state
        self.action = action
        self.source = source
        self.reward = reward
        self.feedback = feedback
        self.signal = signal
        self.td_err = td_err
        self.terminal = terminal
        self.success = success

    def as_dict(self) -> dict:
        return {k: getattr(self, k) for k in self.__slots__}


class TicsAgent:
    """One session's learner. Owns all mutable tables; not thread-safe."""

    def __init__(
        self,
        domain,
        model: ModelSpec,
        learner: LearnerConfig,
        shaping: ShapingConfig | None = None,
        tm_variant: str = "ActorCritic",
        n_signals: int | None = None,
        seed: int = 0,
    ):
        if shaping is None:
            shaping = ShapingConfig(
                strategy="QPull" if tm_variant == "QLearner" else "ConfidenceArbitration"
            )
        if tm_variant == "ActorCritic" and shaping.strategy != "ConfidenceArbitration":
            raise ValueError("ActorCritic pairs with ConfidenceArbitration shaping")
        if tm_variant == "QLearner" and shaping.strategy != "QPull":
            raise ValueError("QLearner pairs with QPull shaping")
        if tm_variant == "QLearner" and model.interpretation == "PU":
            raise ValueError("PU interpretation requires the ActorCritic task model")

        self.domain = domain
        self.model = model
        self.learner = learner
        self.shaping = shaping
        self.tm = TaskModel(tm_variant, domain.n_states, domain.n_actions, learner)
        self.n_signals = domain.n_actions if n_signals is None else n_signals
        if model.interpretation == "none":
            self.im = None
        else:
            if model.interpretation == "PU":
                mode = "PU"
            else:
                mode = "RU-q" if tm_variant == "QLearner" else "RU-actor"
            self.im = InstructionModel(mode, self.n_signals, domain.n_actions)
        self.cm = ContingencyMatrix(domain.n_states, self.n_signals)
        self.rng_explore = Random(f"{seed}:explore")
        self.epsilon = learner.epsilon0
        self.last_state: int | None = None
        self.last_action: int | None = None

    # -- episode lifecycle -------------------------------------------------

    def begin_episode(self) -> None:
        if self.im is not None:
            self.im.prev = None
        if self.learner.epsilon_reset_per_episode:
            self.epsilon = self.learner.epsilon0

    def end_episode(self) -> None:
        """Called when the harness cuts an episode at the step cap."""
        if self.im is not None:
            self.im.prev = None

    # -- external (human) teaching, applied between steps --------------------

    def apply_external_feedback(self, f: int) -> None:
        """Bind human feedback to the last performed action."""
        if self.last_state is None:
            raise ValueError("no action has been performed yet")
        s, a = self.last_state, self.last_action
        if self.tm.variant == "ActorCritic":
            inc = feedback_update(self.tm.prefs, s, a, f, self.learner.beta)
            if self.im is not None and self.im.mode == "PU":
                b = self.cm.best[s]
                if b >= 0:
                    im_mirror_pu(self.im, b, a, inc)
        else:
            row = self.tm.q.q[s]
            row[a] += self.learner.alpha * (f - row[a])
            if self.im is not None and self.im.mode == "RU-q":
                b = self.cm.best[s]
                if b >= 0:
                    im_update_ru_q(self.im, b, a, float(f), self.learner.alpha)
        if self.im is not None and self.im.mode == "RU-actor" and self.im.prev is not None:
            # the pending signal transition is the last action's; fold the
            # late feedback into its reward
            sig, act, r = self.im.prev
            self.im.prev = (sig, act, r + f)

    def apply_external_instruction(self, s: int, signal: int) -> None:
        """Bind a human instruction signal to the given (current) state."""
        if not 0 <= signal < self.n_signals:
            raise ValueError(f"signal {signal} outside the alphabet of {self.n_signals}")
        self.cm.observe(s, signal)

    # -- introspection -------------------------------------------------------

    def task_distribution(self, s: int) -> list[float]:
        if self.tm.variant == "ActorCritic":
            return softmax_row(self.tm.prefs.p[s])
        return softmax_row(self.tm.q.q[s])

    def signal_distribution(self, i: int) -> list[float]:
        if self.im is None:
            raise ValueError("no instruction model configured")
        if self.im.mode == "RU-q":
            return softmax_row(self.im.signal_q.q[i])
        return softmax_row(self.im.signal_prefs.p[i])

    def cm_display(self, s: int) -> tuple[int, float] | None:
        return self.cm.best_signal(s)

    # -- the per-step pipeline ----------------------------------------------

    def step(self, env, inputs: InputSource) -> StepRecord:
        """Run one full decide-act-learn step against ``env``.

        ``env`` must expose ``state`` and ``step(action) -> (next_state,
        reward, terminal, success)``.
        """
        s = env.state
        cm = self.cm
        im = self.im
        learner = self.learner
        sig_in = None

        # Instruction opportunity for the state we are about to act from; the
        # teacher reacts to the currently displayed signal.
        if im is not None:
            b = cm.best[s]
            sig_in = inputs.instruction(s, b if b >= 0 else None)
            if sig_in is not None:
                cm.observe(s, sig_in)
            # Complete the pending signal-space transition now that the
            # current state's signal is known.
            if im.mode == "RU-actor" and im.prev is not None:
                i_prev, a_prev, r_prev = im.prev
                b = cm.best[s]
                im_update_ru_actor(
                    im, i_prev, b if b >= 0 else None, a_prev, r_prev, learner
                )
                im.prev = None

        # Decide.
        ac = self.tm.variant == "ActorCritic"
        disp = cm.best[s] if im is not None else -1
        source = SOURCE_TM
        if ac:
            row = self.tm.prefs.p[s]
            if disp >= 0:
                sig_row = im.signal_prefs.p[disp]
                if confidence(softmax_row(row)) < confidence(softmax_row(sig_row)):
                    row = sig_row
                    source = SOURCE_IM
        else:
            if disp >= 0 and im is not None and im.mode == "RU-q":
                qpull_shape(self.tm.q, s, im.signal_q, disp, self.shaping.qpull_rate)
            row = self.tm.q.q[s]

        # Exploration only applies to task-model decisions: a decision taken
        # from the signal policy is already teacher-guided, so it is followed
        # greedily. Epsilon itself decays once per step either way.
        eps = self.epsilon
        if eps > 0.0:
            rng = self.rng_explore
            if source is not SOURCE_IM and rng.random() < eps:
                a = rng.randrange(len(row))
                source = SOURCE_EXPLORE
            else:
                a = argmax_lowest(row)
            eps -= learner.epsilon_decay
            self.epsilon = eps if eps > 0.0 else 0.0
        else:
            # argmax of the softmax equals argmax of the row itself
            a = argmax_lowest(row)

        # Act.
        s2, r, terminal, success = env.step(a)
        self.last_state = s
        self.last_action = a

        # Evaluation signals for the performed action.
        f = inputs.feedback(s, a) if self.model.uses_feedback else None

        # Task model updates.
        inc_total = 0.0
        delta = None
        if ac:
            prow = self.tm.prefs.p[s]
            if self.model.uses_reward:
                v = self.tm.values.v
                delta = (r - v[s]) if terminal else (r + learner.gamma * v[s2] - v[s])
                v[s] += learner.alpha * delta
                inc = learner.beta * delta
                prow[a] += inc
                inc_total += inc
            if f is not None:
                inc = learner.beta * f
                prow[a] += inc
                inc_total += inc
        else:
            has_info = self.model.uses_reward or f is not None
            if has_info:
                r_eff = (r if self.model.uses_reward else 0.0) + (f if f is not None else 0.0)
                qrow = self.tm.q.q[s]
                if terminal or learner.gamma == 0.0:
                    target = r_eff
                else:
                    target = r_eff + learner.gamma * max(self.tm.q.q[s2])
                qrow[a] += learner.alpha * (target - qrow[a])

        # Instruction model updates.
        if im is not None:
            b = cm.best[s]
            if im.mode == "PU":
                if b >= 0 and inc_total != 0.0:
                    im.signal_prefs.p[b][a] += inc_total
            elif im.mode == "RU-actor":
                has_info = self.model.uses_reward or f is not None
                if has_info:
                    r_i = (r if self.model.uses_reward else 0.0) + (f if f is not None else 0.0)
                    if terminal:
                        im_update_ru_actor(im, b if b >= 0 else None, None, a, r_i, learner, terminal=True)
                        im.prev = None
                    elif b >= 0:
                        im.prev = (b, a, r_i)
                    else:
                        im.prev = None
                else:
                    im.prev = None
            else:  # RU-q
                has_info = self.model.uses_reward or f is not None
                if has_info and b >= 0:
                    r_i = (r if self.model.uses_reward else 0.0) + (f if f is not None else 0.0)
                    im_update_ru_q(im, b, a, r_i, learner.alpha)

        return StepRecord(
            state=s,
            action=a,
            source=source,
            reward=r,
            feedback=f,
            signal=sig_in,
            td_err=delta,
            terminal=terminal,
            success=success,
        )

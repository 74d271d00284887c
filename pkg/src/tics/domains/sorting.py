"""Object-sorting benchmark: two hands over three table zones, one object per episode.

An episode starts with the object in the middle zone (z2). Plain objects must
end up in z1 and patterned objects in z3; placing the object in either outer
zone terminates the episode with +1 on the correct side and -1 on the wrong
side. Every other transition costs -0.1, invalid actions included (they are
no-ops).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterator

STEP_REWARD = -0.1
SUCCESS_REWARD = 1.0
FAILURE_REWARD = -1.0

TYPES = ("plain", "pattern")
COLORS = ("red", "green", "blue")
SIZES = ("large", "small")

LH_ZONES = ("z2", "z3")
RH_ZONES = ("z1", "z2")
OBJECT_SPOTS = ("z1", "z2", "z3", "lh", "rh")

ACTION_NAMES = (
    "lh-move-left",
    "lh-move-right",
    "lh-pick",
    "lh-place",
    "rh-move-left",
    "rh-move-right",
    "rh-pick",
    "rh-place",
)
N_ACTIONS = len(ACTION_NAMES)

# Zone order left-to-right; hands shift one zone per move within their range.
_ZONE_ORDER = ("z1", "z2", "z3")


@dataclass(frozen=True, slots=True)
class ObjectDescriptor:
    """Visual features of the object being sorted."""

    type: str
    color: str
    size: str

    def __post_init__(self) -> None:
        if self.type not in TYPES:
            raise ValueError(f"unknown type {self.type!r}")
        if self.color not in COLORS:
            raise ValueError(f"unknown color {self.color!r}")
        if self.size not in SIZES:
            raise ValueError(f"unknown size {self.size!r}")

    @property
    def target_zone(self) -> str:
        return "z1" if self.type == "plain" else "z3"


@dataclass(frozen=True, slots=True)
class SortingState:
    """Hand locations, object location and the episode's object descriptor."""

    l_lh: str
    l_rh: str
    l_o: str
    d: ObjectDescriptor


@dataclass(frozen=True, slots=True)
class StepOutcome:
    next_state: object
    reward: float
    terminal: bool
    success: bool | None = None


def sorting_reset(descriptor: ObjectDescriptor) -> SortingState:
    """Fresh episode: object placed in z2, hands at their home zones."""
    return SortingState(l_lh="z3", l_rh="z1", l_o="z2", d=descriptor)


def _shift(zone: str, delta: int, allowed: tuple[str, str]) -> str:
    idx = _ZONE_ORDER.index(zone) + delta
    if 0 <= idx < len(_ZONE_ORDER) and _ZONE_ORDER[idx] in allowed:
        return _ZONE_ORDER[idx]
    return zone


def sorting_step(state: SortingState, action: int) -> StepOutcome:
    """Deterministic transition for one of the eight hand actions.

    Invalid moves, picks and places are no-ops that still cost the step
    reward. The episode terminates only when the object is placed in z1 or z3.
    """
    if state.l_o in ("z1", "z3"):
        raise ValueError("stepping a terminal sorting state")

    l_lh, l_rh, l_o = state.l_lh, state.l_rh, state.l_o
    hand = "lh" if action < 4 else "rh"
    verb = action % 4

    if hand == "lh":
        if verb == 0:
            l_lh = _shift(l_lh, -1, LH_ZONES)
        elif verb == 1:
            l_lh = _shift(l_lh, +1, LH_ZONES)
        elif verb == 2:
            if l_o == l_lh:
                l_o = "lh"
        else:
            if l_o == "lh":
                l_o = l_lh
    else:
        if verb == 0:
            l_rh = _shift(l_rh, -1, RH_ZONES)
        elif verb == 1:
            l_rh = _shift(l_rh, +1, RH_ZONES)
        elif verb == 2:
            if l_o == l_rh:
                l_o = "rh"
        else:
            if l_o == "rh":
                l_o = l_rh

    next_state = SortingState(l_lh=l_lh, l_rh=l_rh, l_o=l_o, d=state.d)
    if l_o in ("z1", "z3"):
        success = l_o == state.d.target_zone
        return StepOutcome(next_state, SUCCESS_REWARD if success else FAILURE_REWARD, True, success)
    return StepOutcome(next_state, STEP_REWARD, False, None)


def full_roster() -> tuple[ObjectDescriptor, ...]:
    """The eight session objects: every type/size combination in red and in blue."""
    return tuple(
        ObjectDescriptor(type=t, color=c, size=s)
        for c in ("red", "blue")
        for t in TYPES
        for s in SIZES
    )


def small_roster() -> tuple[ObjectDescriptor, ...]:
    """Type-only mode: the roster alternates plain and patterned objects."""
    return tuple(
        ObjectDescriptor(type=t, color="red", size="large") for t in TYPES
    ) * 4


class SortingDomain:
    """Indexed, table-driven view of the sorting MDP.

    States are enumerated over (l_lh, l_rh, l_o, descriptor); ``small``
    restricts the descriptor to its type, shrinking the space from 240 to 40
    states. Transitions are precomputed so a step is three list lookups.
    """

    def __init__(self, small: bool = False):
        self.small = small
        self.name = "sorting-small" if small else "sorting"
        if small:
            descriptors = tuple(
                ObjectDescriptor(type=t, color="red", size="large") for t in TYPES
            )
            self.roster = small_roster()
        else:
            descriptors = tuple(
                ObjectDescriptor(type=t, color=c, size=s)
                for t, c, s in product(TYPES, COLORS, SIZES)
            )
            self.roster = full_roster()

        self.states: list[SortingState] = [
            SortingState(l_lh=lh, l_rh=rh, l_o=obj, d=d)
            for d in descriptors
            for lh in LH_ZONES
            for rh in RH_ZONES
            for obj in OBJECT_SPOTS
        ]
        self.index = {s: i for i, s in enumerate(self.states)}
        self.n_states = len(self.states)
        self.n_actions = N_ACTIONS
        self.action_names = ACTION_NAMES

        n = self.n_states
        self.terminal = [s.l_o in ("z1", "z3") for s in self.states]
        self.next_state = [0] * (n * N_ACTIONS)
        self.reward = [0.0] * (n * N_ACTIONS)
        self.step_terminal = [False] * (n * N_ACTIONS)
        self.step_success = [False] * (n * N_ACTIONS)
        for i, s in enumerate(self.states):
            if self.terminal[i]:
                continue
            for a in range(N_ACTIONS):
                out = sorting_step(s, a)
                k = i * N_ACTIONS + a
                self.next_state[k] = self.index[out.next_state]
                self.reward[k] = out.reward
                self.step_terminal[k] = out.terminal
                self.step_success[k] = bool(out.success)

        self._reset_indices = [self.index[sorting_reset(d)] for d in self.roster]

    def reset_index(self, episode: int, rng=None) -> int:
        """Round-robin over the object roster; the RNG argument is unused here."""
        return self._reset_indices[episode % len(self.roster)]

    def describe_state(self, idx: int) -> dict:
        s = self.states[idx]
        return {
            "l_lh": s.l_lh,
            "l_rh": s.l_rh,
            "l_o": s.l_o,
            "descriptor": {"type": s.d.type, "color": s.d.color, "size": s.d.size},
        }

    def decision_states(self) -> Iterator[int]:
        return (i for i in range(self.n_states) if not self.terminal[i])

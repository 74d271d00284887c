"""Maze navigation benchmark: reach a fixed goal cell from random free starts.

Maps are plain text: '#' wall, '.' free, 'G' the single goal. Moving into a
wall or off the grid leaves the agent in place; every non-goal transition
costs -0.01 and entering the goal pays +1 and ends the episode.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from importlib import resources
from random import Random

STEP_REWARD = -0.01
GOAL_REWARD = 1.0

ACTION_NAMES = ("north", "east", "south", "west")
N_ACTIONS = len(ACTION_NAMES)
# (dx, dy) per action; y grows downward through the map rows.
_MOVES = ((0, -1), (1, 0), (0, 1), (-1, 0))


class MapError(ValueError):
    """Raised for maps that violate the text format or its invariants."""


@dataclass(frozen=True, slots=True)
class MazeState:
    x: int
    y: int


@dataclass(frozen=True, slots=True)
class StepOutcome:
    next_state: MazeState
    reward: float
    terminal: bool


class MazeMap:
    """Parsed grid with a validated single goal and fully connected free cells."""

    def __init__(self, rows: list[str]):
        if not rows:
            raise MapError("empty map")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise MapError("ragged rows: all map lines must have equal length")
        if any(set(r) - {"#", ".", "G"} for r in rows):
            raise MapError("maps may only contain '#', '.' and 'G'")
        goals = [
            (x, y) for y, r in enumerate(rows) for x, ch in enumerate(r) if ch == "G"
        ]
        if len(goals) != 1:
            raise MapError(f"expected exactly one goal, found {len(goals)}")

        self.rows = rows
        self.width = width
        self.height = len(rows)
        self.goal = MazeState(*goals[0])
        self.free_cells = [
            MazeState(x, y)
            for y, r in enumerate(rows)
            for x, ch in enumerate(r)
            if ch != "#"
        ]

        dist = self.distances_from_goal()
        unreachable = [c for c in self.free_cells if c not in dist]
        if unreachable:
            c = unreachable[0]
            raise MapError(f"free cell ({c.x}, {c.y}) cannot reach the goal")

    def is_free(self, x: int, y: int) -> bool:
        return 0 <= x < self.width and 0 <= y < self.height and self.rows[y][x] != "#"

    def distances_from_goal(self) -> dict[MazeState, int]:
        """BFS shortest-path step counts from every reachable free cell to the goal."""
        dist = {self.goal: 0}
        queue = deque([self.goal])
        while queue:
            cell = queue.popleft()
            for dx, dy in _MOVES:
                nx, ny = cell.x + dx, cell.y + dy
                n = MazeState(nx, ny)
                if self.is_free(nx, ny) and n not in dist:
                    dist[n] = dist[cell] + 1
                    queue.append(n)
        return dist

    def goal_horizon(self) -> int:
        return max(self.distances_from_goal().values())


def maze_load(text: str) -> MazeMap:
    """Parse and validate a map from its text form."""
    rows = [line for line in text.splitlines() if line]
    return MazeMap(rows)


def load_bundled(name: str) -> MazeMap:
    """Load one of the maps shipped with the package (``maze-std``, ``maze-simple``)."""
    path = resources.files("tics.domains").joinpath(f"maps/{name}.txt")
    return maze_load(path.read_text(encoding="utf-8"))


def maze_step(state: MazeState, action: int, grid: MazeMap) -> StepOutcome:
    """Deterministic move; blocked moves stay in place at the step cost."""
    dx, dy = _MOVES[action]
    nx, ny = state.x + dx, state.y + dy
    if not grid.is_free(nx, ny):
        return StepOutcome(state, STEP_REWARD, False)
    nxt = MazeState(nx, ny)
    if nxt == grid.goal:
        return StepOutcome(nxt, GOAL_REWARD, True)
    return StepOutcome(nxt, STEP_REWARD, False)


def maze_reset(grid: MazeMap, rng: Random) -> MazeState:
    """Uniform draw over the free, non-goal cells."""
    cells = [c for c in grid.free_cells if c != grid.goal]
    return cells[rng.randrange(len(cells))]


class MazeDomain:
    """Indexed, table-driven view of a maze MDP."""

    def __init__(self, grid: MazeMap, name: str = "maze"):
        self.name = name
        self.grid = grid
        self.states = list(grid.free_cells)
        self.index = {s: i for i, s in enumerate(self.states)}
        self.n_states = len(self.states)
        self.n_actions = N_ACTIONS
        self.action_names = ACTION_NAMES

        goal_idx = self.index[grid.goal]
        self.terminal = [i == goal_idx for i in range(self.n_states)]
        n = self.n_states
        self.next_state = [0] * (n * N_ACTIONS)
        self.reward = [0.0] * (n * N_ACTIONS)
        self.step_terminal = [False] * (n * N_ACTIONS)
        self.step_success = [False] * (n * N_ACTIONS)
        for i, s in enumerate(self.states):
            if self.terminal[i]:
                continue
            for a in range(N_ACTIONS):
                out = maze_step(s, a, grid)
                k = i * N_ACTIONS + a
                self.next_state[k] = self.index[out.next_state]
                self.reward[k] = out.reward
                self.step_terminal[k] = out.terminal
                self.step_success[k] = out.terminal

        self._start_indices = [
            self.index[c] for c in grid.free_cells if c != grid.goal
        ]

    def reset_index(self, episode: int, rng: Random) -> int:
        return self._start_indices[rng.randrange(len(self._start_indices))]

    def describe_state(self, idx: int) -> dict:
        s = self.states[idx]
        return {"x": s.x, "y": s.y}

    def decision_states(self):
        return (i for i in range(self.n_states) if not self.terminal[i])

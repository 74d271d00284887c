"""Value-iteration oracle: canonical optimal policies and optimal-action sets.

Used to construct the simulated teacher's preferred policy and to verify the
domains in tests. Independent of the incremental learners in ``tics.core``.
"""

from __future__ import annotations

from dataclasses import dataclass

CONVERGENCE_THRESHOLD = 1e-10
TIE_TOLERANCE = 1e-9


@dataclass(frozen=True)
class OptimalPolicy:
    """Everything value iteration knows about a domain's optima."""

    values: list[float]
    q: list[list[float]]
    optimal_sets: list[tuple[int, ...]]
    canonical: list[int]

    def is_optimal(self, state: int, action: int) -> bool:
        return action in self.optimal_sets[state]


def value_iteration(domain, gamma: float) -> tuple[list[float], list[list[float]]]:
    """Deterministic-MDP value iteration to a 1e-10 sup-norm residual."""
    n, na = domain.n_states, domain.n_actions
    terminal = domain.terminal
    nxt, rew, term = domain.next_state, domain.reward, domain.step_terminal
    v = [0.0] * n
    while True:
        residual = 0.0
        for s in range(n):
            if terminal[s]:
                continue
            base = s * na
            best = float("-inf")
            for a in range(na):
                k = base + a
                q = rew[k] if term[k] else rew[k] + gamma * v[nxt[k]]
                if q > best:
                    best = q
            diff = abs(best - v[s])
            if diff > residual:
                residual = diff
            v[s] = best
        if residual < CONVERGENCE_THRESHOLD:
            break

    q_table = [[0.0] * na for _ in range(n)]
    for s in range(n):
        if terminal[s]:
            continue
        base = s * na
        for a in range(na):
            k = base + a
            q_table[s][a] = rew[k] if term[k] else rew[k] + gamma * v[nxt[k]]
    return v, q_table


def optimal_policy(domain, gamma: float = 0.9) -> OptimalPolicy:
    """Optimal action sets (within 1e-9 of the row max) and the canonical
    single policy that breaks ties toward the lowest action id."""
    values, q = value_iteration(domain, gamma)
    optimal_sets: list[tuple[int, ...]] = []
    canonical: list[int] = []
    for s in range(domain.n_states):
        if domain.terminal[s]:
            optimal_sets.append(())
            canonical.append(0)
            continue
        row = q[s]
        best = max(row)
        actions = tuple(a for a, val in enumerate(row) if val >= best - TIE_TOLERANCE)
        optimal_sets.append(actions)
        canonical.append(actions[0])
    return OptimalPolicy(values=values, q=q, optimal_sets=optimal_sets, canonical=canonical)

"""Benchmark domains and the value-iteration oracle."""

from __future__ import annotations

from functools import lru_cache

from .maze import MazeDomain, MazeMap, load_bundled, maze_load, maze_reset, maze_step
from .oracle import OptimalPolicy, optimal_policy, value_iteration
from .sorting import (
    ObjectDescriptor,
    SortingDomain,
    SortingState,
    sorting_reset,
    sorting_step,
)

DOMAIN_NAMES = ("sorting", "sorting-small", "maze-std", "maze-simple")


@lru_cache(maxsize=None)
def get_domain(name: str):
    """Build (and cache) a domain by its configuration name."""
    if name == "sorting":
        return SortingDomain(small=False)
    if name == "sorting-small":
        return SortingDomain(small=True)
    if name in ("maze-std", "maze-simple"):
        d = MazeDomain(load_bundled(name), name=name)
        return d
    raise ValueError(f"unknown domain {name!r}; expected one of {DOMAIN_NAMES}")


__all__ = [
    "DOMAIN_NAMES",
    "MazeDomain",
    "MazeMap",
    "ObjectDescriptor",
    "OptimalPolicy",
    "SortingDomain",
    "SortingState",
    "get_domain",
    "load_bundled",
    "maze_load",
    "maze_reset",
    "maze_step",
    "optimal_policy",
    "sorting_reset",
    "sorting_step",
    "value_iteration",
]

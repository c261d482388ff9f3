"""Friendship graph and its growth through group co-membership."""

from __future__ import annotations

import math
import random
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from itertools import combinations
from typing import TYPE_CHECKING

from coopsim.core import Agent, behavior_value, clears_bar

if TYPE_CHECKING:
    from coopsim.formation import Group
    from coopsim.population import Population


@dataclass
class FriendNetwork:
    """Undirected simple graph over agent ids."""

    adjacency: dict[int, set[int]] = field(default_factory=dict)

    @classmethod
    def empty(cls, ids: Iterable[int]) -> FriendNetwork:
        return cls({i: set() for i in ids})

    def add_edge(self, u: int, v: int) -> None:
        if u == v:
            raise ValueError(f"self-loop on {u}")
        self.adjacency.setdefault(u, set()).add(v)
        self.adjacency.setdefault(v, set()).add(u)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency.get(u, ())

    def friends(self, u: int) -> set[int]:
        return self.adjacency.get(u, set())

    def degree(self, u: int) -> int:
        return len(self.adjacency.get(u, ()))

    def isolate(self, u: int) -> None:
        """Drop every edge touching ``u``."""
        for v in self.adjacency.get(u, set()):
            self.adjacency[v].discard(u)
        self.adjacency[u] = set()

    def edge_count(self) -> int:
        return sum(len(nbrs) for nbrs in self.adjacency.values()) // 2

    def edges(self) -> list[tuple[int, int]]:
        return sorted((u, v) for u, nbrs in self.adjacency.items() for v in nbrs if u < v)

    def copy(self) -> FriendNetwork:
        return FriendNetwork({u: set(nbrs) for u, nbrs in self.adjacency.items()})


def init_friend_network(n: int, d0: float, rng: random.Random) -> FriendNetwork:
    """Uniform random graph with ``round(n * d0 / 2)`` edges."""
    if not 0 <= d0 < n:
        raise ValueError(f"need 0 <= d0 < n, got d0={d0}, n={n}")
    net = FriendNetwork.empty(range(n))
    pairs = list(combinations(range(n), 2))
    m = min(round(n * d0 / 2), len(pairs))
    for u, v in rng.sample(pairs, m):
        net.add_edge(u, v)
    return net


@dataclass(frozen=True)
class FriendCandidate:
    a: int
    b: int
    group_id: int


def candidate_pairs(group: Group, network: FriendNetwork) -> list[FriendCandidate]:
    members = sorted(group.members)
    return [
        FriendCandidate(a, b, group.initiator)
        for a, b in combinations(members, 2)
        if not network.has_edge(a, b)
    ]


def _mean_sigma(values: Sequence[float]) -> tuple[float, float]:
    n = len(values)
    mean = sum(values) / n
    var = sum((x - mean) ** 2 for x in values) / n
    return mean, math.sqrt(var)


def evaluate_candidate(
    agent: Agent, candidate: Agent, network: FriendNetwork, agents: Sequence[Agent]
) -> bool:
    """Whether ``agent`` would befriend ``candidate`` given its current friends.

    ``agents`` maps ids to agents (indexable by id).
    """
    friends = network.friends(agent.id)
    v = behavior_value(agent.preference, candidate.behavior)
    if not friends:
        return True
    mean, sigma = _mean_sigma([behavior_value(agent.preference, agents[f].behavior) for f in friends])
    return clears_bar(v, mean, sigma)


def update_friendships(groups: Sequence[Group], population: Population) -> int:
    """Befriend mutually accepting co-members; returns the number of new edges.

    Every evaluation reads the network as it stood before this call, so the
    result does not depend on the order of ``groups``.
    """
    network = population.network
    values = population.values
    cache: dict[int, tuple[float, float] | None] = {}

    def bar(i: int) -> tuple[float, float] | None:
        if i not in cache:
            friends = network.friends(i)
            row = values[i]
            cache[i] = _mean_sigma([row[f] for f in friends]) if friends else None
        return cache[i]

    def accepts(i: int, j: int) -> bool:
        stats = bar(i)
        return stats is None or clears_bar(values[i][j], *stats)

    new_edges = []
    for group in groups:
        for cand in candidate_pairs(group, network):
            if accepts(cand.a, cand.b) and accepts(cand.b, cand.a):
                new_edges.append((cand.a, cand.b))
    for a, b in new_edges:
        network.add_edge(a, b)
    return len(new_edges)

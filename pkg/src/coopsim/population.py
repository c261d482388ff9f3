"""Population construction and the per-term consumption rule."""

from __future__ import annotations

import random
from dataclasses import dataclass

from coopsim.config import SimConfig
from coopsim.core import Agent, BehaviorVector, Strategy, behavior_value, build_preference_vector
from coopsim.network import FriendNetwork, init_friend_network


@dataclass
class Population:
    agents: list[Agent]
    network: FriendNetwork
    # values[i][j] is agent i's valuation of agent j; p and b never change during a run
    values: list[list[float]]

    @classmethod
    def from_agents(cls, agents: list[Agent], network: FriendNetwork) -> Population:
        for idx, agent in enumerate(agents):
            if agent.id != idx:
                raise ValueError(f"agent ids must equal their index, got {agent.id} at {idx}")
        values = [[behavior_value(a.preference, b.behavior) for b in agents] for a in agents]
        return cls(agents, network, values)

    def alive_ids(self) -> list[int]:
        return [a.id for a in self.agents if a.alive]


def init_population(config: SimConfig, rng: random.Random) -> Population:
    """Draw behaviors, assign strategies, derive preferences, and wire the initial graph.

    RNG order: all behavior draws (r then e per agent), the complement set,
    then the friend graph.
    """
    n = config.n
    behaviors = []
    while len(behaviors) < n:
        r, e = rng.random(), rng.random()
        if r == 0.0 and e == 0.0:
            # [0, 0] has no defined preference
            continue
        behaviors.append(BehaviorVector(r, e))
    complement = set(rng.sample(range(n), round(config.beta * n)))
    agents = []
    for i, b in enumerate(behaviors):
        strategy = Strategy.COMPLEMENT if i in complement else Strategy.SIMILAR
        agents.append(
            Agent(
                id=i,
                capacity=config.c0,
                behavior=b,
                preference=build_preference_vector(b, strategy, config.alpha),
                strategy=strategy,
                savings=config.s0,
            )
        )
    network = init_friend_network(n, config.d0, rng)
    return Population.from_agents(agents, network)


def consume_and_cull(population: Population, amount: float) -> list[int]:
    """Charge every living agent ``amount``; agents that go below zero die."""
    if amount < 0:
        raise ValueError(f"consumption must be >= 0, got {amount}")
    dead = []
    for agent in population.agents:
        if not agent.alive:
            continue
        agent.savings -= amount
        if agent.savings < 0:
            agent.alive = False
            population.network.isolate(agent.id)
            dead.append(agent.id)
    return dead

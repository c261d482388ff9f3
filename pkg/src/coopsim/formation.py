"""The T-tick recruitment phase: who gets offers and who accepts them."""

from __future__ import annotations

import math
import random
from collections.abc import Sequence
from dataclasses import dataclass, field

from coopsim.core import Agent, BehaviorVector, OfferStatistics, behavior_value, clears_bar
from coopsim.population import Population


@dataclass
class Group:
    initiator: int
    members: list[int] = field(default_factory=list)
    term_index: int = 0

    def __post_init__(self) -> None:
        if not self.members:
            self.members = [self.initiator]

    def __len__(self) -> int:
        return len(self.members)


def choosiness_gamma(t: int, T: int, group_size: int, gamma0: float) -> float:
    return gamma0 * (T - t + group_size) / T


def offer_probabilities(values: Sequence[float], gamma: float) -> list[float]:
    """Selection probabilities proportional to ``v ** gamma``.

    Falls back to uniform when every weight is zero.
    """
    if not values:
        return []
    weights = [v**gamma for v in values]
    total = sum(weights)
    if total <= 0.0:
        return [1.0 / len(values)] * len(values)
    return [w / total for w in weights]


def sample_index(probs: Sequence[float], rng: random.Random) -> int:
    u = rng.random()
    acc = 0.0
    for idx, p in enumerate(probs):
        acc += p
        if u < acc:
            return idx
    # rounding can leave acc a hair below 1
    return len(probs) - 1


def select_offer_target(
    initiator: Agent, eligible: Sequence[Agent], gamma: float, rng: random.Random
) -> int | None:
    """Id of the friend who receives this tick's offer, or None if nobody is eligible."""
    if not eligible:
        return None
    probs = offer_probabilities([behavior_value(initiator.preference, a.behavior) for a in eligible], gamma)
    return eligible[sample_index(probs, rng)].id


def group_behavior_mean(group: Group, agents: Sequence[Agent]) -> BehaviorVector:
    size = len(group.members)
    r = sum(agents[m].behavior.r for m in group.members) / size
    e = sum(agents[m].behavior.e for m in group.members) / size
    return BehaviorVector(min(r, 1.0), min(e, 1.0))


def adjusted_offer_value(
    receiver: Agent, group_mean: BehaviorVector, t: int, T: int, gamma0: float
) -> float:
    """Receiver's valuation of the group plus the time-pressure term.

    ``T - t`` is floored at 1 so the last tick does not hit ``ln(0)``.
    """
    return behavior_value(receiver.preference, group_mean) + math.log(gamma0 * max(T - t, 1) / T)


def accept_offer(adjusted: float, stats: OfferStatistics) -> tuple[bool, OfferStatistics]:
    """Accept against the history of previous offers, then fold this one in."""
    accepted = stats.count == 0 or clears_bar(adjusted, stats.mean, stats.sigma)
    return accepted, stats.updated(adjusted)


def run_formation_phase(
    population: Population,
    initiator_ids: Sequence[int],
    T: int,
    gamma0: float,
    rng: random.Random,
    term_index: int = 0,
) -> list[Group]:
    """Run ticks 1..T; returns one group per initiator, in ``initiator_ids`` order.

    Each tick the initiators act in a freshly shuffled order. Accepted
    recipients join at once and are out of reach for the rest of the term.
    """
    if len(set(initiator_ids)) != len(initiator_ids):
        raise ValueError("initiators must be distinct")
    agents = population.agents
    network = population.network
    values = population.values
    groups = [Group(i, term_index=term_index) for i in initiator_ids]
    taken = set(initiator_ids)
    order = list(range(len(groups)))
    for t in range(1, T + 1):
        rng.shuffle(order)
        for gi in order:
            group = groups[gi]
            i = group.initiator
            eligible = sorted(f for f in network.friends(i) - taken if agents[f].alive)
            if not eligible:
                continue
            gamma = choosiness_gamma(t, T, len(group.members), gamma0)
            row = values[i]
            j = eligible[sample_index(offer_probabilities([row[f] for f in eligible], gamma), rng)]
            receiver = agents[j]
            adjusted = adjusted_offer_value(receiver, group_behavior_mean(group, agents), t, T, gamma0)
            accepted, receiver.offer_stats = accept_offer(adjusted, receiver.offer_stats)
            if accepted:
                group.members.append(j)
                taken.add(j)
    return groups

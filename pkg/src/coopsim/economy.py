"""Fields, harvesting, award sharing and shortfall punishment."""

from __future__ import annotations

import math
import random
from collections.abc import Sequence
from dataclasses import dataclass

from coopsim.core import Agent
from coopsim.formation import Group
from coopsim.population import Population

_SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class HarvestOutcome:
    agent_id: int
    gross: float
    net: float


@dataclass(frozen=True)
class Settlement:
    agent_id: int
    award: float
    penalty: float

    @property
    def delta(self) -> float:
        return self.award - self.penalty


def assign_field(group_size: int, c0: float, rng: random.Random) -> float:
    """Field size: total capacity minus ``|x|``, ``x ~ N(0, variance=group_size)``."""
    if group_size < 2:
        raise ValueError(f"only groups of two or more get a field, got size {group_size}")
    x = rng.gauss(0.0, math.sqrt(group_size))
    return max(group_size * c0 - abs(x), 0.0)


def harvest_agent(agent: Agent, c0: float, rng: random.Random) -> HarvestOutcome:
    if rng.random() < agent.behavior.r:
        gross = c0
    else:
        gross = max(c0 - abs(rng.gauss(0.0, _SQRT2)), 0.0)
    return HarvestOutcome(agent.id, gross, gross * agent.behavior.e)


def bonus_factor(group_size: int, g_max: int) -> float:
    return 1.0 + group_size / g_max


def share_awards(group_size: int, outcomes: Sequence[HarvestOutcome], g_max: int) -> list[float]:
    """Each member's net harvest, weighted by its share of the gross, times the size bonus."""
    total_gross = sum(o.gross for o in outcomes)
    if total_gross <= 0.0:
        return [0.0] * len(outcomes)
    bonus = bonus_factor(group_size, g_max)
    return [o.net * (o.gross / total_gross) * bonus for o in outcomes]


def apply_punishment(
    group_size: int, outcomes: Sequence[HarvestOutcome], field_size: float, g_max: int
) -> float:
    """Per-member penalty when the gross harvest falls short of the field.

    The shortfall test uses gross amounts, the penalty itself uses net
    amounts with the size bonus. Negative penalties are clamped to zero.
    """
    if sum(o.gross for o in outcomes) >= field_size:
        return 0.0
    total_net = sum(o.net for o in outcomes)
    penalty = (field_size - total_net * bonus_factor(group_size, g_max)) / group_size
    return max(penalty, 0.0)


def settle_term(
    groups: Sequence[Group], population: Population, c0: float, g_max: int, rng: random.Random
) -> list[Settlement]:
    """Harvest and pay every group of two or more, in the given order.

    RNG order per group: the field draw, then each member's harvest in
    membership order.
    """
    agents = population.agents
    settlements = []
    for group in groups:
        size = len(group.members)
        if size < 2:
            continue
        field_size = assign_field(size, c0, rng)
        outcomes = [harvest_agent(agents[m], c0, rng) for m in group.members]
        awards = share_awards(size, outcomes, g_max)
        penalty = apply_punishment(size, outcomes, field_size, g_max)
        for outcome, award in zip(outcomes, awards):
            agents[outcome.agent_id].savings += award - penalty
            settlements.append(Settlement(outcome.agent_id, award, penalty))
    return settlements

"""Term loop: consumption, recruitment, harvest, settlement, friendship growth."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Any

from coopsim.config import SimConfig
from coopsim.core import Strategy
from coopsim.economy import Settlement, settle_term
from coopsim.formation import Group, run_formation_phase
from coopsim.network import update_friendships
from coopsim.population import Population, consume_and_cull, init_population


@dataclass(frozen=True)
class TermReport:
    term_index: int
    mean_complement: float
    mean_similar: float
    alive_complement: int
    alive_similar: int
    # counts of groups by size 1..T+1
    group_sizes: tuple[int, ...] = ()
    edges_added: int = 0

    def to_dict(self) -> dict[str, Any]:
        return {
            "term": self.term_index,
            "mean_complement": _json_float(self.mean_complement),
            "mean_similar": _json_float(self.mean_similar),
            "alive_complement": self.alive_complement,
            "alive_similar": self.alive_similar,
            "group_sizes": list(self.group_sizes),
            "edges_added": self.edges_added,
        }


@dataclass(frozen=True)
class RunReport:
    config: SimConfig
    initial: TermReport
    terms: tuple[TermReport, ...]
    final_winner: str
    stop_reason: str | None = None

    @property
    def last(self) -> TermReport:
        return self.terms[-1] if self.terms else self.initial

    def to_dict(self) -> dict[str, Any]:
        return {
            "config": self.config.to_dict(),
            "final_winner": self.final_winner,
            "stop_reason": self.stop_reason,
            "initial": self.initial.to_dict(),
            "terms": [t.to_dict() for t in self.terms],
        }


def _json_float(x: float) -> float | None:
    return None if math.isnan(x) else x


@dataclass
class SimState:
    config: SimConfig
    population: Population
    term_index: int = 0
    # groups live only for the term in flight; settlements are kept until the next term
    groups: list[Group] = field(default_factory=list)
    settlements: list[Settlement] = field(default_factory=list)


def snapshot(population: Population, term_index: int, group_sizes=(), edges_added=0) -> TermReport:
    """Mean savings and head counts per strategy over living agents."""
    totals = {Strategy.COMPLEMENT: 0.0, Strategy.SIMILAR: 0.0}
    counts = {Strategy.COMPLEMENT: 0, Strategy.SIMILAR: 0}
    for agent in population.agents:
        if agent.alive:
            totals[agent.strategy] += agent.savings
            counts[agent.strategy] += 1

    def mean(s: Strategy) -> float:
        return totals[s] / counts[s] if counts[s] else math.nan

    return TermReport(
        term_index=term_index,
        mean_complement=mean(Strategy.COMPLEMENT),
        mean_similar=mean(Strategy.SIMILAR),
        alive_complement=counts[Strategy.COMPLEMENT],
        alive_similar=counts[Strategy.SIMILAR],
        group_sizes=tuple(group_sizes),
        edges_added=edges_added,
    )


def run_term(state: SimState, rng: random.Random) -> TermReport:
    """Advance one term of T+4 time units and report its end-of-term metrics."""
    config = state.config
    population = state.population
    state.term_index += 1
    # t = 0: eat, then pick initiators among the survivors
    consume_and_cull(population, config.consumption)
    alive = population.alive_ids()
    if len(alive) < 2:
        raise RuntimeError(f"term {state.term_index}: fewer than 2 agents alive")
    initiators = rng.sample(alive, min(config.k, len(alive)))
    # t = 1..T
    state.groups = run_formation_phase(
        population, initiators, config.T, config.gamma0, rng, term_index=state.term_index
    )
    # t = T+1, T+2
    state.settlements = settle_term(state.groups, population, config.c0, config.g_max, rng)
    # t = T+3
    edges_added = update_friendships(state.groups, population)
    sizes = [0] * config.g_max
    for group in state.groups:
        sizes[len(group.members) - 1] += 1
    state.groups = []
    return snapshot(population, state.term_index, sizes, edges_added)


def _winner(report: TermReport) -> str:
    if report.alive_complement and not report.alive_similar:
        return Strategy.COMPLEMENT.value
    if report.alive_similar and not report.alive_complement:
        return Strategy.SIMILAR.value
    if not report.alive_complement and not report.alive_similar:
        return "none"
    if report.mean_complement > report.mean_similar:
        return Strategy.COMPLEMENT.value
    if report.mean_similar > report.mean_complement:
        return Strategy.SIMILAR.value
    return "tie"


def _stop_reason(initial: TermReport, current: TermReport) -> str | None:
    if current.alive_complement + current.alive_similar < 2:
        return "fewer than 2 agents alive"
    if initial.alive_complement and not current.alive_complement:
        return "complement class extinct"
    if initial.alive_similar and not current.alive_similar:
        return "similar class extinct"
    return None


def run_simulation(config: SimConfig) -> RunReport:
    """Run one seeded simulation to ``max_term`` terms or until it degenerates."""
    rng = random.Random(config.seed)
    population = init_population(config, rng)
    state = SimState(config, population)
    initial = snapshot(population, 0)
    terms: list[TermReport] = []
    stop = _stop_reason(initial, initial)
    while stop is None and len(terms) < config.max_term:
        # deaths happen at t = 0, so check survivors before committing to a term
        if sum(a.alive and a.savings >= config.consumption for a in population.agents) < 2:
            terms.append(_final_cull(state))
            stop = _stop_reason(initial, terms[-1]) or "fewer than 2 agents alive"
            break
        terms.append(run_term(state, rng))
        stop = _stop_reason(initial, terms[-1])
    return RunReport(config, initial, tuple(terms), _winner(terms[-1] if terms else initial), stop)


def _final_cull(state: SimState) -> TermReport:
    """A term that ends at t = 0 because too few agents survive consumption."""
    state.term_index += 1
    consume_and_cull(state.population, state.config.consumption)
    return snapshot(state.population, state.term_index, [0] * state.config.g_max, 0)

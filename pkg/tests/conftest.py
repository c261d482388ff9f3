import random

import pytest

from coopsim.core import Agent, BehaviorVector, PreferenceVector, Strategy
from coopsim.network import FriendNetwork
from coopsim.population import Population


def make_agent(i, r, e, pr=0.5, strategy=Strategy.SIMILAR, savings=200.0, c0=10.0):
    return Agent(
        id=i,
        capacity=c0,
        behavior=BehaviorVector(r, e),
        preference=PreferenceVector(pr, 1.0 - pr),
        strategy=strategy,
        savings=savings,
    )


def make_population(specs, edges=()):
    """specs: list of (r, e, pr); agent ids follow list order."""
    agents = [make_agent(i, *spec) for i, spec in enumerate(specs)]
    net = FriendNetwork.empty(range(len(agents)))
    for u, v in edges:
        net.add_edge(u, v)
    return Population.from_agents(agents, net)


class ZeroNoise(random.Random):
    """Real RNG except that every normal draw is exactly zero."""

    def gauss(self, mu=0.0, sigma=1.0):
        return 0.0


@pytest.fixture
def rng():
    return random.Random(12345)


# criterion -> (passed, detail); filled by test_acceptance.py
ACCEPTANCE: dict[str, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(ACCEPTANCE, key=lambda s: int(s.split()[0])):
        passed, detail = ACCEPTANCE[name]
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {name}: {detail}")

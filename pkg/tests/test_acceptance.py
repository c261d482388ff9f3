"""Exit criteria: determinism, the paper's qualitative claims at desk scale, and oracle checks.

Criteria 3-5 share one desk-scale sweep (3 alphas x 3 betas x 50 reps,
500 terms), which takes several minutes on one core. Set COOPSIM_JOBS to
spread it over more processes.
"""

import math
import random
import statistics
import subprocess
import sys
from pathlib import Path

import pytest

from coopsim.cli import main
from coopsim.config import SimConfig
from coopsim.economy import harvest_agent
from coopsim.engine import run_simulation
from coopsim.formation import select_offer_target
from coopsim.harness import SweepSpec, resolve_jobs, run_sweep

from conftest import ACCEPTANCE, make_agent

pytestmark = pytest.mark.acceptance

TESTS = Path(__file__).parent
ALPHAS = (0.2, 0.6, 1.0)
BETAS = (0.1, 0.5, 0.9)


def record(name, passed, detail):
    ACCEPTANCE[name] = (passed, detail)
    assert passed, f"{name}: {detail}"


@pytest.fixture(scope="module")
def desk_sweep():
    spec = SweepSpec(
        alphas=ALPHAS,
        betas=BETAS,
        replications=50,
        base_config=SimConfig(consumption=2, max_term=500),
        master_seed=0,
        jobs=resolve_jobs(None),
    )
    return run_sweep(spec)


def _grid(report):
    return {(c.alpha, c.beta): c.win_rate for c in report.cells}


def _fmt(w):
    return " ".join(f"a={a}:" + "/".join(f"{w[a, b]:.2f}" for b in BETAS) for a in ALPHAS)


def test_1_determinism(tmp_path):
    run_args = ["run", "--max-term", "100", "--seed", "17"]
    sweep_args = ["sweep", "--alphas", "0.2,1.0", "--betas", "0.1,0.9", "--reps", "2",
                  "--master-seed", "7", "--max-term", "50"]
    files = {}
    for tag in ("first", "second"):
        for args, names in ((run_args, ("timeseries.csv", "run.json")), (sweep_args, ("sweep.csv", "sweep.json"))):
            out = tmp_path / tag / args[0]
            assert main([*args, "--out", str(out)]) == 0
            files.setdefault(tag, []).extend((out / n).read_bytes() for n in names)
    same = files["first"] == files["second"]
    record("1 determinism", same, "run and sweep outputs byte-identical" if same else "outputs differ")


def test_2_fig2_complement_ahead():
    wins = 0
    outcomes = []
    for seed in range(20):
        report = run_simulation(SimConfig(alpha=1.0, beta=0.5, consumption=4, max_term=1000, seed=seed))
        wins += report.final_winner == "complement"
        outcomes.append(report.final_winner[0])
    rate = wins / 20
    record("2 fig2 complement ahead", rate >= 0.70,
           f"complement ahead in {wins}/20 runs ({rate:.0%}, need >= 70%) [{''.join(outcomes)}]")


def test_3_beta_trend(desk_sweep):
    w = _grid(desk_sweep)
    inversions = []
    for a in ALPHAS:
        for lo, hi in zip(BETAS, BETAS[1:]):
            if not w[a, lo] > w[a, hi]:
                inversions.append(w[a, hi] - w[a, lo])
    passed = len(inversions) <= 1 and all(x <= 0.05 for x in inversions)
    record("3 beta trend", passed,
           f"{len(inversions)} inversion(s) {[round(x, 2) for x in inversions]} (allowed: one <= 0.05); {_fmt(w)}")


def test_4_alpha_saturation(desk_sweep):
    w = _grid(desk_sweep)
    gaps = [abs(w[1.0, b] - w[0.6, b]) for b in BETAS]
    monotone = w[0.6, 0.1] >= w[0.2, 0.1]
    passed = max(gaps) <= 0.10 and monotone
    record("4 alpha saturation", passed,
           f"max |w(1.0)-w(0.6)| = {max(gaps):.2f} (<= 0.10), "
           f"w(0.6,0.1)={w[0.6, 0.1]:.2f} vs w(0.2,0.1)={w[0.2, 0.1]:.2f}")


def test_5_small_minority_best(desk_sweep):
    w = _grid(desk_sweep)
    best = max(w.values())
    passed = w[1.0, 0.1] >= best - 0.05
    record("5 small minority best", passed, f"w(1.0,0.1)={w[1.0, 0.1]:.2f}, grid max={best:.2f}")


def test_6_distribution_oracles():
    rng = random.Random(2718)
    unreliable = make_agent(0, 0.0, 1.0)
    gross = [harvest_agent(unreliable, 10.0, rng).gross for _ in range(1_000_000)]
    expected = 10 - 2 / math.sqrt(math.pi)
    se = statistics.pstdev(gross) / math.sqrt(len(gross))
    harvest_ok = abs(statistics.fmean(gross) - expected) <= 3 * se

    initiator = make_agent(0, 0.5, 0.5, pr=1.0)
    eligible = [make_agent(1, 0.2, 0.5), make_agent(2, 0.8, 0.5)]
    draws = 100_000
    hits = sum(select_offer_target(initiator, eligible, 3.0, rng) == 2 for _ in range(draws))
    p = 0.512 / 0.520
    select_ok = abs(hits / draws - p) <= 3 * math.sqrt(p * (1 - p) / draws)
    record("6 distribution oracles", harvest_ok and select_ok,
           f"E[gross|r=0]={statistics.fmean(gross):.4f} vs {expected:.4f} (3se={3 * se:.4f}); "
           f"P(best)={hits / draws:.5f} vs {p:.5f}")


def _pytest(*files):
    proc = subprocess.run(
        [sys.executable, "-m", "pytest", "-q", "-p", "no:cacheprovider", *[str(TESTS / f) for f in files]],
        capture_output=True, text=True, cwd=TESTS.parent,
    )
    return proc.returncode == 0, proc.stdout.strip().splitlines()[-1] if proc.stdout.strip() else proc.stderr


def test_7_invariant_suites():
    ok, tail = _pytest("test_core.py", "test_formation.py", "test_economy.py", "test_network.py",
                       "test_engine.py", "test_harness.py")
    record("7 invariant suites", ok, tail)


def test_8_formula_examples():
    ok, tail = _pytest(
        "test_core.py::test_behavior_value_examples",
        "test_core.py::test_preference_vector_examples",
        "test_formation.py::test_gamma_examples",
        "test_formation.py::test_probabilities_examples",
        "test_formation.py::test_group_mean",
        "test_formation.py::test_adjusted_value_examples",
        "test_formation.py::test_accept_examples",
        "test_economy.py::test_share_examples",
        "test_economy.py::test_punishment_examples",
        "test_economy.py::test_field_bounds",
        "test_network.py::test_candidates_examples",
        "test_network.py::test_evaluate_candidate_examples",
        "test_core.py::test_consume_and_cull",
        "test_core.py::test_friend_network_examples",
    )
    record("8 formula examples", ok, tail)

"""Food balance over time for complement vs similar agents (alpha=1, beta=0.5, consumption=4).

Writes one time series per seed and prints who was ahead at the end of each run.

    python scripts/fig2_balance.py --seeds 20 --out out/fig2
"""

import argparse
from pathlib import Path

from coopsim import SimConfig, run_simulation
from coopsim.harness import write_outputs


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--seeds", type=int, default=20)
    parser.add_argument("--max-term", type=int, default=1000)
    parser.add_argument("--out", default="out/fig2")
    args = parser.parse_args()

    ahead = 0
    for seed in range(args.seeds):
        config = SimConfig(alpha=1.0, beta=0.5, consumption=4, max_term=args.max_term, seed=seed)
        report = run_simulation(config)
        write_outputs(report, Path(args.out) / f"seed{seed:03d}")
        last = report.last
        ahead += report.final_winner == "complement"
        print(
            f"seed {seed:3d}  terms {len(report.terms):4d}  winner {report.final_winner:10s}  "
            f"alive c/s {last.alive_complement}/{last.alive_similar}  stop: {report.stop_reason}"
        )
    print(f"complement ahead in {ahead}/{args.seeds} runs")


if __name__ == "__main__":
    main()

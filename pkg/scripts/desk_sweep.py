"""Desk-scale version of the alpha x beta win-rate study, printed as a matrix.

    python scripts/desk_sweep.py                       # 3 x 3 grid, 50 reps, 500 terms
    python scripts/desk_sweep.py --paper --jobs 16     # 5 x 9 grid, 800 reps, 1000 terms
"""

import argparse

from coopsim import SimConfig, SweepSpec, run_sweep
from coopsim.harness import resolve_jobs, write_outputs


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--paper", action="store_true", help="full grid and replication count")
    parser.add_argument("--reps", type=int, default=None)
    parser.add_argument("--master-seed", type=int, default=0)
    parser.add_argument("--jobs", type=int, default=None)
    parser.add_argument("--out", default="out/sweep")
    args = parser.parse_args()

    if args.paper:
        alphas, betas, reps, terms = (0.2, 0.4, 0.6, 0.8, 1.0), tuple(i / 10 for i in range(1, 10)), 800, 1000
    else:
        alphas, betas, reps, terms = (0.2, 0.6, 1.0), (0.1, 0.5, 0.9), 50, 500
    spec = SweepSpec(
        alphas=alphas,
        betas=betas,
        replications=args.reps or reps,
        base_config=SimConfig(consumption=2, max_term=terms),
        master_seed=args.master_seed,
        jobs=resolve_jobs(args.jobs),
    )
    report = run_sweep(spec)
    write_outputs(report, args.out)
    print("alpha \\ beta " + " ".join(f"{b:6.2f}" for b in betas))
    for a in alphas:
        print(f"{a:12.2f} " + " ".join(f"{report.win_rate(a, b):6.2f}" for b in betas))


if __name__ == "__main__":
    main()

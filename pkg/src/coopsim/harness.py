"""Replicated runs over the (alpha, beta) grid and the complement win rate."""

from __future__ import annotations

import csv
import io
import json
import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Any

from coopsim.config import SimConfig
from coopsim.core import Strategy
from coopsim.engine import RunReport, run_simulation

log = logging.getLogger(__name__)

_MASK64 = (1 << 64) - 1

RUN_CSV_HEADER = ("term", "mean_complement", "mean_similar", "alive_complement", "alive_similar")
SWEEP_CSV_HEADER = ("alpha", "beta", "replications", "win_rate", "degenerate_runs")


def splitmix64(x: int) -> int:
    """SplitMix64 finalizer; a bijection on 64-bit integers."""
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


def replication_seed(master_seed: int, alpha_index: int, beta_index: int, replication: int) -> int:
    """Seed for one replication.

    The indices are packed into 16 + 16 + 32 bits, xored with the mixed
    master seed and mixed again. Both steps are bijective, so distinct
    indices under one master seed never share a seed.
    """
    if not (0 <= alpha_index < 1 << 16 and 0 <= beta_index < 1 << 16 and 0 <= replication < 1 << 32):
        raise ValueError("sweep index out of range for seed packing")
    packed = (alpha_index << 48) | (beta_index << 32) | replication
    return splitmix64(packed ^ splitmix64(master_seed & _MASK64))


@dataclass(frozen=True)
class SweepSpec:
    alphas: tuple[float, ...]
    betas: tuple[float, ...]
    replications: int
    base_config: SimConfig = SimConfig()
    master_seed: int = 0
    jobs: int = 1

    def __post_init__(self) -> None:
        object.__setattr__(self, "alphas", tuple(float(a) for a in self.alphas))
        object.__setattr__(self, "betas", tuple(float(b) for b in self.betas))
        if not self.alphas or not self.betas:
            raise ValueError("sweep grid must have at least one alpha and one beta")
        if self.replications < 1:
            raise ValueError(f"replications: must be >= 1, got {self.replications}")
        if self.jobs < 1:
            raise ValueError(f"jobs: must be >= 1, got {self.jobs}")
        for a in self.alphas + self.betas:
            if not 0.0 <= a <= 1.0:
                raise ValueError(f"grid values must lie in [0, 1], got {a}")

    def config_for(self, ai: int, bi: int, rep: int) -> SimConfig:
        return replace(
            self.base_config,
            alpha=self.alphas[ai],
            beta=self.betas[bi],
            seed=replication_seed(self.master_seed, ai, bi, rep),
        )

    def to_dict(self) -> dict[str, Any]:
        base = self.base_config.to_dict()
        for name in ("alpha", "beta", "seed"):
            base.pop(name)
        return {
            "alphas": list(self.alphas),
            "betas": list(self.betas),
            "replications": self.replications,
            "master_seed": self.master_seed,
            "base_config": base,
        }


@dataclass(frozen=True)
class SweepCell:
    alpha: float
    beta: float
    replications: int
    win_rate: float
    degenerate_runs: int

    @property
    def wins(self) -> int:
        return round(self.win_rate * self.replications)


@dataclass(frozen=True)
class SweepReport:
    spec: SweepSpec
    cells: tuple[SweepCell, ...]

    def cell(self, alpha: float, beta: float) -> SweepCell:
        for c in self.cells:
            if c.alpha == alpha and c.beta == beta:
                return c
        raise KeyError((alpha, beta))

    def win_rate(self, alpha: float, beta: float) -> float:
        return self.cell(alpha, beta).win_rate


@dataclass(frozen=True)
class RunOutcome:
    complement_won: bool
    degenerate: bool


def outcome_of(report: RunReport) -> RunOutcome:
    """A win is strictly higher complement mean savings at the last recorded term.

    Runs that stopped early are degenerate; if exactly one class survives it
    takes the win.
    """
    return RunOutcome(report.final_winner == Strategy.COMPLEMENT.value, report.stop_reason is not None)


def _run_one(config: SimConfig) -> RunOutcome:
    return outcome_of(run_simulation(config))


def resolve_jobs(jobs: int | None) -> int:
    if jobs is not None:
        return jobs
    env = os.environ.get("COOPSIM_JOBS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise ValueError(f"COOPSIM_JOBS: expected an integer, got {env!r}") from None
    return 1


def run_sweep(spec: SweepSpec) -> SweepReport:
    """Run every (alpha, beta, replication) and fold results in index order."""
    index = [
        (ai, bi, rep)
        for ai in range(len(spec.alphas))
        for bi in range(len(spec.betas))
        for rep in range(spec.replications)
    ]
    configs = [spec.config_for(*idx) for idx in index]
    log.info("sweep: %d runs on %d worker(s)", len(configs), spec.jobs)
    if spec.jobs == 1:
        outcomes = []
        for idx, config in zip(index, configs):
            outcomes.append(_guarded(idx, config))
    else:
        with ProcessPoolExecutor(max_workers=spec.jobs) as pool:
            futures = [pool.submit(_run_one, c) for c in configs]
            outcomes = []
            for idx, config, fut in zip(index, configs, futures):
                try:
                    outcomes.append(fut.result())
                except Exception as exc:
                    raise _failure(idx, config, exc) from exc
    cells = []
    it = iter(outcomes)
    for alpha in spec.alphas:
        for beta in spec.betas:
            batch = [next(it) for _ in range(spec.replications)]
            wins = sum(o.complement_won for o in batch)
            cells.append(
                SweepCell(
                    alpha=alpha,
                    beta=beta,
                    replications=spec.replications,
                    win_rate=wins / spec.replications,
                    degenerate_runs=sum(o.degenerate for o in batch),
                )
            )
    return SweepReport(spec, tuple(cells))


def _failure(idx: tuple[int, int, int], config: SimConfig, exc: Exception) -> RuntimeError:
    ai, bi, rep = idx
    return RuntimeError(
        f"run failed at alpha={config.alpha} beta={config.beta} (cell {ai},{bi}) "
        f"replication {rep} seed {config.seed}: {exc}"
    )


def _guarded(idx: tuple[int, int, int], config: SimConfig) -> RunOutcome:
    try:
        return _run_one(config)
    except Exception as exc:
        raise _failure(idx, config, exc) from exc


# ---- output files ----

def _csv_text(header: tuple[str, ...], rows: list[list[Any]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _fmt(x: float) -> str:
    return repr(float(x))


def run_csv(report: RunReport) -> str:
    rows = [
        [t.term_index, _fmt(t.mean_complement), _fmt(t.mean_similar), t.alive_complement, t.alive_similar]
        for t in (report.initial, *report.terms)
    ]
    return _csv_text(RUN_CSV_HEADER, rows)


def sweep_csv(report: SweepReport) -> str:
    rows = [
        [_fmt(c.alpha), _fmt(c.beta), c.replications, _fmt(c.win_rate), c.degenerate_runs]
        for c in report.cells
    ]
    return _csv_text(SWEEP_CSV_HEADER, rows)


def parse_sweep_csv(text: str) -> list[SweepCell]:
    reader = csv.reader(io.StringIO(text))
    header = tuple(next(reader))
    if header != SWEEP_CSV_HEADER:
        raise ValueError(f"unexpected sweep CSV header: {','.join(header)}")
    return [
        SweepCell(float(a), float(b), int(reps), float(rate), int(degen))
        for a, b, reps, rate, degen in reader
    ]


def _json_text(doc: dict[str, Any]) -> str:
    return json.dumps(doc, indent=2, sort_keys=True, allow_nan=False) + "\n"


def _write(path: Path, text: str) -> Path:
    try:
        path.write_text(text)
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror}") from exc
    return path


def write_outputs(report: RunReport | SweepReport, directory: str | Path) -> list[Path]:
    """Write CSV plus a JSON provenance document; returns the paths written.

    Run reports produce ``timeseries.csv`` and ``run.json``; sweep reports
    produce ``sweep.csv`` and ``sweep.json``.
    """
    directory = Path(directory)
    if isinstance(report, SweepReport):
        if not report.cells:
            raise ValueError("refusing to write an empty sweep")
        csv_name, json_name = "sweep.csv", "sweep.json"
        csv_body = sweep_csv(report)
        doc = {
            "spec": report.spec.to_dict(),
            "cells": [
                {
                    "alpha": c.alpha,
                    "beta": c.beta,
                    "replications": c.replications,
                    "win_rate": c.win_rate,
                    "degenerate_runs": c.degenerate_runs,
                }
                for c in report.cells
            ],
        }
    else:
        csv_name, json_name = "timeseries.csv", "run.json"
        csv_body = run_csv(report)
        doc = report.to_dict()
    try:
        directory.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise OSError(f"cannot create output directory {directory}: {exc.strerror}") from exc
    return [_write(directory / csv_name, csv_body), _write(directory / json_name, _json_text(doc))]

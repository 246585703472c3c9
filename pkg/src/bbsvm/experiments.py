"""Experiment harness: multi-run averaging over shuffled streams, epsilon
sweeps with CSV output, and a single-pass perceptron baseline."""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import IO, Sequence

import numpy as np

from .data import Dataset, TrainingExample, shuffled
from .model import Model, ModelParams

__all__ = [
    "CSV_HEADER",
    "ExperimentReport",
    "RunResult",
    "SweepRow",
    "epsilon_sweep",
    "perceptron_stream",
    "run_experiment",
    "write_csv",
]

CSV_HEADER = (
    "epsilon,L,runs,mean_accuracy,std_accuracy,"
    "mean_train_seconds,mean_balls,mean_core_points"
)


@dataclass(frozen=True)
class RunResult:
    seed: int
    accuracy: float
    train_seconds: float
    ball_count: int
    core_point_total: int


@dataclass(eq=False)
class ExperimentReport:
    per_run: list[RunResult]
    mean_accuracy: float
    accuracy_std: float
    mean_time: float
    mean_balls: float
    mean_core_points: float

    @classmethod
    def from_runs(cls, runs: Sequence[RunResult]) -> "ExperimentReport":
        # Sort by seed so aggregation is independent of completion order.
        ordered = sorted(runs, key=lambda r: r.seed)
        acc = np.array([r.accuracy for r in ordered])
        return cls(
            per_run=list(ordered),
            mean_accuracy=float(acc.mean()),
            accuracy_std=float(acc.std()),
            mean_time=float(np.mean([r.train_seconds for r in ordered])),
            mean_balls=float(np.mean([r.ball_count for r in ordered])),
            mean_core_points=float(np.mean([r.core_point_total for r in ordered])),
        )


def run_experiment(
    train: Dataset,
    test: Dataset,
    params: ModelParams,
    runs: int,
    base_seed: int = 0,
) -> ExperimentReport:
    """Train ``runs`` models on shuffled copies of the stream and average.

    Run k trains on ``shuffled(train, base_seed + k)`` and is scored on the
    test set in its fixed order.  Timing covers stream consumption through
    the final buffer flush only (shuffling and parsing are excluded).
    """
    if not train.examples or not test.examples:
        raise ValueError("run_experiment requires nonempty train and test sets")
    if runs < 1:
        raise ValueError("runs must be at least 1")
    test_x = [ex.x for ex in test.examples]
    test_y = np.array([ex.y for ex in test.examples])
    results = []
    for k in range(runs):
        seed = base_seed + k
        order = shuffled(train, seed)
        model = Model(params)
        start = time.perf_counter()
        try:
            model.train_stream(iter(order))
        except ValueError as err:
            raise ValueError(f"run {k} (seed {seed}): {err}") from err
        elapsed = time.perf_counter() - start
        accuracy = float((model.predict(test_x) == test_y).mean())
        results.append(
            RunResult(
                seed=seed,
                accuracy=accuracy,
                train_seconds=elapsed,
                ball_count=len(model.cover.cores),
                core_point_total=sum(len(cs.members) for cs in model.cover.cores),
            )
        )
    return ExperimentReport.from_runs(results)


@dataclass(frozen=True)
class SweepRow:
    epsilon: float
    lookahead: int
    runs: int
    mean_accuracy: float
    std_accuracy: float
    mean_train_seconds: float
    mean_balls: float
    mean_core_points: float

    def as_csv(self) -> str:
        return ",".join(
            [
                repr(float(self.epsilon)),
                str(self.lookahead),
                str(self.runs),
                repr(float(self.mean_accuracy)),
                repr(float(self.std_accuracy)),
                repr(float(self.mean_train_seconds)),
                repr(float(self.mean_balls)),
                repr(float(self.mean_core_points)),
            ]
        )


def epsilon_sweep(
    train: Dataset,
    test: Dataset,
    params: ModelParams,
    epsilons: Sequence[float],
    runs: int,
    lookaheads: Sequence[int] = (0, 10),
    base_seed: int = 0,
) -> list[SweepRow]:
    """One ``run_experiment`` per (epsilon, lookahead) pair.

    Rows come back sorted by epsilon ascending, then lookahead.  ``delta``
    is re-derived as epsilon/2 for each setting.
    """
    if not epsilons:
        raise ValueError("epsilons must be nonempty")
    if len(set(epsilons)) != len(epsilons):
        raise ValueError("duplicate epsilon values")
    rows = []
    for eps in sorted(epsilons):
        for L in sorted(lookaheads):
            run_params = ModelParams(
                dim=params.dim, epsilon=eps, C=params.C, lookahead=L
            )
            report = run_experiment(train, test, run_params, runs, base_seed)
            rows.append(
                SweepRow(
                    epsilon=eps,
                    lookahead=L,
                    runs=runs,
                    mean_accuracy=report.mean_accuracy,
                    std_accuracy=report.accuracy_std,
                    mean_train_seconds=report.mean_time,
                    mean_balls=report.mean_balls,
                    mean_core_points=report.mean_core_points,
                )
            )
    return rows


def write_csv(rows: Sequence[SweepRow], stream: IO[str]) -> None:
    stream.write(CSV_HEADER + "\n")
    for row in rows:
        stream.write(row.as_csv() + "\n")


def _unit_bias(x, dim: int) -> np.ndarray:
    out = np.zeros(dim + 1)
    dense = x.to_dense(dim)
    norm = np.linalg.norm(dense)
    if norm > 0.0:
        out[:-1] = dense / norm
    out[-1] = 1.0
    return out


def perceptron_stream(
    train: Sequence[TrainingExample], test: Dataset, dim: int | None = None
) -> float:
    """Single-pass mistake-driven perceptron baseline; returns test accuracy.

    Inputs are unit-normalized with a constant-1 bias coordinate appended.
    A prediction of exactly zero counts as a mistake during training and is
    reported as +1 at test time.
    """
    if not test.examples:
        raise ValueError("perceptron_stream requires a nonempty test set")
    if dim is None:
        dim = test.dim
        for ex in train:
            if ex.x.indices.size:
                dim = max(dim, int(ex.x.indices[-1]))
    w = np.zeros(dim + 1)
    for ex in train:
        xt = _unit_bias(ex.x, dim)
        if ex.y * float(w @ xt) <= 0.0:
            w += ex.y * xt
    correct = 0
    for ex in test.examples:
        value = float(w @ _unit_bias(ex.x, dim))
        pred = 1 if value > 0.0 else (-1 if value < 0.0 else 1)
        if pred == ex.y:
            correct += 1
    return correct / len(test.examples)

"""Streaming linear SVM over a blurred ball cover.

Training maps each labeled example onto a constant-norm sphere in an
augmented space: the unit-normalized input, a bias coordinate, and (for a
finite soft-margin penalty C) a per-point slack axis of weight 1/sqrt(C).
Every augmented training point then has norm kappa = sqrt(2 + 1/C), and the
maximum-margin separator coincides with the center of the stream's minimum
enclosing ball.  The cover maintains several approximate balls; each center
acts as a linear classifier and queries are labeled by comparing the summed
signed distances (scores) of the query and its mirror image across the
balls that contain them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .cover import BlurredBallCover, Lookahead
from .data import SparseVector, TrainingExample
from .meb import AugPoint, Ball, center_dot, distance2

__all__ = [
    "Model",
    "ModelParams",
    "feature_map",
    "map_test_point",
    "score",
    "support",
]

TEST_POINT_ID = -1


@dataclass
class ModelParams:
    """Training configuration; ``delta`` defaults to ``epsilon / 2``."""

    dim: int
    epsilon: float = 0.001
    C: float = math.inf
    lookahead: int = 10
    delta: float | None = None

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dim must be positive")
        if self.epsilon <= 0.0:
            raise ValueError("epsilon must be positive")
        if not self.C > 0.0:
            raise ValueError("C must be positive (or inf)")
        if self.lookahead < 0:
            raise ValueError("lookahead must be nonnegative")
        if self.delta is None:
            self.delta = self.epsilon / 2.0
        if self.delta <= 0.0:
            raise ValueError("delta must be positive")

    @property
    def slack_weight(self) -> float:
        return 0.0 if math.isinf(self.C) else 1.0 / math.sqrt(self.C)

    @property
    def kappa(self) -> float:
        """Constant norm of every mapped training point: sqrt(2 + 1/C)."""
        inv_c = 0.0 if math.isinf(self.C) else 1.0 / self.C
        return math.sqrt(2.0 + inv_c)


def feature_map(
    x: SparseVector, y: int, params: ModelParams, point_id: int
) -> AugPoint:
    """Map a labeled input to its augmented point ``[y*x_hat ; y]`` + slack.

    The raw input is normalized to unit Euclidean norm first, so the
    resulting augmented norm is exactly kappa.
    """
    if y not in (-1, 1):
        raise ValueError(f"label must be -1 or +1, got {y!r}")
    norm = x.norm()
    if norm == 0.0:
        raise ValueError("cannot normalize a zero input vector")
    explicit = np.zeros(params.dim + 1)
    explicit[:-1] = x.to_dense(params.dim) * (y * (1.0 / norm))
    explicit[-1] = float(y)
    return AugPoint(explicit, params.slack_weight, point_id, label=y)


def map_test_point(x: SparseVector, params: ModelParams) -> AugPoint:
    """Map an unlabeled query to ``[x_hat ; 1]`` with no slack component."""
    norm = x.norm()
    if norm == 0.0:
        raise ValueError("cannot normalize a zero input vector")
    explicit = np.zeros(params.dim + 1)
    explicit[:-1] = x.to_dense(params.dim) * (1.0 / norm)
    explicit[-1] = 1.0
    return AugPoint(explicit, 0.0, TEST_POINT_ID)


def support(cover: BlurredBallCover, p: AugPoint) -> list[Ball]:
    """Balls of the cover that contain ``p`` (closed, unexpanded radii)."""
    return [
        cs.ball
        for cs in cover.cores
        if distance2(cs.ball.center, p) <= cs.ball.radius**2
    ]


def score(cover: BlurredBallCover, p: AugPoint) -> float:
    """Sum of ``p``'s signed distances to the separators of its support.

    Each supporting ball contributes ``p . c / |c|``; a supporting ball with
    a zero-norm center has no separator and raises.
    """
    total = 0.0
    for ball in support(cover, p):
        norm2 = ball.center.norm2()
        if norm2 == 0.0:
            raise ValueError("supporting ball has zero-norm center")
        total += center_dot(ball.center, p) / math.sqrt(norm2)
    return total


@dataclass(eq=False)
class Model:
    """Streaming SVM state: parameters, ball cover, and lookahead buffer."""

    params: ModelParams
    cover: BlurredBallCover = None  # type: ignore[assignment]
    buffer: Lookahead = None  # type: ignore[assignment]
    next_id: int = 0

    def __post_init__(self):
        if self.cover is None:
            self.cover = BlurredBallCover(self.params.epsilon, self.params.delta)
        if self.buffer is None:
            self.buffer = Lookahead(self.params.lookahead)

    def train_stream(self, examples: Iterable[TrainingExample]) -> "Model":
        """Consume a training stream in one pass.

        Each example is mapped with a fresh id and offered to the cover;
        a final partial-buffer flush runs one last merge check.
        """
        for position, ex in enumerate(examples):
            try:
                p = feature_map(ex.x, ex.y, self.params, self.next_id)
            except ValueError as err:
                raise ValueError(f"training example {position}: {err}") from err
            self.next_id += 1
            self.cover.offer(self.buffer, p)
        self.cover.flush(self.buffer)
        return self

    def predict(self, xs: Sequence[SparseVector]) -> np.ndarray:
        """Labels for a batch of queries (vector of -1/+1 ints).

        For each query p the decision is sign(S(p) - S(-p)) where S sums
        the signed distances over the balls containing its argument; exact
        ties fall back to the sign of the summed distances over all balls,
        and +1 if that is still zero.
        """
        arrays = self.cover.query_arrays()
        if arrays is None:
            raise ValueError("model has no balls; train before classifying")
        centers, center_slack2, radii = arrays
        P = np.stack([map_test_point(x, self.params).explicit for x in xs])

        cen2 = np.einsum("ij,ij->i", centers, centers)
        norms2 = cen2 + center_slack2
        pn2 = np.einsum("ij,ij->i", P, P)
        dots = P @ centers.T  # (queries, balls)

        r2 = radii * radii
        base = pn2[:, None] + (cen2 + center_slack2)[None, :]
        in_pos = base - 2.0 * dots <= r2[None, :]
        in_neg = base + 2.0 * dots <= r2[None, :]

        bad = norms2 == 0.0
        if bad.any():
            if (in_pos[:, bad] | in_neg[:, bad]).any():
                raise ValueError("supporting ball has zero-norm center")
            signed = dots / np.sqrt(np.where(bad, 1.0, norms2))[None, :]
            signed[:, bad] = 0.0  # no separator: excluded from tie fallback too
        else:
            signed = dots / np.sqrt(norms2)[None, :]

        # S(p) - S(-p) = sum over Sup(p) of p.c_hat + sum over Sup(-p) of p.c_hat
        margin = (in_pos * signed).sum(axis=1) + (in_neg * signed).sum(axis=1)
        labels = np.where(margin > 0.0, 1, -1)
        tied = margin == 0.0
        if tied.any():
            fallback = signed[tied].sum(axis=1)
            labels[tied] = np.where(fallback < 0.0, -1, 1)
        return labels

    def classify(self, x: SparseVector) -> int:
        return int(self.predict([x])[0])

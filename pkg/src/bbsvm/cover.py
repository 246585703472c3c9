"""Streaming blurred ball cover.

The cover retains a small list of (core set, ball) pairs.  Incoming points
are buffered; once the lookahead buffer fills, the buffer is tested against
the (1+eps)-expansions of the retained balls.  If any buffered point escapes
them all, a new ball is computed as the approximate minimum enclosing ball
of the buffer together with every retained core point, and older balls with
radius below eps/4 of the new radius are discarded.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .meb import AugPoint, Ball, CoreSet, approx_meb

__all__ = ["BlurredBallCover", "Lookahead"]


@dataclass(eq=False)
class Lookahead:
    """Pending-point buffer; capacity L = 0 means per-point processing."""

    capacity: int
    pending: list[AugPoint] = field(default_factory=list)

    @property
    def effective_capacity(self) -> int:
        return max(self.capacity, 1)


class BlurredBallCover:
    """Retained (core set, ball) pairs plus the update rules that maintain them."""

    def __init__(self, epsilon: float, delta: float | None = None):
        if epsilon <= 0.0:
            raise ValueError("epsilon must be positive")
        self.epsilon = epsilon
        self.delta = epsilon / 2.0 if delta is None else delta
        if self.delta <= 0.0:
            raise ValueError("delta must be positive")
        self.cores: list[CoreSet] = []
        self.points_seen = 0
        self._refresh_cache()

    @property
    def balls(self) -> list[Ball]:
        return [cs.ball for cs in self.cores]

    def escapes(self, p: AugPoint) -> bool:
        """True iff ``p`` lies outside every (1+eps)-expanded retained ball.

        Vacuously true on an empty cover; boundary points count as inside.
        """
        return bool(self._escape_mask([p])[0])

    def offer(self, buffer: Lookahead, p: AugPoint) -> bool:
        """Buffer ``p``; process the buffer when it reaches capacity.

        Returns whether a merge update was performed.  Whenever the buffer
        is processed it is cleared afterward, merge or not.
        """
        buffer.pending.append(p)
        self.points_seen += 1
        if len(buffer.pending) < buffer.effective_capacity:
            return False
        return self._process(buffer)

    def flush(self, buffer: Lookahead) -> bool:
        """Run one merge check on a partially filled buffer (end of stream)."""
        if not buffer.pending:
            return False
        return self._process(buffer)

    def _process(self, buffer: Lookahead) -> bool:
        merged = False
        if self._escape_mask(buffer.pending).any():
            self.merge_update(list(buffer.pending))
            merged = True
        buffer.pending.clear()
        return merged

    def merge_update(self, escaped_buffer: list[AugPoint]) -> None:
        """Fold a buffer into the cover (call only when some point escapes).

        Computes the approximate MEB of the buffer plus all retained core
        points, appends the resulting pair, then discards every older pair
        whose ball radius falls below eps/4 of the new radius.
        """
        by_id: dict[int, AugPoint] = {}
        for p in escaped_buffer:
            by_id.setdefault(p.id, p)
        for p in self.all_core_points():
            by_id.setdefault(p.id, p)
        ball, core = approx_meb(list(by_id.values()), self.delta)
        self.cores.append(core)
        cut = (self.epsilon / 4.0) * ball.radius
        self.cores = [cs for cs in self.cores if cs.ball.radius >= cut or cs is core]
        self._refresh_cache()

    def all_core_points(self) -> list[AugPoint]:
        """All retained core-set members, deduplicated by id, in cover order."""
        by_id: dict[int, AugPoint] = {}
        for cs in self.cores:
            for p in cs.members:
                by_id.setdefault(p.id, p)
        return list(by_id.values())

    # -- cached query arrays ------------------------------------------------

    def _refresh_cache(self) -> None:
        if not self.cores:
            self._centers = None
            self._center_slack2 = None
            self._radii = None
            self._limits2 = None
            return
        self._centers = np.stack([cs.ball.center.explicit for cs in self.cores])
        self._center_slack2 = np.array(
            [cs.ball.center.slack_norm2() for cs in self.cores]
        )
        self._radii = np.array([cs.ball.radius for cs in self.cores])
        limits = (1.0 + self.epsilon) * self._radii
        self._limits2 = limits * limits

    def query_arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray] | None:
        """(centers, center slack norms squared, radii) or None when empty."""
        if self._centers is None:
            return None
        return self._centers, self._center_slack2, self._radii

    def _escape_mask(self, pts: list[AugPoint]) -> np.ndarray:
        if self._centers is None:
            return np.ones(len(pts), dtype=bool)
        P = np.stack([p.explicit for p in pts])
        d2 = ((P[:, None, :] - self._centers[None, :, :]) ** 2).sum(axis=2)
        d2 += self._center_slack2[None, :]
        for t, p in enumerate(pts):
            if p.slack_weight != 0.0:
                d2[t] += p.slack_weight * p.slack_weight
                for b, cs in enumerate(self.cores):
                    coeff = cs.ball.center.slack_coeffs.get(p.id)
                    if coeff:
                        d2[t, b] -= 2.0 * coeff * p.slack_weight
        return (d2 > self._limits2[None, :]).all(axis=1)

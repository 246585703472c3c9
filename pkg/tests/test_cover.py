import math

import numpy as np
import pytest

from bbsvm.cover import BlurredBallCover, Lookahead
from bbsvm.meb import AugPoint, Ball, Center, CoreSet, approx_meb, distance2


def raw(vec, pid):
    return AugPoint(np.asarray(vec, dtype=float), 0.0, pid)


def ring(center, radius, count, start_id):
    """Points on a circle, ids ascending."""
    angles = np.linspace(0.0, 2.0 * np.pi, count, endpoint=False)
    return [
        raw([center[0] + radius * np.cos(a), center[1] + radius * np.sin(a)], start_id + i)
        for i, a in enumerate(angles)
    ]


class CheckingCover(BlurredBallCover):
    """Asserts the post-merge invariants after every update."""

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self.merge_count = 0

    def merge_update(self, buf):
        super().merge_update(buf)
        self.merge_count += 1
        newest = self.cores[-1].ball
        cut = (self.epsilon / 4.0) * newest.radius
        assert all(cs.ball.radius >= cut for cs in self.cores)
        assert not self._escape_mask(buf).any()


# --------------------------------------------------------------------- escapes


def test_escapes_empty_cover():
    cover = BlurredBallCover(0.1)
    assert cover.escapes(raw([0.0, 0.0], 0))


def test_escapes_inside_expansion():
    cover = BlurredBallCover(0.1)
    cover.merge_update([raw([1.0, 0.0], 0), raw([3.0, 0.0], 1)])  # ball ~ ((2,0), 1)
    assert not cover.escapes(raw([3.05, 0.0], 2))
    assert cover.escapes(raw([3.2, 0.0], 3))


def test_escapes_boundary_counts_as_inside():
    cover = BlurredBallCover(0.5)
    ball = Ball(Center(np.array([0.0, 0.0])), 1.0)
    cover.cores = [CoreSet([raw([0.0, 0.0], 0)], ball)]
    cover._refresh_cache()
    # distance exactly (1 + eps) * r = 1.5
    assert not cover.escapes(raw([1.5, 0.0], 1))
    assert cover.escapes(raw([1.5000001, 0.0], 2))


# ----------------------------------------------------------------------- offer


def test_offer_buffers_below_capacity():
    cover = BlurredBallCover(0.1)
    buf = Lookahead(10)
    for i in range(9):
        assert cover.offer(buf, raw([float(i), 0.0], i)) is False
    assert len(buf.pending) == 9
    assert not cover.cores
    assert cover.points_seen == 9


def test_offer_lookahead_zero_processes_immediately():
    cover = BlurredBallCover(0.1)
    buf = Lookahead(0)
    assert buf.effective_capacity == 1
    assert cover.offer(buf, raw([2.0, 3.0], 0)) is True
    assert len(cover.cores) == 1
    assert cover.cores[0].ball.radius == 0.0
    assert np.array_equal(cover.cores[0].ball.center.explicit, [2.0, 3.0])
    assert buf.pending == []


def test_offer_all_inside_clears_without_merge():
    cover = BlurredBallCover(0.1)
    cover.merge_update(ring((0.0, 0.0), 1.0, 8, 0))
    balls_before = cover.balls
    buf = Lookahead(3)
    merged = [cover.offer(buf, raw([0.01 * i, 0.0], 100 + i)) for i in range(3)]
    assert merged == [False, False, False]
    assert buf.pending == []
    assert cover.balls == balls_before


def test_offer_capacity_reached_with_escape_merges():
    cover = BlurredBallCover(0.1)
    buf = Lookahead(2)
    assert cover.offer(buf, raw([0.0, 0.0], 0)) is False
    assert cover.offer(buf, raw([1.0, 0.0], 1)) is True
    assert len(cover.cores) == 1
    assert buf.pending == []


# ---------------------------------------------------------------- merge_update


def test_merge_empty_cover_single_point():
    cover = BlurredBallCover(0.1)
    cover.merge_update([raw([1.0, 1.0], 0)])
    assert len(cover.cores) == 1
    assert cover.cores[0].ball.radius == 0.0


def test_merge_discards_tiny_old_ball():
    cover = BlurredBallCover(0.1)
    cover.merge_update([raw([0.0, 0.0], 0)])  # radius-0 ball
    assert len(cover.cores) == 1
    cover.merge_update([raw([10.0, 0.0], 1)])
    # new ball ~ MEB{p, q} with radius ~5; 0 < eps/4 * 5 so the old one goes
    assert len(cover.cores) == 1
    ball = cover.cores[0].ball
    assert math.isclose(ball.radius, 5.0, rel_tol=0.06)
    assert {p.id for p in cover.cores[0].members} == {0, 1}


def test_merge_retains_old_ball_above_cut():
    # old cluster of radius 0.5; new merged ball radius <= 4 with eps = 0.1:
    # cut = 0.025 * r_new <= 0.1 < 0.5, so the old ball must survive.
    cover = BlurredBallCover(0.1)
    cover.merge_update(ring((0.0, 0.0), 0.5, 10, 0))
    assert len(cover.cores) == 1
    r_old = cover.cores[0].ball.radius
    assert 0.45 <= r_old <= 0.55
    cover.merge_update(ring((7.0, 0.0), 0.5, 10, 100))
    assert len(cover.cores) == 2
    r_new = cover.cores[-1].ball.radius
    assert r_old >= (cover.epsilon / 4.0) * r_new
    assert r_new <= 4.2


def test_merge_input_includes_retained_core_points():
    cover = BlurredBallCover(0.1)
    cover.merge_update([raw([0.0, 0.0], 0), raw([2.0, 0.0], 1)])
    cover.merge_update([raw([4.0, 0.0], 2)])
    # the new ball covers old core members, not just the buffer
    newest = cover.cores[-1].ball
    for pid, vec in [(0, [0.0, 0.0]), (1, [2.0, 0.0]), (2, [4.0, 0.0])]:
        assert distance2(newest.center, raw(vec, pid)) <= newest.radius**2 * (1 + 1e-9)


# ------------------------------------------------------------- all_core_points


def test_all_core_points_empty_and_simple():
    cover = BlurredBallCover(0.1)
    assert cover.all_core_points() == []
    pts = [raw([0.0, 0.0], 0), raw([1.0, 0.0], 1), raw([0.0, 1.0], 2)]
    ball, core = approx_meb(pts, 0.05)
    cover.cores = [core]
    assert {p.id for p in cover.all_core_points()} == {p.id for p in core.members}


def test_all_core_points_dedups_shared_members():
    cover = BlurredBallCover(0.1)
    shared = raw([0.0, 0.0], 7)
    ball1, _ = approx_meb([shared], 0.05)
    ball2, _ = approx_meb([shared, raw([1.0, 0.0], 8)], 0.05)
    cover.cores = [
        CoreSet([shared], ball1),
        CoreSet([shared, raw([1.0, 0.0], 8)], ball2),
    ]
    ids = [p.id for p in cover.all_core_points()]
    assert ids == [7, 8]


# ------------------------------------------------------------------ invariants


def test_invariants_hold_on_random_streams():
    rng = np.random.default_rng(13)
    for trial in range(5):
        eps = [0.3, 0.15, 0.08][trial % 3]
        cover = CheckingCover(eps)
        buf = Lookahead([0, 3, 10][trial % 3])
        for i, vec in enumerate(rng.normal(size=(600, 4))):
            cover.offer(buf, raw(vec, i))
            assert len(buf.pending) <= buf.effective_capacity
        cover.flush(buf)
        assert cover.merge_count > 0
        assert cover.points_seen == 600


def test_cover_determinism_bit_for_bit():
    rng = np.random.default_rng(17)
    stream = [raw(v, i) for i, v in enumerate(rng.normal(size=(500, 3)))]

    def build():
        cover = BlurredBallCover(0.1)
        buf = Lookahead(5)
        for p in stream:
            cover.offer(buf, p)
        cover.flush(buf)
        return [
            (cs.ball.radius, cs.ball.center.explicit.tobytes(), tuple(m.id for m in cs.members))
            for cs in cover.cores
        ]

    assert build() == build()


def test_invalid_parameters():
    with pytest.raises(ValueError, match="epsilon"):
        BlurredBallCover(0.0)
    with pytest.raises(ValueError, match="delta"):
        BlurredBallCover(0.1, delta=-1.0)

from fractions import Fraction

import numpy as np
import pytest

from bakerlab.classical import (
    CANTOR_DIMENSION,
    IntervalCover,
    TorusPoint,
    box_dimension,
    closed_step,
    decode,
    encode,
    escape_profile,
    escape_time,
    inverse_open_step,
    open_step,
    shift_consistency,
    survivor_counts,
    trapped_cover,
)

F = Fraction


def fpoint(q, p):
    return TorusPoint(F(q), F(p))


class TestClosedStep:
    def test_origin_fixed(self):
        assert closed_step(TorusPoint(0, 0)) == TorusPoint(0, 0)

    def test_first_branch(self):
        assert closed_step(fpoint("1/9", 0)) == fpoint("1/3", 0)

    def test_middle_branch_fixed_point(self):
        assert closed_step(fpoint("1/2", "1/2")) == fpoint("1/2", "1/2")

    def test_bijection_on_ternary_grid(self):
        # area preservation, sampled: distinct grid points have distinct images
        d = 5
        pts = [
            fpoint(F(i, 3**d), F(j, 3**d))
            for i in range(3**d)
            for j in range(3**d)
        ]
        assert len(pts) >= 10**4
        images = {(y.q, y.p) for y in map(closed_step, pts)}
        assert len(images) == len(pts)


class TestOpenStep:
    def test_hole_escapes(self):
        assert open_step(TorusPoint(0.5, 0.9)) is None

    def test_origin_fixed(self):
        assert open_step(TorusPoint(0, 0)) == TorusPoint(0, 0)

    def test_last_branch(self):
        assert open_step(fpoint("8/9", "1/3")) == fpoint("2/3", "7/9")

    def test_matches_closed_outside_hole(self):
        rng = np.random.default_rng(7)
        for _ in range(200):
            q, p = rng.random(2)
            if 1 / 3 <= q < 2 / 3:
                continue
            x = TorusPoint(q, p)
            assert open_step(x) == closed_step(x)


class TestInverseOpenStep:
    def test_origin_fixed(self):
        assert inverse_open_step(TorusPoint(0, 0)) == TorusPoint(0, 0)

    def test_inverts_forward_example(self):
        assert inverse_open_step(fpoint("2/3", "7/9")) == fpoint("8/9", "1/3")

    def test_middle_momentum_has_no_preimage(self):
        assert inverse_open_step(TorusPoint(0.1, 0.5)) is None

    def test_roundtrip_exact_on_rationals(self):
        rng = np.random.default_rng(11)
        for _ in range(500):
            q = F(int(rng.integers(0, 3**8)), 3**8)
            p = F(int(rng.integers(0, 3**8)), 3**8)
            if F(1, 3) <= q < F(2, 3):
                continue
            x = TorusPoint(q, p)
            assert inverse_open_step(open_step(x)) == x

    def test_roundtrip_float(self):
        rng = np.random.default_rng(13)
        for _ in range(500):
            q, p = rng.random(2)
            if 1 / 3 <= q < 2 / 3:
                continue
            x = TorusPoint(q, p)
            y = inverse_open_step(open_step(x))
            assert abs(y.q - x.q) <= 1e-12 and abs(y.p - x.p) <= 1e-12


class TestEncode:
    def test_one_third(self):
        w = encode(TorusPoint(1 / 3, 0.0), 2)
        assert w.forward == (1, 0)
        assert w.backward == (0, 0)

    def test_eight_ninths(self):
        w = encode(TorusPoint(2 / 3 + 2 / 9, 0.0), 2)
        assert w.forward == (2, 2)

    def test_one_half_depth3(self):
        w = encode(TorusPoint(0.5, 0.5), 3)
        assert w.forward == (1, 1, 1)
        assert w.backward == (1, 1, 1)

    def test_depth_validation(self):
        with pytest.raises(ValueError):
            encode(TorusPoint(0, 0), 0)

    def test_decode_roundtrip(self):
        rng = np.random.default_rng(3)
        for depth in (1, 4, 8):
            for _ in range(100):
                x = TorusPoint(rng.random(), rng.random())
                y = decode(encode(x, depth))
                assert abs(y.q - x.q) < F(1, 3**depth)
                assert abs(y.p - x.p) < F(1, 3**depth)


class TestShiftConsistency:
    @pytest.mark.parametrize(
        "q,p",
        [(F(1, 9), F(0)), (F(1, 2), F(1, 2)), (F(5, 9), F(1, 3))],
    )
    def test_examples(self, q, p):
        assert shift_consistency(TorusPoint(q, p), 3)

    def test_random_rational_grid(self):
        rng = np.random.default_rng(5)
        for _ in range(300):
            x = fpoint(F(int(rng.integers(0, 3**7)), 3**7), F(int(rng.integers(0, 3**7)), 3**7))
            assert shift_consistency(x, 5)


class TestEscapeTime:
    def test_starts_in_hole(self):
        r = escape_time(TorusPoint(0.5, 0.5), 0)
        assert r.escaped and r.time == 0

    def test_fixed_point_survives(self):
        r = escape_time(TorusPoint(0, 0), 100)
        assert not r.escaped

    def test_second_digit_escape(self):
        r = escape_time(fpoint(F(1, 9) + F(1, 27), 0), 10)
        assert r.escaped and r.time == 1

    def test_time_bounded_by_tmax(self):
        # q = 0.0001 ternary escapes at t=3, invisible at tmax=2
        q = F(1, 81)
        assert not escape_time(fpoint(q, 0), 2).escaped
        r = escape_time(fpoint(q, 0), 3)
        assert r.escaped and r.time == 3


class TestTrappedCover:
    def test_depth0(self):
        c = trapped_cover(0)
        assert c.lefts == (F(0),) and c.width == 1

    def test_depth1(self):
        assert trapped_cover(1).lefts == (F(0), F(2, 3))

    def test_depth2(self):
        assert trapped_cover(2).lefts == (F(0), F(2, 9), F(6, 9), F(8, 9))

    @pytest.mark.parametrize("depth", [0, 1, 3, 6])
    def test_recursion_and_count(self, depth):
        cur = trapped_cover(depth)
        nxt = trapped_cover(depth + 1)
        assert len(cur.lefts) == 2**depth
        w = F(1, 3 ** (depth + 1))
        expect = {a for left in cur.lefts for a in (left, left + 2 * w)}
        assert set(nxt.lefts) == expect


class TestBoxDimension:
    def test_middle_third_exact(self):
        est = box_dimension(trapped_cover(10))
        assert abs(est.value - CANTOR_DIMENSION) < 1e-9
        assert est.residual < 1e-12
        assert len(est.scales) == 10

    def test_full_cover_dimension_one(self):
        depth = 6
        cover = IntervalCover(depth, tuple(F(i, 3**depth) for i in range(3**depth)))
        assert abs(box_dimension(cover).value - 1.0) < 1e-12

    def test_single_interval_dimension_zero(self):
        cover = IntervalCover(6, (F(0),))
        assert abs(box_dimension(cover).value) < 1e-12

    def test_rejects_single_scale(self):
        with pytest.raises(ValueError):
            box_dimension(IntervalCover(1, (F(0), F(2, 3))))


class TestEscapeStatistics:
    def test_exact_survivor_fractions(self):
        depth = 8
        counts = survivor_counts(depth, depth)
        for t, n in enumerate(counts):
            assert n * 3**t == 2**t * 3**depth

    def test_profile_decay(self):
        rows = escape_profile(30000, 8)
        assert rows[0][2] == 1.0
        for t, _, frac in rows[1:]:
            assert abs(frac - (2 / 3) ** t) < 0.02


def test_torus_point_validation():
    with pytest.raises(ValueError):
        TorusPoint(1.0, 0.0)
    with pytest.raises(ValueError):
        TorusPoint(0.0, -0.1)

import math

import numpy as np
import pytest

from neumannkit import (Annulus, Ball, Circle, Configuration,
                        ConfigurationError, CylPoint, Disk, DomainError,
                        Scheme, cartesian_to_cyl, cyl_to_cartesian,
                        parse_domain, realize, sample_random_angles,
                        symmetrize)

TWO_PI = 2 * math.pi


def two_circle_disk(m=3, scheme=Scheme.EQUAL):
    return Configuration(
        Disk(), (Circle(0.3, (), 1.0), Circle(0.6, (), -1.0)),
        tuple(TWO_PI * j / m for j in range(m)), scheme)


class TestCylCoordinates:
    def test_examples(self):
        np.testing.assert_allclose(
            cyl_to_cartesian(CylPoint(1.0, 0.0), 2), [1.0, 0.0], atol=1e-15)
        np.testing.assert_allclose(
            cyl_to_cartesian(CylPoint(1.0, math.pi / 2, (0.3,)), 3),
            [0.0, 1.0, 0.3], atol=1e-15)
        np.testing.assert_allclose(
            cyl_to_cartesian(CylPoint(0.5, math.pi), 2), [-0.5, 0.0], atol=1e-15)

    def test_round_trip(self):
        p = CylPoint(0.7, 2.3, (0.1, -0.2))
        q = cartesian_to_cyl(cyl_to_cartesian(p, 4))
        assert q.r == pytest.approx(p.r, rel=1e-15)
        assert q.theta == pytest.approx(p.theta, rel=1e-14)
        np.testing.assert_allclose(q.x_prime, p.x_prime, atol=1e-15)

    def test_theta_normalized(self):
        assert 0.0 <= CylPoint(1.0, -0.5).theta < TWO_PI

    def test_dimension_mismatch(self):
        with pytest.raises(DomainError):
            cyl_to_cartesian(CylPoint(1.0, 0.0, (0.3,)), 2)


class TestRealize:
    def test_two_point_alternating(self):
        cfg = Configuration(Disk(), (Circle(0.5, (), 1.0),),
                            (0.0, math.pi), Scheme.ALTERNATING)
        pts, charges = realize(cfg)
        np.testing.assert_allclose(pts, [[0.5, 0.0], [-0.5, 0.0]], atol=1e-15)
        np.testing.assert_array_equal(charges, [1.0, -1.0])

    def test_six_point_equal(self):
        cfg = two_circle_disk(m=3)
        pts, charges = realize(cfg)
        assert pts.shape == (6, 2)
        np.testing.assert_array_equal(charges, [1, 1, 1, -1, -1, -1])
        assert math.fsum(charges) == 0.0

    def test_odd_m_alternating_rejected(self):
        with pytest.raises(ConfigurationError, match="even"):
            Configuration(Disk(), (Circle(0.5, (), 1.0),),
                          (0.0, math.pi / 2, math.pi), Scheme.ALTERNATING)

    def test_nonzero_total_charge_rejected(self):
        with pytest.raises(ConfigurationError, match="zero"):
            Configuration(Disk(), (Circle(0.3, (), 1.0), Circle(0.6, (), -0.5)),
                          (0.0, math.pi), Scheme.EQUAL)

    def test_circle_outside_domain_rejected(self):
        with pytest.raises(ConfigurationError, match="inside"):
            Configuration(Disk(), (Circle(1.2, (), 1.0), Circle(0.3, (), -1.0)),
                          (0.0, math.pi), Scheme.EQUAL)
        with pytest.raises(ConfigurationError, match="annulus"):
            Configuration(Annulus(0.4), (Circle(0.3, (), 1.0), Circle(0.6, (), -1.0)),
                          (0.0, math.pi), Scheme.EQUAL)

    def test_duplicate_circles_rejected(self):
        with pytest.raises(ConfigurationError, match="duplicate"):
            Configuration(Disk(), (Circle(0.5, (), 1.0), Circle(0.5, (), -1.0)),
                          (0.0, math.pi), Scheme.EQUAL)

    def test_distinct_axis_offsets_allowed(self):
        cfg = Configuration(Ball(3),
                            (Circle(0.5, (0.0,), 1.0), Circle(0.5, (0.3,), -1.0)),
                            (0.0, math.pi), Scheme.EQUAL)
        pts, charges = realize(cfg)
        assert pts.shape == (4, 3)
        for row in pts:
            assert np.linalg.norm(row) < 1.0

    def test_decreasing_angles_rejected(self):
        with pytest.raises(ConfigurationError, match="increasing"):
            Configuration(Disk(), (Circle(0.5, (), 1.0),),
                          (1.0, 0.5), Scheme.ALTERNATING)

    def test_points_inside_annulus(self):
        cfg = Configuration(Annulus(0.3), (Circle(0.5, (), 1.0), Circle(0.8, (), -1.0)),
                            (0.1, 2.0, 4.0), Scheme.EQUAL)
        pts, _ = realize(cfg)
        radii = np.linalg.norm(pts, axis=1)
        assert np.all(radii > 0.3) and np.all(radii < 1.0)


class TestSymmetrize:
    def test_examples(self):
        base = Configuration(Disk(), (Circle(0.3, (), 1.0), Circle(0.6, (), -1.0)),
                             (0.1, 1.0, 4.0), Scheme.EQUAL)
        np.testing.assert_allclose(symmetrize(base).angles,
                                   [0.0, TWO_PI / 3, 2 * TWO_PI / 3], rtol=1e-15)

    def test_fixed_point(self):
        base = Configuration(Disk(), (Circle(0.5, (), 1.0),),
                             (0.0, math.pi), Scheme.ALTERNATING)
        assert symmetrize(base).angles == base.angles

    def test_m4(self):
        base = Configuration(Disk(), (Circle(0.5, (), 1.0),),
                             (0.2, 0.5, 3.3, 5.0), Scheme.ALTERNATING)
        np.testing.assert_allclose(symmetrize(base).angles,
                                   [0.0, math.pi / 2, math.pi, 3 * math.pi / 2],
                                   rtol=1e-15)

    def test_gap_invariant(self):
        base = two_circle_disk(m=5)
        sym = symmetrize(base)
        pts, _ = realize(sym)
        angles = np.sort(np.arctan2(pts[:5, 1], pts[:5, 0]) % TWO_PI)
        gaps = np.diff(np.concatenate([angles, [angles[0] + TWO_PI]]))
        np.testing.assert_allclose(gaps, TWO_PI / 5, atol=1e-15)

    def test_index_correspondence(self):
        base = Configuration(Ball(4),
                             (Circle(0.3, (0.0, 0.1), 1.0), Circle(0.6, (0.2, 0.0), -1.0)),
                             (0.3, 1.1, 2.2, 4.4), Scheme.ALTERNATING)
        pts, charges = realize(base)
        pts_s, charges_s = realize(symmetrize(base))
        np.testing.assert_array_equal(charges, charges_s)
        # same circle: same radius in the rotation plane and same axis offset
        for k in range(pts.shape[0]):
            assert np.hypot(pts[k, 0], pts[k, 1]) == pytest.approx(
                np.hypot(pts_s[k, 0], pts_s[k, 1]), rel=1e-15)
            np.testing.assert_array_equal(pts[k, 2:], pts_s[k, 2:])


class TestSampleRandomAngles:
    def test_contract(self):
        ang = sample_random_angles(2, 0.1, seed=7)
        assert ang.shape == (2,)
        assert 0.0 <= ang[0] < ang[1] < TWO_PI
        gaps = [ang[1] - ang[0], TWO_PI - ang[1] + ang[0]]
        assert min(gaps) >= 0.1

    def test_infeasible(self):
        with pytest.raises(ConfigurationError, match="infeasible"):
            sample_random_angles(4, 3.0, seed=0)

    def test_deterministic(self):
        a = sample_random_angles(6, 1e-3, seed=123)
        b = sample_random_angles(6, 1e-3, seed=123)
        np.testing.assert_array_equal(a, b)

    def test_min_gap_circular(self):
        for seed in range(20):
            ang = sample_random_angles(5, 0.05, seed=seed)
            gaps = np.diff(np.concatenate([ang, [ang[0] + TWO_PI]]))
            assert gaps.min() >= 0.05 - 1e-12


class TestSerialization:
    def test_round_trip(self):
        cfg = Configuration(Annulus(0.25),
                            (Circle(0.5, (), 2.0), Circle(0.8, (), -2.0)),
                            (0.3, 2.1, 4.0), Scheme.EQUAL)
        again = Configuration.from_json(cfg.to_json())
        assert again == cfg

    def test_scheme_aliases(self):
        assert Scheme.parse("theorem1") is Scheme.EQUAL
        assert Scheme.parse("theorem2") is Scheme.ALTERNATING
        assert Scheme.parse("equal") is Scheme.EQUAL
        with pytest.raises(ConfigurationError):
            Scheme.parse("bogus")

    def test_parse_domain_tokens(self):
        assert parse_domain("disk") == Disk()
        assert parse_domain("ball5") == Ball(5)
        assert parse_domain("annulus0.3") == Annulus(0.3)
        assert parse_domain("annulus:0.3") == Annulus(0.3)
        with pytest.raises(ConfigurationError):
            parse_domain("annulusX")

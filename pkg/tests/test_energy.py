import math

import numpy as np
import pytest

from neumannkit import (Annulus, Ball, Circle, Configuration,
                        ConfigurationError, Disk, NeumannKernel, Scheme,
                        SingularityError, energy_report,
                        expansion_coefficients, fundamental_solution,
                        neumann_energy, potential, quadratic_form_qn, realize,
                        sphere_area)

TWO_PI = 2 * math.pi

DISK_PTS = np.array([[0.5, 0.0], [-0.5, 0.0]])
DISK_CH = np.array([1.0, -1.0])
# frozen from the closed form: En = -2 N(0.5, -0.5), Qn = En + 2 eta(0.5)
EN_2PT = 2 * math.log(1.25) / TWO_PI
QN_2PT = EN_2PT - 2 * math.log(0.75) / TWO_PI


class ShiftedKernel:
    """Arbitrary-kernel adapter adding a constant; exercises the generic
    pairwise-sum path."""

    def __init__(self, base, c):
        self.base = base
        self.c = c

    def pair(self, x, y):
        return self.base.pair(x, y) + self.c

    def diag(self, x):
        return self.base.diag(x) + self.c


class TestNeumannEnergy:
    def test_two_point_disk(self):
        k = NeumannKernel(Disk())
        assert neumann_energy(k, DISK_PTS, DISK_CH) == pytest.approx(
            EN_2PT, rel=1e-13)

    def test_constant_shift(self):
        k = NeumannKernel(Disk())
        base = neumann_energy(k, DISK_PTS, DISK_CH)
        for c in (-3.0, 1.0, 10.0):
            shifted = neumann_energy(ShiftedKernel(k, c), DISK_PTS, DISK_CH)
            # sum delta = 0: the energy changes by -c * sum delta^2
            assert shifted - base == pytest.approx(-c * 2.0, abs=1e-12)

    def test_permutation_bit_identical(self):
        k = NeumannKernel(Ball(4))
        rng = np.random.default_rng(1)
        pts = rng.uniform(-0.5, 0.5, size=(6, 4))
        ch = np.array([1.0, -2.0, 0.5, 0.5, -1.0, 1.0])
        a = neumann_energy(k, pts, ch)
        b = neumann_energy(k, pts[::-1].copy(), ch[::-1].copy())
        assert a == b

    def test_rotation_invariance(self):
        for domain in (Disk(), Annulus(0.3), Ball(3)):
            circles = (Circle(0.45, (0.0,) * (domain.dim - 2), 1.0),
                       Circle(0.7, (0.0,) * (domain.dim - 2), -1.0))
            cfg = Configuration(domain, circles, (0.3, 1.0, 2.5, 4.4), Scheme.EQUAL)
            pts, ch = realize(cfg)
            k = NeumannKernel(domain)
            base = neumann_energy(k, pts, ch)
            phi = 0.77
            rot = np.eye(domain.dim)
            rot[0, 0] = rot[1, 1] = math.cos(phi)
            rot[0, 1] = -math.sin(phi)
            rot[1, 0] = math.sin(phi)
            rotated = neumann_energy(k, pts @ rot.T, ch)
            assert rotated == pytest.approx(base, abs=1e-11)

    def test_coincident_points_rejected(self):
        k = NeumannKernel(Disk())
        with pytest.raises(SingularityError):
            neumann_energy(k, np.array([[0.1, 0.2], [0.1, 0.2]]), np.array([1.0, -1.0]))


class TestQuadraticForm:
    def test_single_center_point(self):
        k = NeumannKernel(Disk())
        assert quadratic_form_qn(k, np.array([[0.0, 0.0]]), np.array([1.0])) == 0.0

    def test_identity_with_energy(self):
        k = NeumannKernel(Disk())
        en = neumann_energy(k, DISK_PTS, DISK_CH)
        qn = quadratic_form_qn(k, DISK_PTS, DISK_CH)
        diag = sum(c * c * k.diag(p) for c, p in zip(DISK_CH, DISK_PTS))
        assert qn - en == pytest.approx(diag, abs=1e-14)

    def test_two_point_value(self):
        k = NeumannKernel(Disk())
        assert quadratic_form_qn(k, DISK_PTS, DISK_CH) == pytest.approx(
            QN_2PT, rel=1e-13)


class TestPotential:
    def test_odd_symmetry_zero(self):
        k = NeumannKernel(Disk())
        assert potential(0.3j, DISK_PTS, DISK_CH, k) == pytest.approx(0.0, abs=1e-15)

    def test_bounded_at_charge(self):
        k = NeumannKernel(Disk())
        vals = []
        for eps in (1e-3, 1e-5, 1e-7):
            x = np.array([0.5 + eps, 0.0])
            u = potential(x, DISK_PTS, DISK_CH, k)
            vals.append(u + 1.0 * math.log(eps) / TWO_PI)
        assert max(vals) - min(vals) < 1e-3

    def test_nonneutral_rejected(self):
        k = NeumannKernel(Disk())
        with pytest.raises(ConfigurationError):
            potential(0.3j, DISK_PTS, np.array([1.0, -0.5]), k)

    def test_at_charge_point_rejected(self):
        k = NeumannKernel(Disk())
        with pytest.raises(SingularityError):
            potential(np.array([0.5, 0.0]), DISK_PTS, DISK_CH, k)


class TestExpansionCoefficients:
    def test_sums_to_qn(self):
        k = NeumannKernel(Disk())
        a = expansion_coefficients(DISK_PTS, DISK_CH, k)
        qn = quadratic_form_qn(k, DISK_PTS, DISK_CH)
        assert math.fsum(c * ak for c, ak in zip(DISK_CH, a)) == pytest.approx(
            qn, abs=1e-14)

    def test_matches_potential_limit(self):
        k = NeumannKernel(Disk())
        a = expansion_coefficients(DISK_PTS, DISK_CH, k)
        h = 1e-6
        x = np.array([0.5 + h, 0.0])
        u = potential(x, DISK_PTS, DISK_CH, k)
        approx_a0 = u - 1.0 * fundamental_solution(h, 2) / sphere_area(2)
        assert approx_a0 == pytest.approx(a[0], abs=1e-4)

    def test_symmetric_configuration_equal_on_circle(self):
        cfg = Configuration(Ball(3), (Circle(0.4, (0.0,), 1.0), Circle(0.6, (0.1,), -1.0)),
                            tuple(TWO_PI * j / 4 for j in range(4)), Scheme.EQUAL)
        pts, ch = realize(cfg)
        k = NeumannKernel(Ball(3))
        a = expansion_coefficients(pts, ch, k)
        assert np.ptp(a[:4]) <= 1e-12
        assert np.ptp(a[4:]) <= 1e-12


class TestEnergyReport:
    def test_consistency(self):
        k = NeumannKernel(Annulus(0.3))
        cfg = Configuration(Annulus(0.3), (Circle(0.5, (), 1.0), Circle(0.8, (), -1.0)),
                            (0.2, 1.7, 3.9), Scheme.EQUAL)
        pts, ch = realize(cfg)
        rep = energy_report(k, pts, ch, metadata={"seed": 7})
        assert rep.en == neumann_energy(k, pts, ch)
        assert rep.qn == pytest.approx(quadratic_form_qn(k, pts, ch), abs=1e-15)
        assert rep.n == 6
        assert math.fsum(c * a for c, a in zip(ch, rep.a)) == pytest.approx(
            rep.qn, abs=1e-13)
        diag = math.fsum(c * c * k.diag(p) for c, p in zip(ch, pts))
        assert rep.qn - rep.en == pytest.approx(diag, abs=1e-14)
        d = rep.to_dict()
        assert d["metadata"]["seed"] == 7

    def test_generic_kernel_path_matches_fast_path(self):
        k = NeumannKernel(Ball(5))

        class Plain:
            def pair(self, x, y):
                return k.pair(x, y)

            def diag(self, x):
                return k.diag(x)

        rng = np.random.default_rng(2)
        pts = rng.uniform(-0.4, 0.4, size=(5, 5))
        ch = np.array([1.0, 1.0, -1.0, -1.0, 0.0])
        assert neumann_energy(Plain(), pts, ch) == neumann_energy(k, pts, ch)

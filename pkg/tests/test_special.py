import math

import numpy as np
import pytest

from neumannkit import (ConvergenceError, DomainError, double_factorial,
                        fundamental_solution, sphere_area, theta1,
                        theta1_prime_at_zero)
from neumannkit.verification import theta1_triple_product


class TestFundamentalSolution:
    def test_plane_log(self):
        assert fundamental_solution(1.0, 2) == 0.0
        assert fundamental_solution(math.e, 2) == pytest.approx(-1.0, abs=1e-15)

    def test_power_law(self):
        assert fundamental_solution(2.0, 3) == 0.5
        assert fundamental_solution(2.0, 4) == 0.125

    @pytest.mark.parametrize("rho,d", [(0.0, 3), (-1.0, 2), (1.0, 1)])
    def test_domain_errors(self, rho, d):
        with pytest.raises(DomainError):
            fundamental_solution(rho, d)


class TestSphereArea:
    def test_known_values(self):
        assert sphere_area(2) == pytest.approx(2 * math.pi, rel=1e-15)
        assert sphere_area(3) == pytest.approx(4 * math.pi, rel=1e-15)
        assert sphere_area(4) == pytest.approx(2 * math.pi ** 2, rel=1e-15)

    def test_gamma_identity(self):
        for d in range(2, 13):
            lhs = sphere_area(d) * math.gamma(d / 2)
            assert lhs == pytest.approx(2 * math.pi ** (d / 2), rel=1e-15)

    def test_domain_error(self):
        with pytest.raises(DomainError):
            sphere_area(1)


class TestDoubleFactorial:
    def test_conventions(self):
        assert double_factorial(-1) == 1
        assert double_factorial(0) == 1
        assert double_factorial(5) == 15
        assert double_factorial(6) == 48

    def test_recurrence(self):
        for n in range(1, 31):
            assert double_factorial(n) == n * double_factorial(n - 2)

    def test_exact_then_float(self):
        assert isinstance(double_factorial(33), int)
        assert isinstance(double_factorial(35), float)

    def test_domain_error(self):
        with pytest.raises(DomainError):
            double_factorial(-2)


class TestTheta1:
    def test_zero_is_zero(self):
        for q in (0.1, 0.5, 0.9):
            assert theta1(0.0, q) == 0

    def test_oddness_exact(self):
        z = 0.3 + 0.1j
        assert theta1(-z, 0.5) == -theta1(z, 0.5)

    def test_against_triple_product(self):
        got = theta1(math.pi / 2, 0.1, 1e-12)
        want = theta1_triple_product(math.pi / 2, 0.1)
        assert abs(got - want) <= 1e-12

    def test_quasi_periodicity(self):
        for q in (0.2, 0.6):
            for z in (0.4 + 0.2j, 1.7 - 0.3j):
                assert abs(theta1(z + math.pi, q) + theta1(z, q)) <= 1e-12

    def test_grid_vs_product(self):
        worst = 0.0
        for q in (0.1, 0.3, 0.5, 0.7, 0.9):
            ymax = 0.5 * math.log(1.0 / q)
            for a in np.linspace(0.0, math.pi, 7):
                for b in np.linspace(-ymax, ymax, 5):
                    z = complex(a, b)
                    worst = max(worst, abs(theta1(z, q) - theta1_triple_product(z, q)))
        assert worst <= 1e-12

    def test_convergence_error(self):
        with pytest.raises(ConvergenceError):
            theta1(40j, 0.9, 1e-13)

    def test_nome_validation(self):
        with pytest.raises(DomainError):
            theta1(0.3, 1.5)
        with pytest.raises(DomainError):
            theta1(0.3, 0.5, tol=-1.0)


class TestTheta1Prime:
    def test_small_nome_limit(self):
        q = 1e-8
        assert theta1_prime_at_zero(q) / (2 * q ** 0.25) == pytest.approx(1.0, abs=1e-7)

    def test_against_central_difference(self):
        q = 0.5
        h = 1e-6
        fd = (theta1(h, q, 1e-12) - theta1(-h, q, 1e-12)).real / (2 * h)
        assert abs(theta1_prime_at_zero(q, 1e-12) - fd) <= 1e-8

    def test_against_product_form(self):
        q = 0.1
        prod = 1.0
        q2n = 1.0
        for _ in range(200):
            q2n *= q * q
            prod *= (1.0 - q2n) ** 3
        want = 2 * q ** 0.25 * prod
        assert abs(theta1_prime_at_zero(q, 1e-12) - want) <= 1e-12

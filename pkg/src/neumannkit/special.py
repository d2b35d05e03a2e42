"""Elementary and special functions shared by the kernels.

All functions are pure and thread-safe.  The Jacobi theta-1 series is
truncated with a certified geometric tail bound; the default tolerance is
``DEFAULT_THETA_TOL`` unless a caller overrides it.
"""

import math

from ._backend import impl
from .errors import DomainError

DEFAULT_THETA_TOL = 1e-13

_DOUBLE_FACT_EXACT_MAX = 33


def fundamental_solution(rho: float, d: int) -> float:
    """Fundamental solution of the Laplacian: -log(rho) in the plane,
    rho^(2-d)/(d-2) in d >= 3 dimensions."""
    if rho <= 0.0:
        raise DomainError("fundamental_solution requires rho > 0, got %r" % rho)
    if d < 2:
        raise DomainError("fundamental_solution requires d >= 2, got %r" % d)
    if d == 2:
        return -math.log(rho)
    return rho ** (2 - d) / (d - 2)


def sphere_area(d: int) -> float:
    """Surface measure of the unit (d-1)-sphere, 2 pi^(d/2) / Gamma(d/2)."""
    if d < 2:
        raise DomainError("sphere_area requires d >= 2, got %r" % d)
    return 2.0 * math.pi ** (0.5 * d) / math.gamma(0.5 * d)


def double_factorial(n: int):
    """n!! with the conventions (-1)!! = 0!! = 1.

    Exact integer up to n = 33; a float beyond that to avoid silent
    overflow in downstream double arithmetic.
    """
    if n < -1:
        raise DomainError("double_factorial requires n >= -1, got %r" % n)
    if n <= 0:
        return 1
    r = 1
    k = n
    while k > 1:
        r *= k
        k -= 2
    return r if n <= _DOUBLE_FACT_EXACT_MAX else float(r)


def _check_nome(mu) -> float:
    mu = float(mu)
    if not 0.0 < mu < 1.0:
        raise DomainError("nome must lie in (0, 1), got %r" % mu)
    return mu


def theta1(z: complex, q: float, tol: float = DEFAULT_THETA_TOL) -> complex:
    """Jacobi theta-1 of nome q at complex z, truncated so the tail bound
    is below ``tol`` in absolute value."""
    q = _check_nome(q)
    if not tol > 0.0:
        raise DomainError("tol must be positive, got %r" % tol)
    z = complex(z)
    re, im = impl.theta1(z.real, z.imag, q, tol)
    return complex(re, im)


def theta1_prime_at_zero(q: float, tol: float = DEFAULT_THETA_TOL) -> float:
    """Derivative of theta-1 at the origin, by term-wise differentiation."""
    q = _check_nome(q)
    if not tol > 0.0:
        raise DomainError("tol must be positive, got %r" % tol)
    return impl.theta1_prime0(q, tol)

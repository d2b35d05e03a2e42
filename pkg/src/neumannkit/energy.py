"""Discrete Neumann energy, the associated quadratic form, the charge
potential and its expansion coefficients.

The pairwise operations accept any kernel object exposing ``pair(x, y)``
and ``diag(x)`` (a ``NeumannKernel`` gets a fast path through its
eta-matrix).  Pair terms are accumulated with exactly rounded summation
(math.fsum) over a canonical pair orientation, so results are deterministic
and invariant under simultaneous permutation of points and charges,
bit for bit.
"""

import math
import numbers
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigurationError, SingularityError
from .kernels import NeumannKernel

__all__ = [
    "neumann_energy", "quadratic_form_qn", "potential",
    "expansion_coefficients", "EnergyReport", "energy_report",
]

_CHARGE_TOL = 1e-12


def _prepare(X, Delta):
    X = np.ascontiguousarray(X, dtype=float)
    if X.ndim != 2:
        raise ConfigurationError("X must be an (n, dim) array of points")
    Delta = np.ascontiguousarray(Delta, dtype=float)
    if Delta.shape != (X.shape[0],):
        raise ConfigurationError(
            "charge vector has length %d, expected %d" % (Delta.size, X.shape[0]))
    if X.shape[0] < 1:
        raise ConfigurationError("need at least one charge point")
    return X, Delta


def _generic_eta(kernel, X):
    """Kernel matrix for an arbitrary pair/diag object, with the same
    canonical pair orientation as the fast path."""
    n = X.shape[0]
    out = np.empty((n, n))
    rows = [tuple(r) for r in X]
    for k in range(n):
        out[k, k] = kernel.diag(X[k])
        for l in range(k + 1, n):
            if rows[l] < rows[k]:
                v = kernel.pair(X[l], X[k])
            else:
                v = kernel.pair(X[k], X[l])
            out[k, l] = v
            out[l, k] = v
    return out


def _eta(kernel, X):
    if isinstance(kernel, NeumannKernel):
        return kernel.eta_matrix(X)
    n = X.shape[0]
    for k in range(n):
        for l in range(k + 1, n):
            if np.array_equal(X[k], X[l]):
                raise SingularityError(
                    "points %d and %d coincide at %r" % (k, l, tuple(X[k])))
    return _generic_eta(kernel, X)


def _pair_sum(eta, Delta):
    n = Delta.size
    terms = [2.0 * Delta[k] * Delta[l] * eta[k, l]
             for k in range(n) for l in range(k + 1, n)]
    return math.fsum(terms)


def neumann_energy(kernel, X, Delta) -> float:
    """Sum over ordered pairs k != l of delta_k delta_l N(x_k, x_l)."""
    X, Delta = _prepare(X, Delta)
    return _pair_sum(_eta(kernel, X), Delta)


def quadratic_form_qn(kernel, X, Delta) -> float:
    """Full double sum including the diagonal: Qn = En + sum_k delta_k^2 eta_kk."""
    X, Delta = _prepare(X, Delta)
    eta = _eta(kernel, X)
    en = _pair_sum(eta, Delta)
    diag = math.fsum(Delta[k] * Delta[k] * eta[k, k] for k in range(Delta.size))
    return en + diag


def _check_neutral(Delta, where):
    total = math.fsum(Delta)
    scale = math.fsum(abs(d) for d in Delta)
    if abs(total) > _CHARGE_TOL * max(scale, 1.0):
        raise ConfigurationError(
            "%s requires charges summing to zero, got %r" % (where, total))


def potential(x, X, Delta, kernel) -> float:
    """Charge potential u(x) = sum_k delta_k N(x, x_k); requires neutral
    total charge and x distinct from every charge point."""
    X, Delta = _prepare(X, Delta)
    _check_neutral(Delta, "potential")
    if isinstance(x, numbers.Complex) and not isinstance(x, numbers.Real):
        x = (x.real, x.imag)
    x = np.ascontiguousarray(x, dtype=float)
    for k in range(X.shape[0]):
        if np.array_equal(x, X[k]):
            raise SingularityError("potential evaluated at charge point %d" % k)
    return math.fsum(Delta[k] * kernel.pair(x, X[k]) for k in range(X.shape[0]))


def expansion_coefficients(X, Delta, kernel) -> np.ndarray:
    """Constants a_k of the potential's expansion at each charge point:
    a_k = delta_k eta_kk + sum_{l != k} delta_l N(x_l, x_k).

    Satisfies sum_k delta_k a_k = Qn.
    """
    X, Delta = _prepare(X, Delta)
    _check_neutral(Delta, "expansion_coefficients")
    eta = _eta(kernel, X)
    n = X.shape[0]
    return np.array([
        math.fsum([Delta[k] * eta[k, k]] +
                  [Delta[l] * eta[l, k] for l in range(n) if l != k])
        for k in range(n)
    ])


@dataclass(frozen=True)
class EnergyReport:
    """Energy En, quadratic form Qn and per-point expansion constants for
    one configuration, plus reproducibility metadata.

    Invariant (asserted by the test suite): qn - en = sum_k delta_k^2 eta_kk.
    """

    en: float
    qn: float
    a: tuple
    n: int
    metadata: dict = field(default_factory=dict)

    def to_dict(self):
        return {
            "en": self.en,
            "qn": self.qn,
            "a": list(self.a),
            "n": self.n,
            "metadata": dict(self.metadata),
        }


def energy_report(kernel, X, Delta, metadata=None) -> EnergyReport:
    """Evaluate En, Qn and the a_k coefficients with one kernel-matrix pass."""
    X, Delta = _prepare(X, Delta)
    _check_neutral(Delta, "energy_report")
    eta = _eta(kernel, X)
    en = _pair_sum(eta, Delta)
    diag = math.fsum(Delta[k] * Delta[k] * eta[k, k] for k in range(Delta.size))
    n = X.shape[0]
    a = tuple(
        math.fsum([Delta[k] * eta[k, k]] +
                  [Delta[l] * eta[l, k] for l in range(n) if l != k])
        for k in range(n)
    )
    return EnergyReport(en=en, qn=en + diag, a=a, n=n, metadata=dict(metadata or {}))

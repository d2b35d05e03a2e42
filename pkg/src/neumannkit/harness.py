"""Randomized and optimization-based verification of the two extremal
inequalities: the energy of a charge configuration against its angularly
symmetrized counterpart.

Equal charges per circle (Scheme.EQUAL): the symmetric configuration
minimizes the energy.  Alternating charges (Scheme.ALTERNATING): it
maximizes the energy.  Trials draw fresh random angle sets per trial seed;
the search drives a derivative-free simplex over the angle gaps.
"""

import csv
import io
import math
import os
from dataclasses import dataclass, replace

import numpy as np
from scipy.optimize import minimize

from .energy import neumann_energy
from .errors import ConfigurationError
from .geometry import (Configuration, Scheme, TWO_PI, realize,
                       sample_random_angles, symmetrize)
from .kernels import NeumannKernel

__all__ = [
    "TrialRecord", "run_trials", "extremality_search", "SearchResult",
    "trials_to_csv", "trials_summary",
]

DEFAULT_TOL_GAP = 1e-9
DEFAULT_MIN_GAP = 1e-3


@dataclass(frozen=True)
class TrialRecord:
    """One random-angle trial: gap = en_x - en_xstar.

    Passes iff gap >= -tol (equal-charge scheme) or gap <= +tol
    (alternating scheme).
    """

    seed: int
    angles: tuple
    en_x: float
    en_xstar: float
    gap: float
    scheme: Scheme
    m: int

    def passed(self, tol_gap=DEFAULT_TOL_GAP) -> bool:
        if self.scheme is Scheme.EQUAL:
            return self.gap >= -tol_gap
        return self.gap <= tol_gap


def _trial_seed(master_seed, index):
    return int(np.random.SeedSequence([master_seed & 0xFFFFFFFF, index])
               .generate_state(1, np.uint64)[0])


def _run_chunk(base_dict, master_seed, indices, min_gap, en_xstar):
    base = Configuration.from_dict(base_dict)
    kernel = NeumannKernel(base.domain)
    out = []
    for i in indices:
        s = _trial_seed(master_seed, i)
        try:
            angles = sample_random_angles(base.m, min_gap, s)
            cfg = replace(base, angles=tuple(angles))
            pts, charges = realize(cfg)
            en_x = neumann_energy(kernel, pts, charges)
        except Exception as exc:
            raise RuntimeError(
                "trial %d (seed %d) aborted: %s" % (i, s, exc)) from exc
        out.append(TrialRecord(seed=s, angles=tuple(angles), en_x=en_x,
                               en_xstar=en_xstar, gap=en_x - en_xstar,
                               scheme=base.scheme, m=base.m))
    return out


def _worker_count(workers):
    if workers is not None:
        return max(1, int(workers))
    env = os.environ.get("NEUMANNKIT_THREADS", "1")
    try:
        return max(1, int(env))
    except ValueError:
        return 1


def run_trials(base: Configuration, n_trials: int, seed: int,
               tol_gap: float = DEFAULT_TOL_GAP,
               min_gap: float = DEFAULT_MIN_GAP,
               workers=None):
    """Run n_trials random-angle trials against the fixed symmetrized
    configuration.  Deterministic for a fixed master seed: trial i draws its
    own stream from (seed, i), so results do not depend on the worker count;
    records are returned in trial order."""
    if n_trials < 1:
        raise ConfigurationError("n_trials must be >= 1, got %r" % (n_trials,))
    base.validate()
    kernel = NeumannKernel(base.domain)
    pts_s, charges_s = realize(symmetrize(base))
    en_xstar = neumann_energy(kernel, pts_s, charges_s)
    nproc = _worker_count(workers)
    indices = list(range(n_trials))
    if nproc == 1 or n_trials < 4:
        return _run_chunk(base.to_dict(), seed, indices, min_gap, en_xstar)
    import multiprocessing

    # contiguous chunks, merged back in chunk order: each trial's stream
    # depends only on (seed, index), so the worker count cannot change results
    step = -(-n_trials // nproc)
    chunks = [indices[i:i + step] for i in range(0, n_trials, step)]
    args = [(base.to_dict(), seed, chunk, min_gap, en_xstar) for chunk in chunks]
    with multiprocessing.Pool(len(args)) as pool:
        parts = pool.starmap(_run_chunk, args)
    return [rec for part in parts for rec in part]


def trials_to_csv(records, fileobj=None) -> str:
    """CSV rows (seed, m, scheme, en_x, en_xstar, gap); returns the text."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["seed", "m", "scheme", "en_x", "en_xstar", "gap"])
    for r in records:
        writer.writerow([r.seed, r.m, r.scheme.value,
                         repr(r.en_x), repr(r.en_xstar), repr(r.gap)])
    text = buf.getvalue()
    if fileobj is not None:
        fileobj.write(text)
    return text


def trials_summary(records, tol_gap=DEFAULT_TOL_GAP) -> dict:
    gaps = [r.gap for r in records]
    n_pass = sum(1 for r in records if r.passed(tol_gap))
    argmin = min(records, key=lambda r: r.gap)
    return {
        "n_trials": len(records),
        "pass_rate": n_pass / len(records),
        "min_gap": min(gaps),
        "max_gap": max(gaps),
        "argmin_seed": argmin.seed,
        "tol_gap": tol_gap,
    }


# ---------------------------------------------------------------------------
# Simplex search over the angle gaps
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SearchResult:
    angles: tuple
    energy: float
    gap_to_symmetric: float
    restarts: int
    nfev: int


def _gaps_to_angles(v, m):
    """Unconstrained (m-1)-vector -> ordered angles with theta_0 = 0 fixed
    (rotation gauge).  Gaps are normalized exponentials, so iterates stay
    feasible without penalties."""
    z = np.concatenate(([0.0], np.asarray(v, dtype=float)))
    z = z - z.max()
    g = np.exp(z)
    g = TWO_PI * g / g.sum()
    return np.concatenate(([0.0], np.cumsum(g[:-1])))


def extremality_search(base: Configuration, direction=None, seed: int = 0,
                       restarts: int = 20, maxiter=None) -> SearchResult:
    """Derivative-free simplex search for the extremal angle set.

    direction: 'minimize' for the equal-charge scheme, 'maximize' for the
    alternating one (inferred from the scheme when omitted; a mismatch is
    rejected).  The first restart starts from the symmetric configuration.
    """
    base.validate()
    expected = "minimize" if base.scheme is Scheme.EQUAL else "maximize"
    if direction is None:
        direction = expected
    if direction != expected:
        raise ConfigurationError(
            "direction %r does not match scheme %s (expected %r)"
            % (direction, base.scheme.value, expected))
    sign = 1.0 if direction == "minimize" else -1.0
    kernel = NeumannKernel(base.domain)
    m = base.m
    if m < 2:
        raise ConfigurationError("search needs at least two half-planes")

    def objective(v):
        angles = _gaps_to_angles(v, m)
        cfg = replace(base, angles=tuple(angles))
        pts, charges = realize(cfg)
        return sign * neumann_energy(kernel, pts, charges)

    pts_s, charges_s = realize(symmetrize(base))
    en_sym = neumann_energy(kernel, pts_s, charges_s)

    rng = np.random.default_rng(seed)
    best_val = math.inf
    best_v = np.zeros(m - 1)
    nfev = 0
    for trial in range(restarts):
        v0 = np.zeros(m - 1) if trial == 0 else rng.normal(scale=1.0, size=m - 1)
        res = minimize(objective, v0, method="Nelder-Mead",
                       options={"xatol": 1e-10, "fatol": 1e-13,
                                "maxiter": maxiter or 400 * max(m - 1, 1),
                                "initial_simplex": None})
        nfev += res.nfev
        if res.fun < best_val:
            best_val = res.fun
            best_v = res.x
    angles = _gaps_to_angles(best_v, m)
    energy = sign * best_val
    return SearchResult(angles=tuple(angles), energy=energy,
                        gap_to_symmetric=energy - en_sym,
                        restarts=restarts, nfev=nfev)

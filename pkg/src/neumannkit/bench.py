"""Benchmark the compiled kernel core against the pure-Python fallback.

Run with ``python -m neumannkit.bench``.  Reports per-call times for the
hot primitives and the end-to-end trial/Monte-Carlo workloads.
"""

import math
import time

import numpy as np

from . import _purepy
from .geometry import Annulus, Ball, Circle, Configuration, Scheme, realize

try:
    from . import _core
except ImportError:
    _core = None


def _time(fn, repeat):
    t0 = time.perf_counter()
    for _ in range(repeat):
        fn()
    return (time.perf_counter() - t0) / repeat


def _workloads():
    rng = np.random.default_rng(0)
    x5 = rng.normal(size=5)
    x5 *= 0.7 / np.linalg.norm(x5)
    y5 = rng.normal(size=5)
    y5 *= 0.5 / np.linalg.norm(y5)
    cfg = Configuration(Annulus(0.3),
                        (Circle(0.5, (), 1.0), Circle(0.8, (), -1.0)),
                        tuple(2 * math.pi * j / 6 for j in range(6)),
                        Scheme.EQUAL)
    pts, _ = realize(cfg)
    out = np.empty((pts.shape[0], pts.shape[0]))
    cfg_b = Configuration(Ball(6),
                          (Circle(0.4, (0.0,) * 4, 1.0), Circle(0.7, (0.1,) + (0.0,) * 3, -1.0)),
                          tuple(2 * math.pi * j / 4 for j in range(4)),
                          Scheme.EQUAL)
    pts_b, _ = realize(cfg_b)
    out_b = np.empty((pts_b.shape[0], pts_b.shape[0]))
    samples = rng.uniform(-0.4, 0.4, size=(2000, 2))
    charges2 = np.array([1.0, -1.0])
    disk_pts = np.array([[0.5, 0.0], [-0.5, 0.0]])
    mc_out = np.empty(samples.shape[0])
    return [
        ("theta1(0.8+0.2i; q=0.5)", 2000,
         lambda impl: impl.theta1(0.8, 0.2, 0.5, 1e-13)),
        ("ball pair kernel, d=5", 2000,
         lambda impl: impl.ball_pair(x5, y5, 5)),
        ("annulus eta matrix, n=12", 200,
         lambda impl: impl.eta_matrix(pts, 1, 0.3, 1e-13, out)),
        ("ball eta matrix, d=6 n=8", 200,
         lambda impl: impl.eta_matrix(pts_b, 2, 0.0, 1e-13, out_b)),
        ("disk |grad u|^2 x 2000", 5,
         lambda impl: impl.dirichlet_block(samples, disk_pts, charges2, 0,
                                           0.0, 1e-13, 1e-5, mc_out)),
    ]


def main():
    rows = []
    for name, repeat, call in _workloads():
        t_py = _time(lambda: call(_purepy), repeat)
        if _core is not None:
            t_c = _time(lambda: call(_core), repeat)
            rows.append((name, t_py, t_c, t_py / t_c))
        else:
            rows.append((name, t_py, None, None))
    width = max(len(r[0]) for r in rows) + 2
    print("%-*s %12s %12s %9s" % (width, "workload", "python", "compiled", "speedup"))
    for name, t_py, t_c, ratio in rows:
        if t_c is None:
            print("%-*s %10.3f us %12s %9s" % (width, name, t_py * 1e6, "n/a", "n/a"))
        else:
            print("%-*s %10.3f us %10.3f us %8.1fx"
                  % (width, name, t_py * 1e6, t_c * 1e6, ratio))
    if _core is None:
        print("\ncompiled extension not built; showing the pure-Python "
              "backend only (pip install -e . --no-build-isolation builds it)")


if __name__ == "__main__":
    main()

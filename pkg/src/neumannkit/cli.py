"""Batch front-end.

Subcommands:
    kernel-eval  evaluate the kernel on point pairs from a JSON config
    energy       energy report (En, Qn, a_k) for a charge configuration
    verify       run the verification suite for one domain
    trials       random-angle extremal trials, CSV + JSON summary
    search       simplex search for the extremal angle set

Exit codes: 0 all checks/trials passed, 1 a check or trial failed,
2 usage or configuration error.  Identical inputs (config + seed) produce
byte-identical outputs; every float is printed in full round-trip decimal
precision.
"""

import argparse
import json
import sys

import numpy as np

from . import __version__
from ._backend import BACKEND
from .energy import energy_report, neumann_energy
from .errors import NeumannKitError
from .geometry import (Configuration, domain_from_dict, parse_domain,
                       realize, symmetrize)
from .harness import (DEFAULT_MIN_GAP, DEFAULT_TOL_GAP, extremality_search,
                      run_trials, trials_summary, trials_to_csv)
from .kernels import NeumannKernel
from .verification import dirichlet_asymptotics_check, verification_suite


def _fmt(x):
    """Full-precision decimal for floats (17 significant digits round-trip)."""
    if isinstance(x, float):
        return float(format(x, ".17g"))
    return x


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.floating, float)):
        return _fmt(float(obj))
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, np.ndarray):
        return [_jsonable(v) for v in obj.tolist()]
    return obj


def _dump_json(obj, path):
    text = json.dumps(_jsonable(obj), sort_keys=True, indent=2) + "\n"
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _load_config(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise SystemExit2("cannot read config %r: %s" % (path, exc))
    except json.JSONDecodeError as exc:
        raise SystemExit2("config %r is not valid JSON: %s" % (path, exc))


class SystemExit2(Exception):
    """Usage/configuration error mapped to exit code 2."""


def _tol_overrides(pairs):
    out = {}
    for item in pairs or []:
        if "=" not in item:
            raise SystemExit2("tolerance override must look like name=value, got %r" % item)
        name, _, val = item.partition("=")
        try:
            out[name.strip()] = float(val)
        except ValueError:
            raise SystemExit2("tolerance override %r has a non-numeric value" % item)
    return out


def cmd_kernel_eval(args):
    cfg = _load_config(args.config)
    try:
        domain = parse_domain(cfg["domain"]) if isinstance(cfg["domain"], str) \
            else domain_from_dict(cfg["domain"])
        pairs = cfg["pairs"]
    except KeyError as exc:
        raise SystemExit2("kernel-eval config needs field %s" % exc)
    kernel = NeumannKernel(domain)
    values = [kernel.pair(np.asarray(p, dtype=float), np.asarray(q, dtype=float))
              for p, q in pairs]
    diags = [kernel.diag(np.asarray(p, dtype=float)) for p, q in pairs]
    _dump_json({
        "command": "kernel-eval",
        "domain": domain.describe(),
        "values": values,
        "diagonals_first_point": diags,
        "backend": BACKEND,
        "library_version": __version__,
    }, args.out)
    return 0


def cmd_energy(args):
    cfg = Configuration.from_dict(_load_config(args.config))
    kernel = NeumannKernel(cfg.domain)
    pts, charges = realize(cfg)
    rep = energy_report(kernel, pts, charges,
                        metadata={"domain": cfg.domain.describe(),
                                  "scheme": cfg.scheme.value,
                                  "seed": args.seed,
                                  "library_version": __version__})
    _dump_json({"command": "energy", **rep.to_dict()}, args.out)
    return 0


def cmd_verify(args):
    if args.config:
        cfg = _load_config(args.config)
        domain = domain_from_dict(cfg["domain"])
    elif args.domain:
        domain = parse_domain(args.domain)
    else:
        raise SystemExit2("verify needs --domain or --config")
    overrides = _tol_overrides(args.tol)
    reports = verification_suite(domain, seed=args.seed, overrides=overrides)
    if args.dirichlet_samples > 0:
        from .geometry import Circle, Scheme
        base = Configuration(domain, (Circle(0.5, (0.0,) * (domain.dim - 2), 1.0),),
                             (0.0, 3.141592653589793), Scheme.ALTERNATING)
        pts, charges = realize(base)
        kernel = NeumannKernel(domain)
        reports.append(dirichlet_asymptotics_check(
            pts, charges, kernel, radii=(0.1, 0.05, 0.025),
            mc_samples=args.dirichlet_samples, seed=args.seed))
    payload = {
        "command": "verify",
        "domain": domain.describe(),
        "seed": args.seed,
        "backend": BACKEND,
        "library_version": __version__,
        "checks": [r.to_dict() for r in reports],
        "all_passed": all(r.passed for r in reports),
    }
    _dump_json(payload, args.out)
    return 0 if payload["all_passed"] else 1


def cmd_trials(args):
    base = Configuration.from_dict(_load_config(args.config))
    if args.m is not None:
        import math as _math
        base = Configuration(base.domain, base.circles,
                             tuple(2 * _math.pi * j / args.m for j in range(args.m)),
                             base.scheme)
    records = run_trials(base, args.n, args.seed, tol_gap=args.tol_gap,
                         min_gap=args.min_gap, workers=args.workers)
    csv_text = trials_to_csv(records)
    if args.out and args.out != "-":
        with open(args.out, "w") as fh:
            fh.write(csv_text)
    else:
        sys.stdout.write(csv_text)
    summary = trials_summary(records, args.tol_gap)
    summary.update({"scheme": base.scheme.value, "m": base.m,
                    "domain": base.domain.describe(), "seed": args.seed,
                    "backend": BACKEND, "library_version": __version__})
    if args.summary_out:
        _dump_json(summary, args.summary_out)
    if args.plot:
        _plot_gap_histogram(records, args.plot)
    return 0 if summary["pass_rate"] == 1.0 else 1


def cmd_search(args):
    base = Configuration.from_dict(_load_config(args.config))
    result = extremality_search(base, direction=args.direction,
                                seed=args.seed, restarts=args.restarts)
    kernel = NeumannKernel(base.domain)
    pts_s, charges_s = realize(symmetrize(base))
    en_sym = neumann_energy(kernel, pts_s, charges_s)
    if base.scheme.value == "equal":
        beaten = result.energy < en_sym - args.tol
    else:
        beaten = result.energy > en_sym + args.tol
    payload = {
        "command": "search",
        "domain": base.domain.describe(),
        "scheme": base.scheme.value,
        "seed": args.seed,
        "angles": list(result.angles),
        "energy": result.energy,
        "symmetric_energy": en_sym,
        "gap_to_symmetric": result.gap_to_symmetric,
        "restarts": result.restarts,
        "nfev": result.nfev,
        "beats_symmetric": bool(beaten),
        "backend": BACKEND,
        "library_version": __version__,
    }
    _dump_json(payload, args.out)
    if args.plot and base.m == 2:
        _plot_energy_scan(base, args.plot)
    return 1 if beaten else 0


def _plot_gap_histogram(records, path):
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    gaps = [r.gap for r in records]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.hist(gaps, bins=50)
    ax.set_xlabel("energy gap to symmetric configuration")
    ax.set_ylabel("trials")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def _plot_energy_scan(base, path):
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    from dataclasses import replace as _replace
    from .energy import neumann_energy
    kernel = NeumannKernel(base.domain)
    phis = np.linspace(0.05, 2 * np.pi - 0.05, 200)
    ens = []
    for phi in phis:
        cfg = _replace(base, angles=(0.0, float(phi)))
        pts, charges = realize(cfg)
        ens.append(neumann_energy(kernel, pts, charges))
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(phis, ens)
    ax.axvline(np.pi, linestyle="--", linewidth=0.8)
    ax.set_xlabel("second angle")
    ax.set_ylabel("energy")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="neumannkit",
        description="Closed-form Neumann kernels, discrete charge energies "
                    "and extremal-configuration verification.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--out", default=None, help="output path (default stdout)")

    p = sub.add_parser("kernel-eval", help="evaluate the kernel on point pairs")
    p.add_argument("--config", required=True)
    common(p)
    p.set_defaults(func=cmd_kernel_eval)

    p = sub.add_parser("energy", help="energy report for a configuration")
    p.add_argument("--config", required=True)
    common(p)
    p.set_defaults(func=cmd_energy)

    p = sub.add_parser("verify", help="run the verification suite")
    p.add_argument("--domain", default=None,
                   help="disk | annulus0.3 | ball3 ... (or use --config)")
    p.add_argument("--config", default=None)
    p.add_argument("--tol", action="append", metavar="NAME=VALUE",
                   help="tolerance override, repeatable")
    p.add_argument("--dirichlet-samples", type=int, default=0,
                   help="also run the Dirichlet-integral check with this "
                        "many Monte-Carlo samples")
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("trials", help="random-angle extremal trials")
    p.add_argument("--config", required=True)
    p.add_argument("--n", type=int, default=1000)
    p.add_argument("--m", type=int, default=None,
                   help="override the half-plane count (symmetric base angles)")
    p.add_argument("--tol-gap", type=float, default=DEFAULT_TOL_GAP)
    p.add_argument("--min-gap", type=float, default=DEFAULT_MIN_GAP)
    p.add_argument("--workers", type=int, default=None,
                   help="process count (default: NEUMANNKIT_THREADS or 1)")
    p.add_argument("--summary-out", default=None)
    p.add_argument("--plot", default=None, help="write a gap histogram PNG")
    common(p)
    p.set_defaults(func=cmd_trials)

    p = sub.add_parser("search", help="simplex search for the extremal angles")
    p.add_argument("--config", required=True)
    p.add_argument("--direction", choices=["minimize", "maximize"], default=None)
    p.add_argument("--restarts", type=int, default=20)
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--plot", default=None,
                   help="write a 1-D energy scan PNG (m = 2 only)")
    common(p)
    p.set_defaults(func=cmd_search)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0,) else 0
    try:
        return args.func(args)
    except SystemExit2 as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except NeumannKitError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


def entrypoint():
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()

"""Command-line interface.

Every subcommand writes one JSON document to standard output unless
``--out`` is given.  Exit status: 0 on success, 1 on a domain error, 2 on
a usage error.  Angles are in radians.
"""
from __future__ import annotations

import argparse
import sys

import numpy as np

from . import geometry, lmg, optimizer, oracle, witness
from .exceptions import WitnessError
from .report import emit, format_float
from .states import (
    MeasurementSettings,
    WitnessParams,
    dicke,
    dicke_ghz_superposition,
    ghz,
    spin_squeezed,
)


def _grid(text):
    """``start:stop:count`` -> inclusive linspace."""
    try:
        start, stop, count = text.split(":")
        return np.linspace(float(start), float(stop), int(count))
    except ValueError:
        raise argparse.ArgumentTypeError(f"grid must look like start:stop:count, got {text!r}")


def _add_common(p, with_n=True):
    if with_n:
        p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", default=None)
    p.add_argument("--format", choices=("json", "csv"), default="json")


def _add_meas(p):
    p.add_argument("--theta", type=float, default=0.0)
    p.add_argument("--general", action="store_true", help="arbitrary measurement directions")
    for name in ("theta0", "phi0", "theta1", "phi1"):
        p.add_argument(f"--{name}", type=float, default=0.0)


def _add_params(p):
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--gamma", type=float, required=True)


def _add_state(p):
    p.add_argument("--state", choices=("dicke", "ghz", "squeezed", "superposition"), default="dicke")
    p.add_argument("--k", type=int, default=None, help="Dicke excitations (default ceil(N/2))")
    p.add_argument("--chi", type=float, default=0.0)
    p.add_argument("--omega", type=float, default=0.0)


def _mode_flag(p):
    p.add_argument("--general", action="store_true", help="optimise over arbitrary directions")


def _meas(args):
    if args.general:
        return MeasurementSettings.general(args.theta0, args.phi0, args.theta1, args.phi1)
    return MeasurementSettings.planar(args.theta)


def _params(args):
    return WitnessParams(args.alpha, args.beta, args.gamma)


def _state(args):
    if args.state == "dicke":
        return dicke(args.n, (args.n + 1) // 2 if args.k is None else args.k)
    if args.state == "ghz":
        return ghz(args.n)
    if args.state == "squeezed":
        return spin_squeezed(args.n, args.chi)
    return dicke_ghz_superposition(args.n, args.omega)


def _mode(args):
    return "general" if args.general else "planar"


def _opt_dict(res):
    return {
        "min_expectation": res.best_value,
        **res.best_params.to_dict(),
        "meas": res.best_meas.to_dict(),
        "evaluations": res.evaluations,
        "converged": res.converged,
        "near_optimal_seeds": len(res.near_optimal),
    }


def _angles(meas):
    d = meas.to_dict()
    return ";".join(format_float(v) for k, v in d.items() if k != "mode")


def _record_rows(records, key):
    return [
        {key: int(r.value) if key == "N" else r.value, "min_expectation": r.min_expectation, **r.params.to_dict(), "angles": _angles(r.meas)}
        for r in records
    ]


def cmd_bound(args):
    b = witness.separable_bound(_params(args), _meas(args), args.n)
    return {"F": b.value, "branch": b.active_branch}


def cmd_expect(args):
    state, params, meas = _state(args), _params(args), _meas(args)
    pt = witness.correlation_point(state, meas)
    return {
        "expectation": witness.witness_expectation(state, params, meas),
        "point": [pt.s00, pt.s01, pt.s11],
    }


def cmd_optimize(args):
    return _opt_dict(optimizer.minimize_witness(_state(args), _mode(args)))


def cmd_dicke_sweep(args):
    recs = optimizer.dicke_sweep(np.arange(args.n_min, args.n_max + 1), _mode(args), workers=args.workers)
    return _record_rows(recs, "N")


def cmd_theta_window(args):
    win = optimizer.theta_window(_state(args), _params(args))
    return {"intervals": [list(iv) for iv in win.intervals],
            "widest": list(win.widest) if win else None}


def cmd_chi_scan(args):
    grid = args.grid if args.grid is not None else np.linspace(0.0, 0.2, 41)
    return _record_rows(optimizer.chi_scan(args.n, grid, _mode(args), workers=args.workers), "chi")


def cmd_omega_scan(args):
    grid = args.grid if args.grid is not None else np.linspace(np.pi / 2, np.pi, 51)
    recs = optimizer.omega_scan(args.n, grid, _mode(args), workers=args.workers)
    rows = _record_rows(recs, "omega")
    if args.format == "csv":
        return rows
    win = optimizer.omega_window(args.n, grid, _mode(args), records=recs)
    return {"scan": rows, "windows": [list(iv) for iv in win.intervals]}


def cmd_thermal_scan(args):
    grid = args.grid if args.grid is not None else np.linspace(0.0, 2.0, 21)
    rows = lmg.thermal_scan(lmg.LMGParams(args.n, args.h), grid, mode=_mode(args))
    return [dict(zip(("T", "min_expectation", "s00", "s01", "s11"), r)) for r in rows]


def cmd_tcrit(args):
    return {"T_crit": lmg.critical_temperature(lmg.LMGParams(args.n, args.h), mode=_mode(args))}


def cmd_region(args):
    meas = _meas(args)
    hs = geometry.sample_region(args.n, meas, args.directions)
    verts = geometry.classical_polytope_vertices(args.n, hull=True)
    if args.out is not None:
        geometry.export_region(hs, verts, args.out, args.n, meas)
        return None
    return {
        "n_qubits": args.n,
        "meas": meas.to_dict(),
        "halfspaces": [{"normal": list(h.normal), "offset": h.offset} for h in hs],
        "polytope_vertices": verts.vertices.tolist(),
        "states": [],
    }


def cmd_polytope(args):
    verts = geometry.classical_polytope_vertices(args.n, hull=args.hull)
    if args.format == "csv":
        return [dict(zip(("s00", "s01", "s11"), map(int, v))) for v in verts.vertices]
    return {"n_qubits": args.n, "vertices": verts.vertices.tolist()}


def cmd_verify(args):
    """Oracle comparisons at small N; ``ok`` is false if any check fails."""
    rng = np.random.default_rng(args.seed)
    checks = []
    for N in range(2, args.n_max + 1):
        for _ in range(args.draws):
            params = WitnessParams.from_array(rng.normal(size=3))
            meas = MeasurementSettings.general(*rng.uniform(0, 2 * np.pi, 4))
            F = witness.separable_bound(params, meas, N).value
            brute = oracle.brute_max_separable(N, params, meas, args.samples, seed=args.seed)
            checks.append({"check": "separable_bound", "N": N, "ok": brute <= F + 1e-9,
                           "bound": F, "brute_max": brute})
        if N <= min(args.n_max, 6):
            meas = MeasurementSettings.general(*rng.uniform(0, 2 * np.pi, 4))
            worst = 0.0
            for k in range(N + 1):
                st = dicke(N, k)
                fast = witness.correlation_point(st, meas).as_array()
                full = oracle.full_correlation_point(oracle.embed_symmetric(st), meas).as_array()
                worst = max(worst, float(np.abs(fast - full).max()))
            checks.append({"check": "subspace_vs_full", "N": N, "ok": worst <= 1e-10, "max_error": worst})
    smolin = oracle.full_correlation_point(oracle.smolin_state(), MeasurementSettings.planar(0.7))
    checks.append({"check": "smolin_origin", "ok": bool(np.allclose(smolin.as_array(), 0, atol=1e-12)),
                   "point": smolin.as_array().tolist()})
    return {"ok": all(c["ok"] for c in checks), "seed": args.seed, "checks": checks}


def build_parser():
    parser = argparse.ArgumentParser(prog="symwitness", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bound", help="separable bound F")
    _add_common(p), _add_params(p), _add_meas(p)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("expect", help="witness expectation for a state")
    _add_common(p), _add_params(p), _add_meas(p), _add_state(p)
    p.set_defaults(func=cmd_expect)

    p = sub.add_parser("optimize", help="minimise <A> over witness parameters")
    _add_common(p), _add_state(p), _mode_flag(p)
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("dicke-sweep", help="minimum <A> for central Dicke states over a range of N")
    _add_common(p, with_n=False), _mode_flag(p)
    p.add_argument("--n-min", type=int, default=3)
    p.add_argument("--n-max", type=int, default=30)
    p.set_defaults(func=cmd_dicke_sweep)

    p = sub.add_parser("theta-window", help="planar angles with negative <A>")
    _add_common(p), _add_params(p), _add_state(p)
    p.set_defaults(func=cmd_theta_window)

    for name, func, helptext in (
        ("chi-scan", cmd_chi_scan, "twisting-strength scan of spin-squeezed states"),
        ("omega-scan", cmd_omega_scan, "Dicke/GHZ superposition scan"),
    ):
        p = sub.add_parser(name, help=helptext)
        _add_common(p), _mode_flag(p)
        p.set_defaults(general=True)
        p.add_argument("--planar", dest="general", action="store_false")
        p.add_argument("--grid", type=_grid, default=None, help="start:stop:count")
        p.set_defaults(func=func)

    p = sub.add_parser("thermal-scan", help="LMG thermal states: g(T) and correlation locus")
    _add_common(p), _mode_flag(p)
    p.add_argument("--h", type=float, default=0.01)
    p.add_argument("--grid", type=_grid, default=None, help="start:stop:count over T")
    p.set_defaults(func=cmd_thermal_scan)

    p = sub.add_parser("tcrit", help="critical detection temperature of the LMG thermal state")
    _add_common(p), _mode_flag(p)
    p.add_argument("--h", type=float, default=0.01)
    p.set_defaults(func=cmd_tcrit)

    p = sub.add_parser("region", help="export witness half-spaces and polytope vertices")
    _add_common(p), _add_meas(p)
    p.add_argument("--directions", type=int, default=500)
    p.set_defaults(func=cmd_region)

    p = sub.add_parser("polytope", help="classical polytope vertices")
    _add_common(p)
    p.add_argument("--hull", action="store_true")
    p.set_defaults(func=cmd_polytope)

    p = sub.add_parser("verify", help="run the brute-force oracle checks")
    _add_common(p, with_n=False)
    p.add_argument("--n-max", type=int, default=5)
    p.add_argument("--samples", type=int, default=2000)
    p.add_argument("--draws", type=int, default=5)
    p.set_defaults(func=cmd_verify)
    return parser


def _config(args):
    return {k: (v.tolist() if isinstance(v, np.ndarray) else v)
            for k, v in sorted(vars(args).items()) if k not in ("func", "out", "workers")}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        results = args.func(args)
        if results is not None:
            emit(results, args.format, args.out, seed=args.seed, config=_config(args))
        if args.command == "verify" and not results["ok"]:
            return 1
    except (WitnessError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())

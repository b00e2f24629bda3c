"""Command-line front end: CSV datasets for each figure plus ``verify``.

Every CSV starts with one ``#`` metadata line, then a header row. Floats are
written with ``repr`` so that re-reading a file reproduces values exactly.
"""
from __future__ import annotations

import argparse
import io
import math
import sys

from . import __version__, checks, gw_sensor, holevo, protocol, tradeoff
from .model import SignalParams
from .numerics import RngState

COMMANDS = ("boundary", "holevo", "phi-scan", "protocol-sim", "mu-sweep", "gw-frontier", "verify")
DEFAULT_POINTS = {"boundary": 200, "holevo": 200, "phi-scan": 721, "protocol-sim": 5,
                  "mu-sweep": 101, "gw-frontier": 200}
DEFAULT_DELTA_RATIOS = (0.8, 0.6, 0.4, 0.0)
TANGENCY_POINTS = 10_000


class UsageError(Exception):
    pass


def _fmt(x):
    if isinstance(x, bool):
        return "1" if x else "0"
    if isinstance(x, int):
        return str(x)
    return repr(float(x))


def _row(values):
    return ",".join(_fmt(v) for v in values) + "\n"


def _meta(command, params):
    parts = [f"irtr {__version__}", f"command={command}"]
    parts += [f"{k}={_fmt(v) if isinstance(v, (int, float)) else v}" for k, v in params.items()]
    return "# " + " ".join(parts) + "\n"


# --- argument handling -------------------------------------------------------

def build_parser():
    p = argparse.ArgumentParser(prog="irtr", description=__doc__.splitlines()[0])
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--config", metavar="PATH", help="key=value file; explicit flags win")
    p.add_argument("--mu", type=float)
    p.add_argument("--w", type=float)
    p.add_argument("--phi", type=float, action="append", help="measurement phase (repeatable)")
    p.add_argument("--a-resc", type=float, help="true rescaled A' for protocol-sim (default 0)")
    p.add_argument("--b-resc", type=float, help="true rescaled B' for protocol-sim (default 0)")
    p.add_argument("--omega-hz", type=float)
    p.add_argument("--gamma-hz", type=float)
    p.add_argument("--delta", type=float, action="append", help="detuning in Hz (repeatable)")
    p.add_argument("--delta-over-omega", type=float, action="append", help="detuning / signal freq (repeatable)")
    p.add_argument("--t-sec", type=float)
    p.add_argument("--norm", type=float)
    p.add_argument("--n-points", type=int)
    p.add_argument("--n-samples", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--out", metavar="PATH")
    p.add_argument("--emit-plot-script", action="store_true")
    p.add_argument("--fast", action="store_true", help="verify: skip the Monte-Carlo check")
    p.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)
    return p


_LIST_KEYS = {"phi", "delta", "delta_over_omega"}
_BOOL_KEYS = {"emit_plot_script", "fast", "inject_fault"}


def read_config(path, parser):
    """Parse a ``key = value`` file into argparse destinations."""
    types = {a.dest: a.type for a in parser._actions if a.dest != "help"}
    out = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected key=value")
            key, value = (s.strip() for s in line.split("=", 1))
            key = key.replace("-", "_")
            if key not in types or key in ("command", "config"):
                raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
            try:
                if key in _BOOL_KEYS:
                    out[key] = value.lower() in ("1", "true", "yes", "on")
                elif key in _LIST_KEYS:
                    out[key] = [float(v) for v in value.split(",") if v.strip()]
                else:
                    out[key] = types[key](value)
            except ValueError as exc:
                raise UsageError(f"{path}:{lineno}: bad value for {key}: {exc}") from None
    return out


def parse_args(argv):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.config:
        try:
            cfg = read_config(args.config, parser)
        except OSError as exc:
            raise UsageError(f"cannot read config: {exc}") from None
        for key, value in cfg.items():
            current = getattr(args, key)
            if current is None or current is False:
                setattr(args, key, value)
    if args.n_points is None:
        args.n_points = DEFAULT_POINTS.get(args.command, 0)
    if args.seed is None:
        args.seed = 0
    return args


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        flags = ", ".join("--" + n.replace("_", "-") for n in missing)
        raise UsageError(f"{args.command} requires {flags}")


def _check_mu(args):
    _need(args, "mu")
    if not 0.0 <= args.mu <= 1.0:
        raise UsageError(f"--mu must lie in [0, 1], got {args.mu}")


def _check_points(args, minimum=2):
    if args.n_points < minimum:
        raise UsageError(f"--n-points must be >= {minimum}")


# --- commands ---------------------------------------------------------------

def cmd_boundary(args, buf):
    _check_mu(args)
    _check_points(args)
    curve = tradeoff.boundary_curve(args.mu, args.n_points)
    buf.write(_meta(args.command, {"mu": args.mu, "n_points": args.n_points}))
    buf.write("e_a,e_b\n")
    for p in curve.points:
        buf.write(_row((p.e_a, p.e_b)))


def cmd_holevo(args, buf):
    _check_mu(args)
    _need(args, "w")
    _check_points(args)
    if not 0.0 < args.w < 1.0:
        raise UsageError(f"--w must lie in (0, 1), got {args.w}")
    res = holevo.hcrb(args.w, args.mu)
    gap = holevo.tangency_gap(args.w, args.mu, TANGENCY_POINTS, res)
    buf.write(_meta(args.command, {"mu": args.mu, "w": args.w, "n_points": args.n_points}))
    buf.write("sigma_h,phi_star,e_a,e_b\n")
    for p in holevo.holevo_line(res, args.n_points):
        buf.write(_row((res.sigma, res.phi_star, p.e_a, p.e_b)))
    buf.write(f"# tangency_gap={_fmt(gap)}\n")


def cmd_phi_scan(args, buf):
    _check_mu(args)
    _check_points(args)
    buf.write(_meta(args.command, {"mu": args.mu, "n_points": args.n_points}))
    buf.write("phi,lhs,condition_met\n")
    for i in range(args.n_points):
        phi = math.pi * i / (args.n_points - 1)
        buf.write(_row((phi, protocol.lhs_piecewise(phi, args.mu), protocol.saturation_condition(phi, args.mu))))


def _default_phases(mu, n):
    lo = protocol.saturation_onset(mu)
    if n == 1 or lo == math.pi:
        return [math.pi]
    return [lo + (math.pi - lo) * i / (n - 1) for i in range(n)]


def cmd_protocol_sim(args, buf):
    _check_mu(args)
    n = 100_000 if args.n_samples is None else args.n_samples
    if n < 100:
        raise UsageError("--n-samples must be >= 100")
    if args.seed < 0 or args.seed >= 2**64:
        raise UsageError("--seed must be an unsigned 64-bit integer")
    _check_points(args, 1)
    phis = args.phi if args.phi else _default_phases(args.mu, args.n_points)
    for phi in phis:
        if not 0.0 <= phi <= math.pi:
            raise UsageError(f"--phi must lie in [0, pi], got {phi}")
    a = args.a_resc or 0.0
    b = args.b_resc or 0.0
    sig = SignalParams.from_rescaled(a, b)
    buf.write(_meta(args.command, {"mu": args.mu, "n_samples": n, "seed": args.seed, "a_resc": a, "b_resc": b}))
    buf.write("phi,condition_met,e_a,e_b,e_a_mc,e_b_mc,z_a,z_b\n")
    # relative standard error of a Gaussian sample variance
    rse = math.sqrt(2.0 / (n - 1))
    for i, phi in enumerate(phis):
        pt = protocol.error_point_from_phi(phi, args.mu)
        dist = protocol.outcome_distribution(phi, args.mu, sig)
        samples = protocol.sample_outcomes(dist, n, RngState((args.seed + i) % 2**64))
        _, _, va, vb = protocol.mle(samples)
        ea, eb = va * n, vb * n
        buf.write(_row((phi, protocol.saturation_condition(phi, args.mu), pt.e_a, pt.e_b, ea, eb,
                        (ea / pt.e_a - 1.0) / rse, (eb / pt.e_b - 1.0) / rse)))


def cmd_mu_sweep(args, buf):
    _check_points(args)
    buf.write(_meta(args.command, {"n_points": args.n_points}))
    buf.write("mu,e_equal\n")
    for i in range(args.n_points):
        mu = i / (args.n_points - 1)
        buf.write(_row((mu, tradeoff.equal_weight_error(mu))))


def cmd_gw_frontier(args, buf):
    _need(args, "omega_hz", "gamma_hz", "t_sec", "norm")
    _check_points(args)
    if args.delta and args.delta_over_omega:
        raise UsageError("give either --delta or --delta-over-omega, not both")
    if args.delta:
        deltas = list(args.delta)
    else:
        ratios = args.delta_over_omega or DEFAULT_DELTA_RATIOS
        deltas = [r * args.omega_hz for r in ratios]
    buf.write(_meta(args.command, {"omega_hz": args.omega_hz, "gamma_hz": args.gamma_hz,
                                   "t_sec": args.t_sec, "norm": args.norm, "n_points": args.n_points}))
    buf.write("delta_hz,mu,s_a,s_b,s_qcrb\n")
    for delta in deltas:
        try:
            cfg = gw_sensor.DetunedConfig(args.omega_hz, delta, args.gamma_hz, args.t_sec, args.norm)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        mu = gw_sensor.mu_detuned(cfg)
        qcrb = gw_sensor.individual_qcrb_sensitivity(cfg).s_a
        for p in gw_sensor.sensitivity_frontier(cfg, args.n_points):
            buf.write(_row((delta, mu, p.s_a, p.s_b, qcrb)))


def cmd_verify(args, out):
    results = checks.run_all(fast=args.fast, inject_fault=args.inject_fault)
    for c in results:
        out.write(f"{c.label}  {c.name}  ({c.detail})\n")
    failed = sum(c.passed is False for c in results)
    out.write(f"{len(results) - failed}/{len(results)} checks did not fail\n" if failed
              else f"all {len(results)} checks passed or skipped\n")
    return 1 if failed else 0


HANDLERS = {
    "boundary": cmd_boundary,
    "holevo": cmd_holevo,
    "phi-scan": cmd_phi_scan,
    "protocol-sim": cmd_protocol_sim,
    "mu-sweep": cmd_mu_sweep,
    "gw-frontier": cmd_gw_frontier,
}

PLOT_COLUMNS = {
    "boundary": ("e_a", "e_b"),
    "holevo": ("e_a", "e_b"),
    "phi-scan": ("phi", "lhs"),
    "protocol-sim": ("e_a", "e_b"),
    "mu-sweep": ("mu", "e_equal"),
    "gw-frontier": ("s_a", "s_b"),
}

PLOT_TEMPLATE = '''\
"""Plot {csv} (written by irtr {command})."""
import matplotlib.pyplot as plt
import numpy as np

data = np.genfromtxt({csv!r}, delimiter=",", comments="#", names=True)
fig, ax = plt.subplots()
ax.plot(data[{x!r}], data[{y!r}], "{style}")
ax.set_xlabel({x!r})
ax.set_ylabel({y!r})
fig.savefig({png!r}, dpi=150)
'''


def write_plot_script(command, out_path):
    x, y = PLOT_COLUMNS[command]
    style = "o" if command == "protocol-sim" else "-"
    script = PLOT_TEMPLATE.format(csv=out_path, command=command, x=x, y=y, style=style,
                                  png=out_path.rsplit(".", 1)[0] + ".png")
    with open(out_path + ".plot.py", "w", encoding="utf-8", newline="\n") as fh:
        fh.write(script)


def main(argv=None):
    try:
        args = parse_args(sys.argv[1:] if argv is None else argv)
        if args.command == "verify":
            return cmd_verify(args, sys.stdout)
        if args.emit_plot_script and not args.out:
            raise UsageError("--emit-plot-script needs --out")
        buf = io.StringIO()
        HANDLERS[args.command](args, buf)
    except UsageError as exc:
        print(f"irtr: error: {exc}", file=sys.stderr)
        return 2
    text = buf.getvalue()
    if args.out is None:
        sys.stdout.write(text)
        return 0
    try:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        if args.emit_plot_script:
            write_plot_script(args.command, args.out)
    except OSError as exc:
        print(f"irtr: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())

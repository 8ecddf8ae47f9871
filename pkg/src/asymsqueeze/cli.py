"""Command-line front end: parameter sweeps and the oracle verification suite.

Subcommands
-----------
negativity : log-negativity surface over (lambda, gamma)
bell       : CHSH value over any subset of lambda, gamma, J, theta, phi
fidelity   : teleportation fidelity (or fidelity difference) over (lambda, gamma)
verify     : closed-form-versus-Fock-oracle comparison suite

Sweep axes take either a single value (``--gamma 0.5``) or an inclusive range
``min:max:steps`` (``--lambda 0:1.5:50``).  The output grid is the Cartesian
product of all range axes in the fixed order lambda, gamma, j, theta, phi, and
is written deterministically: identical invocations produce byte-identical
files.  Floats are rendered with %.17g; CSV uses LF endings and a single
``#``-prefixed metadata line, JSON a top-level {meta, grid} object.

Exit codes: 0 ok, 1 validation error, 2 tolerance breach, 3 I/O failure.
"""

import argparse
import json
import math
import re
import sys
from dataclasses import dataclass

import numpy as np

from . import __version__
from .errors import CutoffTooSmallError, ValidationError, VerificationError
from .gaussian import PhasePoint, log_negativity
from .state import (
    GAMMA_MAX,
    LAMBDA_MAX,
    SqueezeParams,
    cf_closed,
    covariance,
    fock_amplitudes,
    wigner_closed,
)
from . import _kernels, fock
from .bell import BellSetting, bell_function
from .teleport import (
    fidelity_coherent_closed,
    fidelity_difference,
    fidelity_squeezed_closed,
)

_AXIS_BOUNDS = {
    "lambda": (0.0, LAMBDA_MAX),
    "gamma": (-GAMMA_MAX, GAMMA_MAX),
    "j": (0.0, 10.0),
    "theta": (-math.tau, math.tau),
    "phi": (-math.tau, math.tau),
}


class _Parser(argparse.ArgumentParser):
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        # treat tokens like "-1:1:11" (negative range start) as values, not
        # flags; stdlib argparse only recognizes bare negative numbers
        self._negative_number_matcher = re.compile(r"^-(\d|\.\d)")

    def error(self, message):
        raise ValidationError(message)


@dataclass
class Axis:
    name: str
    values: np.ndarray
    swept: bool


def _parse_axis(name, text):
    lo, hi = _AXIS_BOUNDS[name]

    def check(v):
        if not math.isfinite(v) or not (lo <= v <= hi):
            raise ValidationError(f"--{name} value {v} outside [{lo}, {hi}]")
        return v

    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise ValidationError(f"--{name}: range syntax is min:max:steps, got {text!r}")
        try:
            a, b, n = float(parts[0]), float(parts[1]), int(parts[2])
        except ValueError:
            raise ValidationError(f"--{name}: cannot parse range {text!r}") from None
        if n < 2:
            raise ValidationError(f"--{name}: a range needs at least 2 steps")
        if not a < b:
            raise ValidationError(f"--{name}: range needs min < max, got {a} >= {b}")
        check(a)
        check(b)
        return Axis(name, np.linspace(a, b, n), swept=True)
    try:
        v = float(text)
    except ValueError:
        raise ValidationError(f"--{name}: cannot parse value {text!r}") from None
    return Axis(name, np.array([check(v)]), swept=False)


def _fmt(value):
    return f"{value:.17g}"


def _write_output(path, fmt, quantity, source, axes, values):
    swept = [ax for ax in axes if ax.swept]
    fixed = {ax.name: float(ax.values[0]) for ax in axes if not ax.swept}
    columns = [ax.name for ax in swept] + [quantity]
    grids = np.meshgrid(*[ax.values for ax in swept], indexing="ij") if swept else []
    coords = [g.ravel() for g in grids]
    flat = values.ravel()

    if fmt == "csv":
        meta_bits = [f"quantity={quantity}", f"source={source}", f"version={__version__}"]
        meta_bits += [f"{k}={_fmt(v)}" for k, v in sorted(fixed.items())]
        lines = ["# " + " ".join(meta_bits), ",".join(columns)]
        for i in range(flat.size):
            row = [_fmt(c[i]) for c in coords]
            row.append("" if np.isnan(flat[i]) else _fmt(float(flat[i])))
            lines.append(",".join(row))
        text = "\n".join(lines) + "\n"
    else:
        records = []
        for i in range(flat.size):
            rec = {swept[k].name: float(coords[k][i]) for k in range(len(swept))}
            rec[quantity] = None if np.isnan(flat[i]) else float(flat[i])
            records.append(rec)
        doc = {
            "meta": {
                "quantity": quantity,
                "source": source,
                "version": __version__,
                "fixed": fixed,
            },
            "grid": records,
        }
        text = json.dumps(doc, sort_keys=True, indent=1) + "\n"

    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)


def _product_params(axes):
    grids = np.meshgrid(*[ax.values for ax in axes], indexing="ij")
    return [g.ravel() for g in grids], grids[0].shape if grids else ()


def _cmd_negativity(args):
    axes = [_parse_axis("lambda", args.lam), _parse_axis("gamma", args.gamma)]
    (lams, gams), shape = _product_params(axes)
    vals = np.empty(lams.size)
    for i in range(lams.size):
        vals[i] = log_negativity(covariance(SqueezeParams(lams[i], gams[i])))
    _write_output(args.output, args.format, "log_negativity", "ppt-symplectic-spectrum", axes, vals.reshape(shape))
    return 0


def _cmd_bell(args):
    axes = [
        _parse_axis("lambda", args.lam),
        _parse_axis("gamma", args.gamma),
        _parse_axis("j", args.j),
        _parse_axis("theta", args.theta),
        _parse_axis("phi", args.phi),
    ]
    flats, shape = _product_params(axes)
    vals = _kernels.bell_values(*flats)
    if args.clip_at_2:
        vals = np.where(vals > 2.0, vals, np.nan)
    _write_output(args.output, args.format, "bell", "displaced-parity-closed-form", axes, vals.reshape(shape))
    return 0


def _cmd_fidelity(args):
    if not math.isfinite(args.r) or abs(args.r) > 3.0:
        raise ValidationError(f"--r value {args.r} outside [-3, 3]")
    axes = [_parse_axis("lambda", args.lam), _parse_axis("gamma", args.gamma)]
    (lams, gams), shape = _product_params(axes)
    vals = np.empty(lams.size)
    for i in range(lams.size):
        params = SqueezeParams(lams[i], gams[i])
        if args.difference:
            vals[i] = fidelity_difference(params, args.r)
        elif args.r == 0.0:
            vals[i] = fidelity_coherent_closed(params).value
        else:
            vals[i] = fidelity_squeezed_closed(params, args.r).value
    quantity = "fidelity_difference" if args.difference else "fidelity"
    _write_output(args.output, args.format, quantity, "cf-overlap-closed-form", axes, vals.reshape(shape))
    return 0


def _verify_points(grid, rng):
    count = 6 if grid == "coarse" else 20
    pts = []
    for _ in range(count):
        alpha = rng.uniform(-0.35, 0.35) + 1j * rng.uniform(-0.35, 0.35)
        beta = rng.uniform(-0.35, 0.35) + 1j * rng.uniform(-0.35, 0.35)
        pts.append(PhasePoint.from_complex(alpha, beta))
    return pts


def _cmd_verify(args):
    if args.lam is not None or args.gamma is not None:
        lam = args.lam if args.lam is not None else 0.5
        gamma = args.gamma if args.gamma is not None else 0.0
        pairs = [(lam, gamma)]
    elif args.grid == "coarse":
        pairs = [(0.3, 0.7), (0.5, 1.0)]
    else:
        pairs = [(0.3, 0.7), (0.5, 1.0), (0.6, -0.5), (0.45, 0.0)]
    rng = np.random.default_rng(20240814)
    points = _verify_points(args.grid, rng)
    checks = {
        "state-overlap": 1e-8,
        "covariance": 1e-8,
        "wigner": 1e-6,
        "char-fn": 1e-6,
        "log-negativity": 1e-3,
        "bell-combination": 1e-6,
    }
    devs = {name: 0.0 for name in checks}

    for lam, gamma in pairs:
        params = SqueezeParams(lam, gamma)
        oracle = fock.build_state_exponential(params, args.cutoff)
        series = fock_amplitudes(params, args.cutoff)
        devs["state-overlap"] = max(devs["state-overlap"], 1.0 - oracle.overlap(series))
        sigma = covariance(params)
        numeric = fock.covariance_numeric(oracle)
        devs["covariance"] = max(
            devs["covariance"], float(np.max(np.abs(numeric.entries - sigma.entries)))
        )
        for pt in points:
            devs["wigner"] = max(
                devs["wigner"], abs(fock.wigner_numeric(oracle, pt) - wigner_closed(params, pt))
            )
            devs["char-fn"] = max(
                devs["char-fn"], abs(fock.cf_numeric(oracle, pt) - cf_closed(params, pt))
            )
        devs["log-negativity"] = max(
            devs["log-negativity"],
            abs(fock.log_negativity_numeric(oracle) - log_negativity(sigma)),
        )
        for setting in (BellSetting(j=0.05, theta=math.pi, phi=0.0), BellSetting(j=0.02, theta=2.1, phi=0.7)):
            closed = bell_function(params, setting).value
            combo = math.pi ** 2 * (
                fock.wigner_numeric(oracle, PhasePoint.origin())
                + fock.wigner_numeric(oracle, PhasePoint.from_complex(setting.alpha, 0j))
                + fock.wigner_numeric(oracle, PhasePoint.from_complex(0j, setting.beta))
                - fock.wigner_numeric(oracle, PhasePoint.from_complex(setting.alpha, setting.beta))
            )
            devs["bell-combination"] = max(devs["bell-combination"], abs(closed - combo))

    failed = []
    for name, tol in checks.items():
        status = "PASS" if devs[name] <= tol else "FAIL"
        print(f"check {name:<16s} max deviation {devs[name]:.3e}  (tolerance {tol:.0e})  {status}")
        if status == "FAIL":
            failed.append(name)
    if failed:
        raise VerificationError(f"tolerance breached by: {', '.join(failed)}")
    print(f"all {len(checks)} oracle checks passed for {len(pairs)} parameter pair(s)")
    return 0


def build_parser():
    parser = _Parser(prog="asymsqueeze", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_io(p):
        p.add_argument("--output", default=None, help="output file (default: stdout)")
        p.add_argument("--format", choices=("csv", "json"), default="csv")

    p_neg = sub.add_parser("negativity", help="log-negativity sweep over lambda/gamma")
    p_neg.add_argument("--lambda", dest="lam", default="0:1.5:50", metavar="SPEC")
    p_neg.add_argument("--gamma", default="-2:2:50", metavar="SPEC")
    add_io(p_neg)
    p_neg.set_defaults(func=_cmd_negativity)

    p_bell = sub.add_parser("bell", help="CHSH sweep over lambda/gamma/J/theta/phi")
    p_bell.add_argument("--lambda", dest="lam", default="0.5", metavar="SPEC")
    p_bell.add_argument("--gamma", default="0", metavar="SPEC")
    p_bell.add_argument("--j", default="0.01", metavar="SPEC")
    p_bell.add_argument("--theta", default=f"{math.pi:.17g}", metavar="SPEC")
    p_bell.add_argument("--phi", default="0", metavar="SPEC")
    p_bell.add_argument("--clip-at-2", action="store_true", help="blank values not exceeding the local bound 2")
    add_io(p_bell)
    p_bell.set_defaults(func=_cmd_bell)

    p_fid = sub.add_parser("fidelity", help="teleportation fidelity sweep over lambda/gamma")
    p_fid.add_argument("--lambda", dest="lam", default="0:1.5:50", metavar="SPEC")
    p_fid.add_argument("--gamma", default="-2:2:50", metavar="SPEC")
    p_fid.add_argument("--r", type=float, default=0.0, help="input squeeze (0 = coherent input)")
    p_fid.add_argument("--difference", action="store_true", help="emit F(r) - F(0) instead of F")
    add_io(p_fid)
    p_fid.set_defaults(func=_cmd_fidelity)

    p_ver = sub.add_parser("verify", help="closed-form vs Fock-oracle checks")
    p_ver.add_argument("--cutoff", type=int, default=40)
    p_ver.add_argument("--grid", choices=("coarse", "fine"), default="coarse")
    p_ver.add_argument("--lambda", dest="lam", type=float, default=None)
    p_ver.add_argument("--gamma", type=float, default=None)
    p_ver.set_defaults(func=_cmd_verify)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (CutoffTooSmallError, VerificationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())

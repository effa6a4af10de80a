"""Command-line front end.

Exit codes: 0 success, 2 invalid input, 3 a self-check failed.
"""

from __future__ import annotations

import argparse
import configparser
import math
import re
import sys

import numpy as np

from . import gram, grassmann, hardy, infinite, metrics
from .errors import BranchAmbiguity, RkgeoError, ValidationError
from .kernels import SpaceSpec, parse_point

EXIT_OK, EXIT_INVALID, EXIT_CHECK = 0, 2, 3

GEODESIC_LIMITS = {
    "endpoint": 1e-8,
    "codiagP": 1e-9,
    "codiagQ": 1e-9,
    "pairing": 1e-9,
    "distance_identity": 1e-9,
}

DEFAULT_GAMMA = 0.5 * complex(math.cos(math.pi / 4), math.sin(math.pi / 4))

REPRO_NAMES = ("example-2-7", "weyl", "gs-pair", "koosis", "hankel-probe")


class CheckFailed(Exception):
    """Raised inside a command when a self-check fails."""


# -- output -------------------------------------------------------------------

def _num(x):
    x = float(x)
    if math.isnan(x):
        return '"nan"'
    if math.isinf(x):
        return '"inf"' if x > 0 else '"-inf"'
    return format(x, ".17g")


def to_json(obj, indent=0):
    """Deterministic JSON with every float printed to 17 significant digits."""
    pad = "  " * (indent + 1)
    end = "  " * indent
    if obj is None:
        return "null"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _num(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return to_json([obj.real, obj.imag], indent)
    if isinstance(obj, str):
        import json

        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{to_json(str(k))}: {to_json(v, indent + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, np.ndarray):
        obj = obj.tolist()
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [pad + to_json(v, indent + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def _emit(obj, out):
    out.write(to_json(obj) + "\n")


# -- parsing helpers -----------------------------------------------------------

def parse_space(text):
    """``hardy``, ``bergman``, ``bargmann``, ``sobolev``,
    ``drury-arveson:N``, ``weighted-hardy:RULE[:R]`` or
    ``shift-invariant:z1;z2;...``."""
    name, _, rest = text.strip().partition(":")
    name = name.lower().replace("_", "-")
    if name == "hardy":
        return SpaceSpec.hardy()
    if name == "bergman":
        return SpaceSpec.bergman()
    if name in ("bargmann", "segal-bargmann", "fock"):
        return SpaceSpec.bargmann()
    if name == "sobolev":
        return SpaceSpec.sobolev()
    if name == "drury-arveson":
        try:
            return SpaceSpec.drury_arveson(int(rest or 2))
        except ValueError as exc:
            raise ValidationError(f"bad dimension in {text!r}") from exc
    if name == "weighted-hardy":
        rule, _, radius = rest.partition(":")
        rule = rule or "n+1"
        if rule not in hardy_weight_presets():
            raise ValidationError(f"unknown weight rule {rule!r}")
        return SpaceSpec.weighted_hardy(rule, float(radius) if radius else 1.0)
    if name == "shift-invariant":
        if not rest:
            raise ValidationError("shift-invariant space needs zeros, e.g. shift-invariant:0.5,0")
        return SpaceSpec.shift_invariant([parse_point(p) for p in rest.split(";")])
    raise ValidationError(f"unknown space {text!r}")


def hardy_weight_presets():
    from .kernels import WEIGHT_PRESETS

    return WEIGHT_PRESETS


def _points(values, what):
    if not values:
        raise ValidationError(f"missing point set {what}")
    tokens = []
    for v in values:
        if v.strip().startswith("["):
            tokens.append(v)
        else:
            tokens.extend(v.split())
    return [parse_point(t) for t in tokens]


def _points_file(path):
    from pathlib import Path

    return [parse_point(s) for s in Path(path).read_text().splitlines()
            if s.strip() and not s.lstrip().startswith("#")]


def _point_set(args, name):
    val = getattr(args, name, None)
    path = getattr(args, f"{name}_file", None)
    if path:
        return _points_file(path)
    return _points(val, f"--{name}")


# -- commands ----------------------------------------------------------------

def cmd_verdict(args, out):
    space = args.space_spec
    A, B = _point_set(args, "a"), _point_set(args, "b")
    _emit(gram.geodesic_verdict(space, A, B, args.tol).to_json(), out)
    return EXIT_OK


def cmd_geodesic(args, out):
    space = args.space_spec
    A, B = _point_set(args, "a"), _point_set(args, "b")
    verdict = gram.geodesic_verdict(space, A, B, args.tol)
    if verdict.kind == gram.VerdictKind.INFINITELY_MANY:
        raise CheckFailed(f"BranchAmbiguity: geodesics are not unique (dims {verdict.dims})")
    if verdict.kind != gram.VerdictKind.UNIQUE:
        raise CheckFailed(f"no geodesic exists (dims {verdict.dims})")
    frame = grassmann.generic_frame(space, A, B)
    try:
        X = grassmann.geodesic_exponent(frame)
    except BranchAmbiguity as exc:
        raise CheckFailed(f"BranchAmbiguity: {exc}") from exc
    if isinstance(args.t_grid, list):
        ts = np.array(args.t_grid, dtype=float)
    else:
        ts = np.linspace(0.0, 1.0, args.t_grid) if args.t_grid else np.array([])
    if args.format == "csv":
        out.write(grassmann.geodesic_csv(X, frame, ts if ts.size else [0.0, 0.5, 1.0]))
    else:
        payload = X.to_json(frame)
        if args.csv:
            with open(args.csv, "w") as fh:
                fh.write(grassmann.geodesic_csv(X, frame, ts if ts.size else [0.0, 0.5, 1.0]))
        _emit(payload, out)
    failed = [k for k, lim in GEODESIC_LIMITS.items() if not X.residuals[k] <= lim]
    if not X.norm <= math.pi / 2 + 1e-10:
        failed.append("norm")
    if failed:
        raise CheckFailed("residuals above tolerance: " + ", ".join(failed))
    return EXIT_OK


def cmd_metric(args, out):
    space = args.space_spec
    a, b = parse_point(args.p1), parse_point(args.p2)
    if args.kind == "rho":
        val = metrics.rho(a, b)
    else:
        val = metrics.METRICS[args.kind](space, a, b)
    out.write(_num(val) + "\n")
    return EXIT_OK


def cmd_bounds(args, out):
    if args.space_spec.variant != "hardy":
        raise ValidationError("bounds are available for the Hardy space only")
    A, B = _point_set(args, "a"), _point_set(args, "b")
    rep = hardy.bound_suite(A, B)
    if (args.format or "csv") == "json":
        _emit([{"bound_name": r.name, "lhs": r.lhs, "rhs": r.rhs, "slack": r.slack,
                "status": "asserted" if r.asserted else "diagnostic"} for r in rep.rows], out)
    else:
        out.write(rep.to_csv())
    bad = rep.failures()
    if bad:
        raise CheckFailed("bounds violated: " + ", ".join(r.name for r in bad))
    return EXIT_OK


def _ce_json(ce):
    return {"A": list(ce.A), "b": list(ce.b), "roots": list(ce.roots),
            "sv_ratio": ce.sv_ratio, "det": ce.det}


def cmd_counterexample(args, out):
    mode = args.mode
    if mode == "demo":
        from . import exact

        b = [exact.to_complex(p) for p in exact.DEMO_B]
        c = [exact.to_complex(p) for p in exact.DEMO_C]
        ce = gram.bergman_counterexample_from_coeffs(b, c)
        a12 = [exact.to_complex(p) for p in exact.DEMO_A12]
        comp = gram.bergman_counterexample_complete(a12[0], a12[1], b)
        payload = {"from_coeffs": _ce_json(ce),
                   "completion": {"a3": comp.a3, "roots": list(comp.roots),
                                  "sv_ratio": comp.sv_ratio,
                                  "deflation_residual": comp.deflation_residual}}
        if args.exact:
            roots = exact.exact_numerator_roots()
            inside = [complex(r) for r in roots if abs(r) < 1]
            payload["exact_roots"] = inside
            payload["exact_det_abs"] = float(abs(exact.bergman_det_mp(inside, exact.DEMO_B)))
        ratio = max(ce.sv_ratio, comp.sv_ratio)
    elif mode == "coeffs":
        b = _point_set(args, "b")
        c = _points(args.c, "--c")
        ce = gram.bergman_counterexample_from_coeffs(b, c)
        payload, ratio = _ce_json(ce), ce.sv_ratio
    elif mode == "complete":
        a1, a2 = _point_set(args, "a")[:2]
        b = _point_set(args, "b")
        comp = gram.bergman_counterexample_complete(a1, a2, b)
        payload = {"a3": comp.a3, "roots": list(comp.roots), "sv_ratio": comp.sv_ratio,
                   "deflation_residual": comp.deflation_residual}
        ratio = comp.sv_ratio
    else:
        trial, ce = gram.search_bergman_counterexample(args.n, seed=args.seed,
                                                       max_trials=args.trials)
        payload = {"trial": trial, **_ce_json(ce)}
        ratio = ce.sv_ratio
    _emit(payload, out)
    if not ratio <= 1e-8:
        raise CheckFailed(f"cross-Gram singular value ratio {ratio:.3g} above 1e-8")
    return EXIT_OK


def _sequence(args):
    if args.file:
        return infinite.SequenceSpec.from_file(args.file)
    if args.rule == "geometric":
        return infinite.SequenceSpec.geometric(args.K, args.q)
    if args.rule == "harmonic-shifted":
        return infinite.SequenceSpec.harmonic_shifted(args.K, args.shift)
    raise ValidationError(f"unknown rule {args.rule!r}")


def _truncations(args):
    """Explicit ``--a``/``--b`` sets, else the sequence rule and its paired sequence."""
    if args.a or args.a_file:
        A, B = _point_set(args, "a"), _point_set(args, "b")
    else:
        pair = infinite.guillory_sarason_pair(_sequence(args), grid_size=args.grid)
        A, B = list(pair.A), list(pair.B)
    if args.extra:
        B = list(B) + _points(args.extra, "--extra")
    return A, B


def cmd_infinite(args, out):
    verb = args.verb
    if verb == "gs-pair":
        seq = _sequence(args)
        pair = infinite.guillory_sarason_pair(seq, grid_size=args.grid)
        _emit({"blaschke_partial_sums": infinite.blaschke_condition(seq),
               "pairs": pair.to_json()}, out)
        if not all(s.meets_target for s in pair.steps):
            raise CheckFailed("some pair misses its 2^-k target")
    elif verb == "koosis":
        gamma = parse_point(args.gamma) if args.gamma else DEFAULT_GAMMA
        ks, zs = infinite.koosis_zeros(args.a_param, gamma, range(args.kmin, args.kmax + 1))
        res = infinite.koosis_residuals(args.a_param, gamma, zs)
        _emit({"k": ks, "zeros": list(zs), "residuals": res}, out)
        if not (np.all(res <= 1e-10) and np.all(np.abs(zs) < 1)):
            raise CheckFailed("Koosis zero residual above 1e-10")
    elif verb == "index":
        A, B = _truncations(args)
        _emit(infinite.winding_index(A, B, args.radii).to_json(), out)
    else:
        A, B = _truncations(args)
        _emit(infinite.compactness_diagnostics(A, B, tuple(args.p)).to_json(), out)
    return EXIT_OK


def cmd_repro(args, out):
    from . import repro

    result = repro.run(args.name, seed=args.seed)
    if args.format == "csv":
        out.write("check,value,threshold,status\n")
        for c in result["checks"]:
            out.write(f"{c['name']},{_num(c['value'])},{_num(c['threshold'])},{c['status']}\n")
    else:
        _emit(result, out)
    if result["status"] == "FAIL":
        raise CheckFailed(f"repro {args.name}: hard assertion failed")
    return EXIT_OK


# -- argument parsing -----------------------------------------------------------

def _add_sets(p, names=("a", "b")):
    for n in names:
        p.add_argument(f"--{n}", nargs="+", metavar="RE,IM", help=f"points of set {n.upper()}")
        p.add_argument(f"--{n}-file", dest=f"{n}_file", help="file with one point per line")


def _add_globals(p, default):
    p.add_argument("--space", default=default, help="space spec (default hardy)")
    p.add_argument("--tol", type=float, default=default, help="rank tolerance override")
    p.add_argument("--seed", type=int, default=default, help="RNG seed (default 0)")
    p.add_argument("--format", choices=("json", "csv"), default=default)
    p.add_argument("--config", default=default,
                   help="INI file with [global] and per-command sections")


def _t_grid(text):
    """Either a sample count or an explicit comma-separated list of t values."""
    if "," in text:
        return [float(t) for t in text.split(",") if t.strip()]
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("t-grid needs at least one sample")
    return n


def build_parser():
    p = argparse.ArgumentParser(prog="rkgeo", description=__doc__.splitlines()[0])
    _add_globals(p, None)
    # the same flags are accepted after the subcommand name
    common = argparse.ArgumentParser(add_help=False)
    _add_globals(common, argparse.SUPPRESS)
    sub = p.add_subparsers(dest="command", required=True)
    _orig = sub.add_parser
    sub.add_parser = lambda *a, **kw: _orig(*a, parents=[common], **kw)

    s = sub.add_parser("verdict", help="existence/uniqueness of the geodesic")
    _add_sets(s)
    s.set_defaults(func=cmd_verdict)

    s = sub.add_parser("geodesic", help="geodesic exponent and residuals")
    _add_sets(s)
    s.add_argument("--t-grid", dest="t_grid", type=_t_grid, default=None,
                   help="sample count in [0, 1] or comma-separated t values")
    s.add_argument("--csv", default=None, help="write delta(t) samples to this path")
    s.set_defaults(func=cmd_geodesic)

    s = sub.add_parser("metric", help="point metric between two points")
    s.add_argument("--kind", choices=("gamma", "delta", "deltahat", "rho"), default=None)
    s.add_argument("p1")
    s.add_argument("p2")
    s.set_defaults(func=cmd_metric)

    s = sub.add_parser("bounds", help="spectral bound table (Hardy)")
    _add_sets(s)
    s.set_defaults(func=cmd_bounds)

    s = sub.add_parser("counterexample", help="Bergman sets with singular cross-Gram")
    s.add_argument("mode", choices=("demo", "coeffs", "complete", "search"))
    _add_sets(s)
    s.add_argument("--c", nargs="+", metavar="RE,IM", help="coefficients (coeffs mode)")
    s.add_argument("--n", type=int, default=None, help="set size (search mode)")
    s.add_argument("--trials", type=int, default=None)
    s.add_argument("--exact", action="store_true", help="re-verify the demo exactly")
    s.set_defaults(func=cmd_counterexample)

    s = sub.add_parser("infinite", help="truncation probes for infinite zero sets")
    s.add_argument("verb", choices=("gs-pair", "koosis", "index", "compactness"))
    s.add_argument("--rule", choices=("geometric", "harmonic-shifted"), default=None)
    s.add_argument("--file", default=None, help="sequence file (one point per line)")
    s.add_argument("--K", type=int, default=None)
    s.add_argument("--q", type=float, default=None)
    s.add_argument("--shift", type=float, default=None)
    s.add_argument("--grid", type=int, default=None)
    s.add_argument("--a-param", dest="a_param", type=float, default=None)
    s.add_argument("--gamma", default=None)
    s.add_argument("--kmin", type=int, default=None)
    s.add_argument("--kmax", type=int, default=None)
    s.add_argument("--radii", type=float, nargs="+", default=None)
    s.add_argument("--p", type=float, nargs="+", default=None)
    s.add_argument("--extra", nargs="+", metavar="RE,IM", help="points appended to B")
    _add_sets(s)
    s.set_defaults(func=cmd_infinite)

    s = sub.add_parser("repro", help="canned reproductions")
    s.add_argument("name", choices=REPRO_NAMES)
    s.set_defaults(func=cmd_repro)
    return p


DEFAULTS = {
    "space": "hardy", "seed": 0, "kind": "gamma",
    "n": 3, "trials": 200, "rule": "geometric", "K": 20, "q": 0.5, "shift": 1.0,
    "grid": infinite.BASE_GRID, "a_param": 1.0,
    "kmin": -30, "kmax": 30, "radii": [0.99, 0.999], "p": [1.0, 2.0],
}

_LIST_KEYS = {"a", "b", "c", "extra", "radii", "p"}
_NUMERIC = {"tol": float, "seed": int, "n": int, "trials": int, "K": int, "q": float,
            "shift": float, "grid": int, "a_param": float, "kmin": int, "kmax": int,
            "t_grid": _t_grid}


def _apply_config(args, path):
    cfg = configparser.ConfigParser()
    cfg.optionxform = str
    if not cfg.read(path):
        raise ValidationError(f"cannot read config {path!r}")
    for section in ("global", args.command):
        if not cfg.has_section(section):
            continue
        for key, raw in cfg.items(section):
            dest = key.replace("-", "_")
            if getattr(args, dest, None) is not None:
                continue
            if dest in _LIST_KEYS:
                val = raw.split()
                if dest in ("radii", "p"):
                    val = [float(v) for v in val]
            elif dest in _NUMERIC:
                val = _NUMERIC[dest](raw)
            else:
                val = raw.strip()
            setattr(args, dest, val)


def _fill_defaults(args):
    for k, v in DEFAULTS.items():
        if getattr(args, k, None) is None and hasattr(args, k):
            setattr(args, k, v)
    if getattr(args, "seed", None) is None:
        args.seed = 0


_NEG_POINT = re.compile(r"^-(\d|\.\d)")


def main(argv=None, out=None, err=None):
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    argv = list(sys.argv[1:] if argv is None else argv)
    # keep negative point literals such as -0.5,0.2 from looking like options
    argv = [" " + a if _NEG_POINT.match(a) else a for a in argv]
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code else EXIT_OK
    try:
        if args.config:
            _apply_config(args, args.config)
        _fill_defaults(args)
        args.space_spec = parse_space(args.space)
        return args.func(args, out)
    except CheckFailed as exc:
        err.write(f"check failed: {exc}\n")
        return EXIT_CHECK
    except (ValidationError, ValueError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INVALID
    except RkgeoError as exc:
        err.write(f"error: {type(exc).__name__}: {exc}\n")
        return EXIT_CHECK


if __name__ == "__main__":
    sys.exit(main())

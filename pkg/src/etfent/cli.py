"""Command-line interface: ``etfent frames|state|detect|scan|witness``.

Exit codes: 0 success, 2 usage error, 3 numerical failure.
"""

import argparse
import csv
import json
import os
import sys

import numpy as np

from . import criteria, frames, maps, scan, states
from .errors import DimensionMismatch, DomainError, EtfError, NumericalError, ShapeMismatch
from .numerics import hermitian_eigenvalues

EXIT_USAGE = 2
EXIT_NUMERICAL = 3


class UsageError(Exception):
    pass


def _load_state(spec, seed):
    """``family:k=v,...``, ``random:d=3``, ``random-product:dims=3x3`` or a JSON file."""
    if os.path.isfile(spec):
        return states.load_state(spec)
    family, _, params = spec.partition(":")
    kv = scan.parse_params(params)
    if family == "random":
        return states.random_density(int(kv["d"]), seed)
    if family == "random-product":
        dims = [int(x) for x in kv["dims"].split("x")]
        return states.random_product(dims, seed)
    return states.make_state(family, **kv)


def _load_povm(name):
    if os.path.isfile(name):
        return frames.povm_from_frame(frames.load_frame(name))
    return frames.get_povm(name)


def _emit(args, payload, rows=None):
    """Write ``payload`` as JSON, or ``rows`` (list of dicts) as CSV when ``--output csv``."""
    out = sys.stdout
    if args.output == "csv" and rows is not None:
        writer = csv.DictWriter(out, fieldnames=list(rows[0]), lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
    else:
        json.dump(payload, out, indent=2)
        out.write("\n")


# -- frames ----------------------------------------------------------------


def _frame_summary(f):
    return {
        "name": f.name,
        "d": f.d,
        "n": f.n,
        "b": f.b,
        "c": f.c,
        "s_bounds": list(f.s_bounds),
        "tight_residual": f.tight_residual,
        "angle_deviation": f.angle_deviation,
    }


def cmd_frames_catalog(args):
    rows = [_frame_summary(frames.get_frame(name)) for name in frames.catalog_names()]
    for r in rows:
        r["s_bounds"] = " ".join(repr(v) for v in r["s_bounds"]) if args.output == "csv" else r["s_bounds"]
    _emit(args, rows, rows)


def cmd_frames_validate(args):
    f = frames.load_frame(args.file)
    _emit(args, _frame_summary(f))


def cmd_frames_show(args):
    _emit(args, frames.get_frame(args.name).to_json())


# -- states ----------------------------------------------------------------


def cmd_state_make(args):
    spec = args.family if not args.params else f"{args.family}:{args.params}"
    rho = _load_state(spec, args.seed)
    payload = rho.to_json()
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(payload, fh)
    else:
        _emit(args, payload)


# -- detect ----------------------------------------------------------------


def cmd_detect(args):
    rho = _load_state(args.state, args.seed)
    pa = _load_povm(args.povm_a)
    if args.kind == "bipartite":
        pb = _load_povm(args.povm_b) if args.povm_b else None
        verdicts = [criteria.theorem1(rho, pa, pb, tolerance=args.tolerance)]
    else:
        pb = _load_povm(args.povm_b) if args.povm_b else None
        pc = _load_povm(args.povm_c) if args.povm_c else None
        verdicts = []
        for tag in args.criteria.split(","):
            if tag == "thm4":
                verdicts.append(criteria.theorem4(rho, pa, pb, pc, tolerance=args.tolerance))
            elif tag == "thm5":
                verdicts.extend(criteria.theorem5(rho, pa, pb, pc, tolerance=args.tolerance))
            else:
                raise UsageError(f"unknown tripartite criterion {tag!r}; use thm4 and/or thm5")
    rows = [v.to_dict() for v in verdicts]
    _emit(args, rows[0] if len(rows) == 1 else rows, rows)


# -- scan ------------------------------------------------------------------


def cmd_scan(args):
    axes = scan.parse_grid(args.grid)
    fixed = scan.parse_params(args.fixed) if args.fixed else {}
    out = open(args.out, "w") if args.out else sys.stdout
    try:
        for criterion in args.criteria.split(","):
            for povm in args.povms.split(","):
                grid = scan.ScanGrid(args.state, axes, criterion, povm, fixed)
                rows = scan.run_scan(grid, tolerance=args.tolerance)
                scan.write_csv(grid, rows, out)
    finally:
        if args.out:
            out.close()


# -- witness ---------------------------------------------------------------


def _rotation(spec, n):
    kind, _, params = spec.partition(":")
    if kind == "identity":
        return maps.rotation_identity(n)
    if kind == "householder":
        angles = [float(a) for a in params.split(",") if a] if params else []
        return maps.rotation_householder_family(n, angles)
    raise UsageError(f"unknown rotation {spec!r}; use identity or householder:<angles>")


def _map_spec(args):
    povm = _load_povm(args.povm)
    if args.d is not None and args.d != povm.d:
        raise DimensionMismatch(f"--d {args.d} does not match POVM {args.povm} of dimension {povm.d}")
    return maps.PositiveMapSpec(povm, _rotation(args.rotation, povm.n))


def cmd_witness_build(args):
    w = maps.build_witness(_map_spec(args))
    payload = w.to_json()
    payload["rotation_spec"] = args.rotation
    payload["min_eigenvalue"] = w.min_eigenvalue
    payload["nontrivial"] = w.nontrivial
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(payload, fh)
    else:
        _emit(args, payload)


def load_witness(path):
    with open(path) as fh:
        data = json.load(fh)
    povm = _load_povm(data["povm"])
    spec = maps.PositiveMapSpec(povm, maps.RotationO(np.array(data["rotation"])))
    mat = np.array([[complex(re, im) for re, im in row] for row in data["matrix"]])
    return maps.Witness(mat, spec, hermitian_eigenvalues(mat))


def cmd_witness_eval(args):
    w = load_witness(args.witness)
    rho = _load_state(args.state, args.seed)
    value = maps.witness_expectation(w, rho)
    payload = {"expectation": value, "entangled": value < -args.tolerance}
    _emit(args, payload, [payload])


def cmd_witness_probe(args):
    report = maps.positivity_probe(_map_spec(args), args.samples, args.seed)
    payload = {
        "num_samples": report.num_samples,
        "max_purity": report.max_purity,
        "ceiling": report.ceiling,
        "min_eigenvalue": report.min_eigenvalue,
        "passed": report.passed,
    }
    _emit(args, payload, [payload])


# -- parser ----------------------------------------------------------------


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="RNG seed (PCG64)")
    common.add_argument("--tolerance", type=float, default=argparse.SUPPRESS, help="verdict tolerance")
    common.add_argument("--output", choices=("json", "csv"), default=argparse.SUPPRESS)

    parser = argparse.ArgumentParser(prog="etfent", description=__doc__.splitlines()[0])
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--tolerance", type=float, default=criteria.VERDICT_TOL)
    parser.add_argument("--output", choices=("json", "csv"), default="json")
    sub = parser.add_subparsers(dest="command", required=True)

    p_frames = sub.add_parser("frames", help="inspect and validate frames")
    fsub = p_frames.add_subparsers(dest="action", required=True)
    p = fsub.add_parser("catalog", parents=[common], help="list built-in frames")
    p.set_defaults(func=cmd_frames_catalog)
    p = fsub.add_parser("validate", parents=[common], help="certify a frame JSON file")
    p.add_argument("file")
    p.set_defaults(func=cmd_frames_validate)
    p = fsub.add_parser("show", parents=[common], help="print a catalog frame as JSON")
    p.add_argument("name")
    p.set_defaults(func=cmd_frames_show)

    p_state = sub.add_parser("state", help="construct density matrices")
    ssub = p_state.add_subparsers(dest="action", required=True)
    p = ssub.add_parser("make", parents=[common], help="emit a state family member as JSON")
    p.add_argument("family", help="isotropic, horodecki, sigma, antisym3, random, random-product")
    p.add_argument("--params", default="", help="e.g. d=3,p=0.5")
    p.add_argument("-o", "--out")
    p.set_defaults(func=cmd_state_make)

    p = sub.add_parser("detect", parents=[common], help="evaluate a criterion at one state")
    p.add_argument("kind", choices=("bipartite", "tripartite"))
    p.add_argument("--state", required=True, help="family:k=v,... or a state JSON file")
    p.add_argument("--povm-a", required=True)
    p.add_argument("--povm-b")
    p.add_argument("--povm-c")
    p.add_argument("--criteria", default="thm4,thm5", help="tripartite only: thm4,thm5")
    p.set_defaults(func=cmd_detect)

    p = sub.add_parser("scan", parents=[common], help="evaluate a criterion over a parameter grid")
    p.add_argument("--state", required=True, help="state family")
    p.add_argument("--grid", required=True, help="e.g. x=0.001:0.999:200,p=0:1:200")
    p.add_argument("--fixed", default="", help="fixed family parameters, e.g. d=3")
    p.add_argument("--criteria", required=True, help="thm1, thm4 or thm5 (comma list)")
    p.add_argument("--povms", required=True, help="comma list; a, a+b or a+b+c")
    p.add_argument("-o", "--out")
    p.set_defaults(func=cmd_scan)

    p_w = sub.add_parser("witness", help="ETF positive-map witnesses")
    wsub = p_w.add_subparsers(dest="action", required=True)
    for name, func, help_ in (
        ("build", cmd_witness_build, "construct a witness"),
        ("probe", cmd_witness_probe, "sample the positivity of the map"),
    ):
        p = wsub.add_parser(name, parents=[common], help=help_)
        p.add_argument("--d", type=int)
        p.add_argument("--povm", required=True)
        p.add_argument("--rotation", default="identity", help="identity or householder:<a1,a2,...>")
        if name == "build":
            p.add_argument("-o", "--out")
        else:
            p.add_argument("--samples", type=int, default=10000)
        p.set_defaults(func=func)
    p = wsub.add_parser("eval", parents=[common], help="expectation of a witness on a state")
    p.add_argument("--witness", required=True)
    p.add_argument("--state", required=True)
    p.set_defaults(func=cmd_witness_eval)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except (UsageError, KeyError, TypeError, DomainError, DimensionMismatch, ShapeMismatch) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"etfent: error: {msg}", file=sys.stderr)
        return EXIT_USAGE
    except scan.ScanError as exc:
        code = EXIT_NUMERICAL if isinstance(exc.cause, NumericalError) else EXIT_USAGE
        print(f"etfent: error: {exc}", file=sys.stderr)
        return code
    except (NumericalError, EtfError) as exc:
        print(f"etfent: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (ValueError, OSError) as exc:
        print(f"etfent: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return 0


if __name__ == "__main__":
    sys.exit(main())

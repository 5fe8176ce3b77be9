"""Command-line front end.

Exact rationals are printed as ``p/q`` and reals with 12 significant
digits.  Exit status is 0 on success, 2 on malformed input and 1 on any
other failure.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

from . import lipapprox as la
from .examples import T_eval, ex1_kernel, ex2_kernel, remark1_gap, svc_build
from .fields import get_field
from .fm import fm_solve
from .kernel import iterate_P
from .measure import delta, load_measure
from .probe import (
    basin_probe,
    dyadic_approach,
    dyadic_witness,
    equicontinuity_modulus,
    halving_approach,
    rows_to_csv,
    stability_trace,
    svc_witness_detail,
    truncation_approach,
)
from .space import CIRCLE_SPACE, format_rational, format_real, get_space, parse_rational


class InputError(ValueError):
    pass


def _kernel(args):
    if args.example == "ex1":
        return ex1_kernel()
    if args.example == "ex2":
        return ex2_kernel(svc_build(args.depth))
    raise InputError(f"--example must be ex1 or ex2, got {args.example!r}")


def _rational(text, flag):
    try:
        return parse_rational(text, flag)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _fmt(v):
    return format_rational(v) if isinstance(v, Fraction) else format_real(v)


def _emit(args, text: str):
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_fm(args):
    space = get_space(args.space)
    try:
        mu = load_measure(args.mu, space)
        nu = load_measure(args.nu, space)
    except (OSError, json.JSONDecodeError, KeyError) as exc:
        raise InputError(f"cannot read measure: {exc}") from None
    res = fm_solve(mu - nu)
    if args.witness:
        out = {
            "distance": format_real(res.value),
            "points": [space.format_point(x) for x in res.points],
            "witness": [format_real(v) for v in res.witness],
        }
        _emit(args, json.dumps(out, indent=2) + "\n")
    else:
        _emit(args, format_real(res.value) + "\n")
    return 0


def cmd_iterate(args):
    k = _kernel(args)
    x = k.space.validate(_rational(args.x, "--x"))
    mu = iterate_P(k, delta(k.space, x), args.steps)
    if args.emit == "json":
        _emit(args, json.dumps(mu.to_json(), indent=2) + "\n")
    elif args.emit == "csv":
        rows = [["point", "weight"]] + [[k.space.format_point(p), format_rational(w)] for p, w in mu.items()]
        _emit(args, rows_to_csv(rows))
    else:
        lines = [f"delta at {k.space.format_point(p)} with weight {format_rational(w)}" for p, w in mu.items()]
        _emit(args, "\n".join(lines or ["zero measure"]) + "\n")
    return 0


def _approach(args, z):
    if args.approach == "dyadic":
        return dyadic_approach(z, args.mmax)
    if args.approach == "halving":
        return halving_approach(z, args.mmax)
    return truncation_approach(z, range(1, args.mmax + 1))


def cmd_eprobe(args):
    k = _kernel(args)
    f = get_field(args.f)
    z = _rational(args.z, "--z")
    try:
        z = k.space.validate(z)
        if args.mode == "witness":
            return _witness(args, k, f, z)
        pts = _approach(args, z)
    except ValueError as exc:
        raise InputError(f"--z {args.z}: {exc}") from None
    report = equicontinuity_modulus(k, f, z, pts, args.nmax)
    if args.emit == "json":
        _emit(args, json.dumps(report.summary(k.space), indent=2) + "\n")
    else:
        _emit(args, rows_to_csv(report.csv_rows(k.space)))
    return 0


def _witness(args, k, f, z):
    if args.example == "ex1":
        rows = [["n", "value"]] + [[str(n), _fmt(dyadic_witness(z, f, n))] for n in range(1, args.mmax + 1)]
    else:
        w = svc_witness_detail(z, svc_build(args.depth), f)
        rows = [["x", "T", "n0", "value"], [format_rational(w.x), format_rational(w.T), str(w.n0), _fmt(w.value)]]
    _emit(args, rows_to_csv(rows))
    return 0


def cmd_stability(args):
    k = _kernel(args)
    x = k.space.validate(_rational(args.x, "--x"))
    trace = stability_trace(k, delta(k.space, x), delta(k.space, 0), args.nmax)
    _emit(args, rows_to_csv(trace.csv_rows()))
    return 0


def cmd_basin(args):
    k = _kernel(args)
    f = get_field(args.f)
    rep = basin_probe(
        k,
        f,
        delta(k.space, 0),
        _rational(args.center, "--center"),
        _rational(args.radius, "--radius"),
        args.grid,
        args.eps,
        args.n_from,
        args.nmax,
    )
    out = {
        "ok": rep.ok,
        "worst": format_real(rep.worst),
        "worst_x": k.space.format_point(rep.worst_x),
        "worst_n": rep.worst_n,
        "points": rep.n_points,
    }
    _emit(args, json.dumps(out, indent=2) + "\n")
    return 0


def cmd_svc(args):
    tree = svc_build(args.depth)
    if args.emit == "csv":
        rows = [["level", "kind", "index", "lo", "hi"]]
        for n in range(tree.depth + 1):
            for i, (a, b) in enumerate(tree.kept(n), start=1):
                rows.append([str(n), "kept", str(i), format_rational(a), format_rational(b)])
            if n:
                for i, (a, b) in enumerate(tree.removed(n), start=1):
                    rows.append([str(n), "removed", str(i), format_rational(a), format_rational(b)])
        _emit(args, rows_to_csv(rows))
    else:
        _emit(args, json.dumps(tree.to_json(), indent=1) + "\n")
    return 0


def cmd_t_eval(args):
    tree = svc_build(args.depth)
    x = _rational(args.x, "--x")
    try:
        t = T_eval(x, tree)
    except ValueError as exc:
        raise InputError(f"--x: {exc}") from None
    c = t.classification
    out = {
        "x": format_rational(x),
        "value": format_rational(t.value),
        "exact": t.exact,
        "error_bound": format_rational(t.error_bound),
        "status": c.status,
        "level": c.level,
        "index": c.index,
        "interval": [format_rational(c.interval.lo), format_rational(c.interval.hi)],
    }
    _emit(args, json.dumps(out, indent=2) + "\n")
    return 0


def cmd_lipapprox(args):
    f = get_field(args.f)
    grid = [Fraction(j, args.grid) for j in range(args.grid)]
    spec = la.build_cover_spec(f, grid, args.r, args.eps, CIRCLE_SPACE)
    bound = la.spec_error_bound(spec)
    pts = grid
    if args.sample:
        rng = random.Random(args.seed)
        pts = sorted(Fraction(rng.randrange(10**6), 10**6) for _ in range(args.sample))
    rows = [["x", "f", "L", "bound"]]
    for x in pts:
        rows.append([format_rational(x), format_real(f(x)), format_real(la.lip_eval(spec, x)), format_real(bound)])
    _emit(args, rows_to_csv(rows))
    return 0


def cmd_remark1(args):
    z = _rational(args.z, "--z")
    _emit(args, format_real(remark1_gap(z, args.m)) + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="eprop", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, emit=("text", "csv", "json"), default=None):
        sp.add_argument("--out", help="write output to this file instead of stdout")
        if emit:
            sp.add_argument("--emit", choices=emit, default=default or emit[0])

    def example(sp):
        sp.add_argument("--example", choices=["ex1", "ex2"], default="ex1")
        sp.add_argument("--depth", type=int, default=10, help="SVC depth for ex2 (default 10)")

    sp = sub.add_parser("fm", help="Fortet-Mourier distance between two measure files")
    sp.add_argument("--space", default="circle", choices=["circle", "ex2", "real"])
    sp.add_argument("--mu", required=True)
    sp.add_argument("--nu", required=True)
    sp.add_argument("--witness", action="store_true", help="also emit the optimal test function as JSON")
    common(sp, emit=None)
    sp.set_defaults(func=cmd_fm)

    sp = sub.add_parser("iterate", help="P^n delta_x for a built-in kernel")
    example(sp)
    sp.add_argument("--x", required=True)
    sp.add_argument("--steps", type=int, default=1)
    common(sp)
    sp.set_defaults(func=cmd_iterate)

    sp = sub.add_parser("eprobe", help="equicontinuity modulus or failure witnesses at z")
    example(sp)
    sp.add_argument("--z", required=True)
    sp.add_argument("--f", default="hat")
    sp.add_argument("--approach", choices=["dyadic", "halving", "truncation"], default="dyadic")
    sp.add_argument("--mode", choices=["modulus", "witness"], default="modulus")
    sp.add_argument("--mmax", type=int, default=8)
    sp.add_argument("--nmax", type=int, default=64)
    common(sp, emit=("csv", "json"))
    sp.set_defaults(func=cmd_eprobe)

    sp = sub.add_parser("stability", help="FM distance from P^n delta_x to delta_0")
    example(sp)
    sp.add_argument("--x", required=True)
    sp.add_argument("--nmax", type=int, default=20)
    common(sp, emit=("csv",))
    sp.set_defaults(func=cmd_stability)

    sp = sub.add_parser("basin", help="check |U^n f - <f, delta_0>| <= eps on a ball grid")
    example(sp)
    sp.add_argument("--f", default="hat")
    sp.add_argument("--center", required=True)
    sp.add_argument("--radius", required=True)
    sp.add_argument("--grid", type=int, default=32)
    sp.add_argument("--eps", type=float, required=True)
    sp.add_argument("--n-from", type=int, default=20)
    sp.add_argument("--nmax", type=int, default=40)
    common(sp, emit=("json",))
    sp.set_defaults(func=cmd_basin)

    sp = sub.add_parser("svc", help="dump the SVC interval tree")
    sp.add_argument("--depth", type=int, required=True)
    common(sp, emit=("json", "csv"))
    sp.set_defaults(func=cmd_svc)

    sp = sub.add_parser("t-eval", help="evaluate the SVC bump map T at x")
    sp.add_argument("--x", required=True)
    sp.add_argument("--depth", type=int, default=10)
    common(sp, emit=("json",))
    sp.set_defaults(func=cmd_t_eval)

    sp = sub.add_parser("lipapprox", help="Lipschitz approximation of a circle function")
    sp.add_argument("--f", default="sin")
    sp.add_argument("--r", type=float, default=0.05)
    sp.add_argument("--eps", type=float, default=0.05)
    sp.add_argument("--grid", type=int, default=1000)
    sp.add_argument("--sample", type=int, default=0, help="evaluate at this many random points instead of the grid")
    sp.add_argument("--seed", type=int, default=0)
    common(sp, emit=("csv",))
    sp.set_defaults(func=cmd_lipapprox)

    sp = sub.add_parser("remark1", help="bump-function gap for the unit translation")
    sp.add_argument("--z", default="0")
    sp.add_argument("--m", type=int, required=True)
    common(sp, emit=None)
    sp.set_defaults(func=cmd_remark1)
    return p


_VALUE_FLAGS = ("--x", "--z", "--center", "--radius")


def _glue_negative_values(argv):
    # argparse reads "-3/2" as an option; rewrite "--x -3/2" to "--x=-3/2"
    out, i = [], 0
    while i < len(argv):
        a = argv[i]
        if a in _VALUE_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{a}={argv[i + 1]}")
            i += 2
        else:
            out.append(a)
            i += 1
    return out


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(_glue_negative_values(argv))
    try:
        return args.func(args)
    except (InputError, ValueError, TypeError) as exc:
        print(f"eprop {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001
        print(f"eprop {args.command}: internal error: {exc!r}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

"""fracdim command line: exit 0 on success, 1 on a failed check, 2 on bad input."""
from __future__ import annotations

import argparse
import contextlib
import csv
import sys
from fractions import Fraction
from pathlib import Path

from . import config
from .density_analysis import checkpoint_bracket, envelope_bounds
from .digit_sets import count_prefix, validate_spec
from .errors import FracdimError, ParseError
from .gallery import remark1_report, solve_theorem, theorem_report
from .product_spaces import (
    ProductSpec,
    covering_profile,
    dimension_report,
    power_product,
)
from .sampler import DEFAULT_CAP, crosscheck, enumerate_points, sample_points

EXIT_OK, EXIT_CHECK_FAILED, EXIT_INPUT = 0, 1, 2


def fmt_float(q: Fraction) -> str:
    return f"{float(q):.12g}"


@contextlib.contextmanager
def _open_out(path):
    if path in (None, "-"):
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


def _rational_arg(text):
    try:
        return config.parse_rational(text)
    except ParseError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _depth_for(spec, k):
    depth = spec.schedule.depth_reaching(k)
    return max(depth, 1)


def _load_product(args, depth=None, k=None) -> ProductSpec:
    if bool(args.spec) == bool(args.product):
        raise ParseError("give exactly one of --spec or --product")
    if args.spec:
        specs, power = [config.load_spec(args.spec)], 1
    else:
        specs, power = config.load_product(args.product)
    if depth is None:
        depth = max(_depth_for(s, k) for s in specs)
    factors = [validate_spec(s, depth) for s in specs]
    return power_product(ProductSpec(factors), power)


def cmd_density(args) -> int:
    spec = config.load_spec(args.spec)
    vspec = validate_spec(spec, _depth_for(spec, args.k_max))
    ks = vspec.ks
    violations = 0
    previous = 0
    with _open_out(args.out) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["k", "count", "density_num", "density_den", "density_float"])
        for k in range(1, args.k_max + 1):
            c = count_prefix(vspec, k)
            d = Fraction(c, k)
            if c < previous or not 0 <= d < 1:
                violations += 1
            if ks[2] <= k < ks[-1] and len(ks) > 3:
                pt = envelope_bounds(vspec, k)
                if not pt.lower <= d <= pt.upper:
                    violations += 1
            previous = c
            w.writerow([k, c, d.numerator, d.denominator, fmt_float(d)])
    if violations:
        print(f"{violations} invariant violations", file=sys.stderr)
    return EXIT_CHECK_FAILED if violations else EXIT_OK


def cmd_checkpoints(args) -> int:
    spec = config.load_spec(args.spec)
    vspec = validate_spec(spec, args.n)
    violations = 0
    with _open_out(args.out) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["k", "count", "density_num", "density_den", "density_float"])
        for n in range(1, args.n + 1):
            k, c = vspec.ks[n], vspec.cumulative(n)
            d = Fraction(c, k)
            lo, hi = checkpoint_bracket(vspec, n)
            if not lo <= d <= hi:
                violations += 1
            w.writerow([k, c, d.numerator, d.denominator, fmt_float(d)])
    return EXIT_CHECK_FAILED if violations else EXIT_OK


def _render_dimension_report(rep, title) -> str:
    lines = [
        title,
        f"factors: {rep.dimension}",
        f"lower estimate (dim_H = lower box): {rep.lower} ~ {fmt_float(rep.lower)}"
        f"  target {rep.target_lower}",
        f"upper estimate (dim_P = upper box): {rep.upper} ~ {fmt_float(rep.upper)}"
        f"  target {rep.target_upper}",
        f"certified bound: {fmt_float(rep.certified_bound)}",
        f"metric correction log2(sqrt(d)) = {rep.metric_correction:.12g} (not applied)",
        "",
        "n,k_n,sum_density_float,target,bound_float",
    ]
    for c in rep.checkpoints:
        lines.append(f"{c.n},{c.k},{fmt_float(c.density)},{c.target},{fmt_float(c.bound)}")
    return "\n".join(lines) + "\n"


def cmd_dims(args) -> int:
    depth = args.n
    if args.k_max:
        depth = max(depth, _load_product(args, k=args.k_max).depth)
    prod = _load_product(args, depth=depth)
    rep = dimension_report(prod, args.n, args.n_burn)
    with _open_out(args.out) as fh:
        fh.write(_render_dimension_report(rep, f"dimension report n_max={args.n}"))
    if args.k_max:
        with _open_out(args.covering_out) as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["k", "exponent", "quotient_num", "quotient_den", "quotient_float"])
            for e in covering_profile(prod, range(1, args.k_max + 1)):
                q = e.quotient
                w.writerow([e.k, e.exponent, q.numerator, q.denominator, fmt_float(q)])
    ok = rep.lower <= rep.upper and max(rep.lower_error(), rep.upper_error()) <= rep.certified_bound
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def _cloud(args, prod):
    if args.seed is None:
        try:
            return enumerate_points(prod, args.level, args.cap)
        except FracdimError:
            pass
    return sample_points(prod, args.level, args.count, args.seed or 0)


def cmd_sample(args) -> int:
    prod = _load_product(args, k=args.level)
    cloud = _cloud(args, prod)
    with _open_out(args.out) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow([f"x{i + 1}" for i in range(cloud.dimension)])
        for pt in cloud.points:
            w.writerow(cloud.render(pt))
    return EXIT_OK


def cmd_crosscheck(args) -> int:
    prod = _load_product(args, k=args.level)
    rep = crosscheck(prod, args.level, args.cap, cloud=_cloud(args, prod))
    with _open_out(args.out) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["k", "empirical", "analytic_exponent", "match"])
        for r in rep.rows:
            w.writerow([r.k, r.empirical, r.analytic_exponent, "true" if r.match else "false"])
    return EXIT_OK if rep.ok else EXIT_CHECK_FAILED


def cmd_theorem(args) -> int:
    inst = solve_theorem(args.which, args.alpha, args.beta, args.gamma, args.lam)
    rep = theorem_report(inst, args.n, args.n_burn)
    with _open_out(args.out) as fh:
        fh.write(rep.render())
    return EXIT_OK if rep.passed else EXIT_CHECK_FAILED


def cmd_remark1(args) -> int:
    rep = remark1_report(args.n, args.n_burn)
    with _open_out(args.out) as fh:
        fh.write(rep.render())
    return EXIT_OK if rep.passed else EXIT_CHECK_FAILED


PATH_KEYS = ("spec", "product", "out", "covering-out")


def run_config(path) -> int:
    """Run a pipeline described by a key = value file.

    ``command`` names the subcommand; every other key is passed as the
    matching ``--flag``.  Relative paths resolve against the config file.
    """
    try:
        entries = config.load_pipeline(path)
    except (FracdimError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    base = Path(path).parent
    argv = [entries.pop("command")]
    for key, value in entries.items():
        flag = key.replace("_", "-")
        if flag in PATH_KEYS and value != "-":
            value = str(base / value)
        argv += [f"--{flag}", value]
    return main(argv)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fracdim",
        description="Exact dimension workbench for digit-restriction sets and their products.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        p = sub.add_parser(name, help=help_)
        p.set_defaults(func=func)
        p.add_argument("--out", default="-", help="output file (default stdout)")
        return p

    p = add("density", cmd_density, "d_k for k = 1..k-max as CSV")
    p.add_argument("--spec", required=True)
    p.add_argument("--k-max", type=int, required=True)

    p = add("checkpoints", cmd_checkpoints, "checkpoint densities d_{k_n} as CSV")
    p.add_argument("--spec", required=True)
    p.add_argument("--n", type=int, required=True)

    for name, func, help_ in (
        ("dims", cmd_dims, "dimension report for a product"),
        ("sample", cmd_sample, "point cloud CSV"),
        ("crosscheck", cmd_crosscheck, "empirical vs analytic cube counts"),
    ):
        p = add(name, func, help_)
        p.add_argument("--spec")
        p.add_argument("--product")
        if name == "dims":
            p.add_argument("--n", type=int, default=60)
            p.add_argument("--n-burn", type=int)
            p.add_argument("--k-max", type=int)
            p.add_argument("--covering-out", default="-")
        else:
            p.add_argument("--level", type=int, required=True)
            p.add_argument("--cap", type=int, default=DEFAULT_CAP)
            p.add_argument("--seed", type=int)
            p.add_argument("--count", type=int, default=1000)

    p = add("theorem", cmd_theorem, "solve and verify a theorem instance")
    p.add_argument("--which", type=int, choices=(1, 2, 3), required=True)
    p.add_argument("--alpha", type=_rational_arg, required=True)
    p.add_argument("--beta", type=_rational_arg, required=True)
    p.add_argument("--gamma", type=_rational_arg, required=True)
    p.add_argument("--lambda", dest="lam", type=_rational_arg, required=True)
    p.add_argument("--n", type=int, default=60)
    p.add_argument("--n-burn", type=int)

    p = add("remark1", cmd_remark1, "the dim_H(E x E) > 2 dim_H E example")
    p.add_argument("--n", type=int, default=60)
    p.add_argument("--n-burn", type=int)

    p = sub.add_parser("run", help="run a pipeline config file")
    p.add_argument("config")
    p.set_defaults(func=lambda a: run_config(a.config))
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (FracdimError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

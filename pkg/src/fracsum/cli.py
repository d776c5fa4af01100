"""Command-line front end: ``python -m fracsum <subcommand> ...``.

Exit status 0 on success, 1 on a domain error, 2 on a usage error. Random
draws use numpy's PCG64 generator seeded from ``--seed``; identical
invocations produce byte-identical output.
"""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from . import circlemap, expand, fluct, sumformula, tiles
from .config import load_config
from .errors import FracsumError
from .tiles import format_rational

# capability -> subcommand that exposes it
CAPABILITIES = {
    "numsys.validate": "validate",
    "numsys.residue_index": "expand",
    "expand.value": "verify",
    "expand.split": "verify",
    "expand.shift": "verify",
    "expand.expand_integer": "expand",
    "expand.expand_fractional": "expand",
    "sumformula.verify_theorem": "verify",
    "sumformula.verify_integer_corollary": "verify",
    "sumformula.cesaro_gap": "verify",
    "sumformula.center_of_mass": "com",
    "tiles.tile_cloud": "tile",
    "tiles.outer_radius": "tile",
    "tiles.render": "tile",
    "tiles.delta_iterate": "delta",
    "tiles.lattice_check": "delta",
    "fluct.partial_sum_S": "verify",
    "fluct.sample_fluctuations": "fluct",
    "fluct.ks_statistic": "fluct",
    "fluct.line_collapse": "fluct",
    "circlemap.f_t_step": "circle",
    "circlemap.circle_fluctuations": "circle",
    "circlemap.rotation_number": "rho",
}


class UsageError(Exception):
    pass


def _vec(v) -> str:
    return ", ".join(format_rational(c) for c in v)


def _system(args):
    return load_config(args.cfg).build()


def cmd_validate(args, out):
    ns = _system(args)
    out.write(f"valid: name={ns.name} dim={ns.dim} q={ns.q}\n")
    for i, d in enumerate(ns.digits):
        out.write(f"digit {i} = {_vec(d)}\n")


def cmd_expand(args, out):
    ns = _system(args)
    if (args.int is None) == (args.frac is None):
        raise UsageError("give exactly one of --int or --frac")
    if args.int is not None:
        try:
            z = [int(c) for c in args.int.split(",")]
        except ValueError:
            raise UsageError(f"--int expects comma-separated integers, got {args.int!r}") from None
        if len(z) != ns.dim:
            raise UsageError(f"--int needs {ns.dim} components")
        ds = expand.expand_integer(ns, z, max_steps=args.max_steps)
    else:
        if args.digits is None:
            raise UsageError("--frac needs --digits")
        try:
            x = expand.parse_rational_vector(args.frac)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        if len(x) != ns.dim:
            raise UsageError(f"--frac needs {ns.dim} components")
        ds = expand.expand_fractional(ns, x, args.digits)
    out.write(f"{ds}\n")


def _digit_string(text):
    try:
        return expand.DigitString.parse(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_verify(args, out):
    ns = _system(args)
    ds = _digit_string(args.string)
    if args.corollary:
        rep = sumformula.verify_integer_corollary(ns, ds, args.n)
        cols = ["n"] + [f"{k}_{j}" for k in ("lhs", "int_n", "int_0", "digit_sum") for j in range(ns.dim)] + ["holds"]
        cells = [str(rep.n)]
        for vec in (rep.lhs, rep.int_n, rep.int_0, rep.digit_sum):
            cells += [format_rational(c) for c in vec]
        cells.append("true" if rep.holds else "false")
        out.write(",".join(cols) + "\n" + ",".join(cells) + "\n")
    else:
        rep = sumformula.verify_theorem(ns, ds, args.n)
        out.write(sumformula.report_csv_header(ns.dim) + "\n")
        out.write(sumformula.report_csv_row(rep) + "\n")
    if args.gap:
        out.write(f"cesaro_gap = {_vec(sumformula.cesaro_gap(ns, ds, args.n))}\n")
        out.write(f"partial_sum = {_vec(fluct.partial_sum_S(ns, ds, args.n))}\n")
        sv = expand.split(ns, ds)
        out.write(f"value = {_vec(expand.value(ns, ds))}\n")
        out.write(f"integer_part = {_vec(sv.integer_part)}\n")
        out.write(f"fractional_part = {_vec(sv.fractional_part)}\n")


def cmd_com(args, out):
    out.write(_vec(sumformula.center_of_mass(_system(args))) + "\n")


def cmd_tile(args, out):
    ns = _system(args)
    if args.cap is not None and args.seed is None:
        raise UsageError("--cap needs --seed")
    targets = [t for t in (args.png_out, args.pgm_out, args.csv_out) if t]
    if not targets:
        raise UsageError("give at least one of --png-out, --pgm-out, --csv-out")
    cloud = tiles.tile_cloud(ns, args.depth, cap=args.cap, seed=args.seed)
    if args.pgm_out:
        Path(args.pgm_out).write_bytes(tiles.render(cloud, args.width, args.height))
    if args.png_out:
        Path(args.png_out).write_bytes(tiles.render_png(cloud, args.width, args.height))
    if args.csv_out:
        Path(args.csv_out).write_text(tiles.cloud_to_csv(cloud, exact=not args.float))
    cert = tiles.outer_radius(ns)
    out.write(f"points = {len(cloud)}\ndepth = {args.depth}\n")
    if cloud.sampled:
        out.write(f"seed = {args.seed}\n")
    out.write(f"outer_radius = {cert.radius!r}\ncertificate_k = {cert.k}\n")


def cmd_delta(args, out):
    ns = _system(args)
    try:
        window = Fraction(args.window)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"--window expects a number, got {args.window!r}") from None
    compute_window = 3 * window if args.check_lattice else window
    ds = tiles.delta_iterate(ns, args.k, compute_window)
    inside = sorted(ds.inside(window))
    out.write(f"points_in_window = {len(inside)}\n")
    if args.csv_out:
        Path(args.csv_out).write_text("".join(_vec(p).replace(" ", "") + "\n" for p in inside))
    if args.check_lattice:
        res = tiles.lattice_check(ds, window)
        if isinstance(res, tiles.LatticeEvidence):
            out.write("lattice = consistent (evidence at this depth, not a proof)\n")
            for b in res.basis:
                out.write(f"basis = {_vec(b)}\n")
        else:
            out.write("lattice = no\n")
            where = "lattice but not delta" if res.in_lattice else "delta but not lattice"
            out.write(f"witness = {_vec(res.witness)} ({where})\n")
            out.write(f"certified = {'true' if res.certified else 'false'}\n")


def cmd_fluct(args, out):
    ns = _system(args)
    sample = fluct.sample_fluctuations(ns, args.n, args.count, args.seed)
    if args.csv_out:
        Path(args.csv_out).write_text(sample.to_csv())
    summ = fluct.summary(sample)
    summ["perp_bound"] = fluct.perpendicular_bound(ns, args.n)
    for k, v in summ.items():
        out.write(f"{k} = {v}\n")


def cmd_circle(args, out):
    hist = circlemap.circle_fluctuations(args.n, args.count, args.seed, bins=args.bins)
    if args.csv_out:
        Path(args.csv_out).write_text(hist.to_csv())
    out.write(f"n = {hist.n}\ncount = {hist.count}\nseed = {hist.seed}\n")
    out.write(f"mean = {hist.mean!r}\nstd = {hist.std!r}\nclamped = {hist.clamped}\n")
    out.write(f"symmetric_pairs = {circlemap.symmetric_pair_fraction(hist)!r}\n")


def cmd_rho(args, out):
    if args.n < 1000:
        raise UsageError("--n must be at least 1000")
    r = circlemap.rotation_number(args.t, args.n, args.x0)
    image = circlemap.f_t_step(args.t, args.x0)
    out.write(f"rotation_number = {r!r}\nf_t(x0) = {image!r}\n")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fracsum", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="check a number system config")
    s.add_argument("cfg")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("expand", help="radix expansion of an integer or rational point")
    s.add_argument("cfg")
    s.add_argument("--int", help="integer vector, comma separated")
    s.add_argument("--frac", help="rational vector p/q,... inside the tile")
    s.add_argument("--digits", type=int, help="number of fractional digits")
    s.add_argument("--max-steps", type=int, default=10_000)
    s.set_defaults(func=cmd_expand)

    s = sub.add_parser("verify", help="check the summation formula on a digit string")
    s.add_argument("cfg")
    s.add_argument("--string", required=True, help='digit string, e.g. "1.00(1)"')
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--corollary", action="store_true", help="integer-part identity instead")
    s.add_argument("--gap", action="store_true", help="also print Cesaro gap, S(n,x) and the split")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("com", help="centre of mass of the tile")
    s.add_argument("cfg")
    s.set_defaults(func=cmd_com)

    s = sub.add_parser("tile", help="points of the tile at a given depth")
    s.add_argument("cfg")
    s.add_argument("--depth", type=int, required=True)
    s.add_argument("--cap", type=int)
    s.add_argument("--seed", type=int)
    s.add_argument("--png-out")
    s.add_argument("--pgm-out")
    s.add_argument("--csv-out")
    s.add_argument("--float", action="store_true", help="CSV as doubles instead of p/q")
    s.add_argument("--width", type=int, default=512)
    s.add_argument("--height", type=int, default=512)
    s.set_defaults(func=cmd_tile)

    s = sub.add_parser("delta", help="difference-set recursion and lattice check")
    s.add_argument("cfg")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--window", required=True)
    s.add_argument("--check-lattice", action="store_true")
    s.add_argument("--csv-out")
    s.set_defaults(func=cmd_delta)

    s = sub.add_parser("fluct", help="Monte Carlo fluctuations of S(n, x)")
    s.add_argument("cfg")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--count", type=int, required=True)
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--csv-out")
    s.set_defaults(func=cmd_fluct)

    s = sub.add_parser("circle", help="fluctuation histogram of the flat-spot circle maps")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--count", type=int, required=True)
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--bins", type=int, default=circlemap.N_BINS)
    s.add_argument("--csv-out")
    s.set_defaults(func=cmd_circle)

    s = sub.add_parser("rho", help="rotation number of one circle map")
    s.add_argument("--t", type=float, required=True)
    s.add_argument("--n", type=int, default=10_000)
    s.add_argument("--x0", type=float, default=0.0)
    s.set_defaults(func=cmd_rho)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        args.func(args, out)
    except UsageError as exc:
        print(f"fracsum {args.command}: usage error: {exc}", file=sys.stderr)
        return 2
    except FracsumError as exc:
        print(f"fracsum {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Every subcommand is deterministic: identical arguments give byte-identical
output (the version banner appears only in the human-readable table format).
Exit codes: 0 success, 1 computation error, 2 validation error, 3 a
mathematical check ran and was falsified.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import __version__
from .base import BaseSequence, DigitExpansion, as_fraction, encode, make_base, make_expansion
from .dynamics import OrbitSpec, apply_map, orbit_point, orbit_prefix
from .analysis import derivative_probe, difference_quotient, find_witness_descending
from .density import density, intersect, parse_periodic_set
from .equidist import SOURCES, membership_equivalence, ud_preservation_probe
from .errors import (
    CantorPermError,
    CheckFalsified,
    ValidationError,
)
from .perms import PermutationVector, parse_permutations, shift_vector


def fmt_frac(f: Fraction) -> str:
    return f"{f.numerator}/{f.denominator}"


@dataclass
class Session:
    base: BaseSequence
    pv: PermutationVector
    alpha_digits: DigitExpansion
    depth: int

    @property
    def orbit_spec(self) -> OrbitSpec:
        return OrbitSpec(self.alpha_digits, self.pv, self.depth)


def build_session(args) -> Session:
    moduli = [int(part) for part in args.bases.split(",")]
    depth = args.depth if args.depth is not None else len(moduli)
    if depth < 1 or depth > len(moduli):
        raise ValidationError(f"depth {depth} not in [1, {len(moduli)}]")
    base = make_base(moduli[:depth])
    pv = _build_perms(args.perms, base)
    alpha_digits = encode(as_fraction(args.alpha), base, depth)
    return Session(base=base, pv=pv, alpha_digits=alpha_digits, depth=depth)


def _build_perms(spec: str, base: BaseSequence) -> PermutationVector:
    if spec == "shift":
        return shift_vector(base)
    if ":" in spec:
        text = spec.replace(";", "\n")
    else:
        path = Path(spec)
        if not path.is_file():
            raise ValidationError(f"permutation file {spec!r} not found")
        text = path.read_text()
    lines = [ln for ln in text.splitlines() if ln.split("#", 1)[0].strip()]
    return parse_permutations("\n".join(lines[: base.depth]), base)


def emit(args, table_lines, csv_lines, payload) -> None:
    if args.format == "table":
        text = "\n".join([f"# cantorperm {__version__}"] + table_lines) + "\n"
    elif args.format == "csv":
        text = "\n".join(csv_lines) + "\n"
    else:
        text = json.dumps(payload, indent=2) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _digits_str(digits) -> str:
    return ",".join(str(b) for b in digits)


# --- subcommand handlers ---

def cmd_expand(args) -> int:
    session = build_session(args)
    value = as_fraction(args.value)
    digits = encode(value, session.base, session.depth)
    emit(
        args,
        table_lines=[_digits_str(digits.digits)],
        csv_lines=[
            "digits,value_num,value_den",
            ";".join(str(b) for b in digits.digits)
            + f",{value.numerator},{value.denominator}",
        ],
        payload={
            "digits": list(digits.digits),
            "value_num": value.numerator,
            "value_den": value.denominator,
        },
    )
    return 0


def cmd_decode(args) -> int:
    session = build_session(args)
    digits = make_expansion([int(d) for d in args.digits.split(",")], session.base)
    value = digits.value
    emit(
        args,
        table_lines=[fmt_frac(value)],
        csv_lines=["value_num,value_den", f"{value.numerator},{value.denominator}"],
        payload={"value_num": value.numerator, "value_den": value.denominator},
    )
    return 0


def cmd_map(args) -> int:
    session = build_session(args)
    source = encode(as_fraction(args.value), session.base, session.depth)
    image = apply_map(session.pv, source)
    value = image.value
    emit(
        args,
        table_lines=[
            f"digits: {_digits_str(image.digits)}",
            f"value: {fmt_frac(value)}",
        ],
        csv_lines=[
            "digits,value_num,value_den",
            ";".join(str(b) for b in image.digits)
            + f",{value.numerator},{value.denominator}",
        ],
        payload={
            "digits": list(image.digits),
            "value_num": value.numerator,
            "value_den": value.denominator,
        },
    )
    return 0


def _orbit_rows(points):
    rows = []
    for point in points:
        value = point.value
        rows.append(
            (
                point.index,
                value.numerator,
                value.denominator,
                ";".join(str(b) for b in point.digits.digits),
            )
        )
    return rows


def cmd_orbit(args) -> int:
    session = build_session(args)
    spec = session.orbit_spec
    if args.at is not None:
        points = [orbit_point(spec, args.at)]
    else:
        points = orbit_prefix(spec, args.count)
    rows = _orbit_rows(points)
    csv_lines = ["n,value_num,value_den,digits"] + [
        f"{n},{num},{den},{digs}" for n, num, den, digs in rows
    ]
    table_lines = [f"n={n}  value={num}/{den}  digits={digs}" for n, num, den, digs in rows]
    payload = [
        {"n": n, "value_num": num, "value_den": den, "digits": [int(d) for d in digs.split(";")]}
        for n, num, den, digs in rows
    ]
    emit(args, table_lines, csv_lines, payload)
    return 0


def _level_report_output(args, report, extra_table=()):
    table_lines = [
        f"level {report.level}, N={report.sample_size}, "
        f"expected {fmt_frac(report.intervals[0].expected)} per interval"
    ]
    for stat in report.intervals:
        table_lines.append(
            f"I_{stat.index}: class {stat.residue}  count {stat.count}"
        )
    table_lines.append(f"d_star: {fmt_frac(report.d_star)}")
    table_lines.extend(extra_table)
    csv_lines = ["j,residue,modulus,count,expected_num,expected_den"] + [
        f"{s.index},{s.residue.residue},{s.residue.modulus},{s.count},"
        f"{s.expected.numerator},{s.expected.denominator}"
        for s in report.intervals
    ]
    payload = {
        "level": report.level,
        "N": report.sample_size,
        "intervals": [
            {
                "j": s.index,
                "residue": s.residue.residue,
                "modulus": s.residue.modulus,
                "count": s.count,
                "expected_num": s.expected.numerator,
                "expected_den": s.expected.denominator,
            }
            for s in report.intervals
        ],
        "d_star_num": report.d_star.numerator,
        "d_star_den": report.d_star.denominator,
    }
    emit(args, table_lines, csv_lines, payload)


def cmd_check_ud(args) -> int:
    session = build_session(args)
    report = membership_equivalence(session.orbit_spec, args.level, args.count)
    counts = [s.count for s in report.intervals]
    if args.count % len(counts) == 0:
        balanced = all(c == args.count // len(counts) for c in counts)
    else:
        balanced = max(counts) - min(counts) <= 1
    _level_report_output(args, report)
    if not balanced:
        print("check falsified: interval counts unbalanced", file=sys.stderr)
        return 3
    return 0


def cmd_check_equivalence(args) -> int:
    session = build_session(args)
    # raises (exit 3) on any index violating the congruence
    report = membership_equivalence(session.orbit_spec, args.level, args.count)
    _level_report_output(args, report)
    return 0


def cmd_check_preserve(args) -> int:
    session = build_session(args)
    probe = ud_preservation_probe(session.pv, args.source, args.count, args.level)
    table_lines = [
        f"source {probe.source}, N={probe.sample_size}, level {probe.level}",
        f"input d_star: {fmt_frac(probe.input_d_star)}",
        f"image d_star: {fmt_frac(probe.image_d_star)}",
    ]
    if probe.grid_exact is not None:
        table_lines.append(f"grid image equals grid: {probe.grid_exact}")
    csv_lines = ["j,count,expected_num,expected_den"] + [
        f"{j},{c},{probe.expected.numerator},{probe.expected.denominator}"
        for j, c in enumerate(probe.counts)
    ]
    payload = {
        "source": probe.source,
        "N": probe.sample_size,
        "level": probe.level,
        "input_d_star_num": probe.input_d_star.numerator,
        "input_d_star_den": probe.input_d_star.denominator,
        "image_d_star_num": probe.image_d_star.numerator,
        "image_d_star_den": probe.image_d_star.denominator,
        "intervals": [
            {
                "j": j,
                "count": c,
                "expected_num": probe.expected.numerator,
                "expected_den": probe.expected.denominator,
            }
            for j, c in enumerate(probe.counts)
        ],
        "grid_exact": probe.grid_exact,
    }
    emit(args, table_lines, csv_lines, payload)
    if probe.grid_exact is False:
        print("check falsified: grid image differs from grid", file=sys.stderr)
        return 3
    if probe.grid_exact and probe.input_d_star != probe.image_d_star:
        print("check falsified: grid discrepancy changed", file=sys.stderr)
        return 3
    if args.threshold is not None and probe.image_d_star > as_fraction(args.threshold):
        print(
            f"check falsified: image d_star {fmt_frac(probe.image_d_star)} "
            f"above threshold {args.threshold}",
            file=sys.stderr,
        )
        return 3
    return 0


def cmd_density(args) -> int:
    ps = parse_periodic_set(args.set)
    if args.intersect:
        ps = intersect(ps, parse_periodic_set(args.intersect))
    d = density(ps)
    emit(
        args,
        table_lines=[f"set: {ps}", f"density: {fmt_frac(d)}"],
        csv_lines=[
            "residues,modulus,density_num,density_den",
            ";".join(str(r) for r in sorted(ps.residues))
            + f",{ps.modulus},{d.numerator},{d.denominator}",
        ],
        payload={
            "modulus": ps.modulus,
            "residues": sorted(ps.residues),
            "density_num": d.numerator,
            "density_den": d.denominator,
        },
    )
    return 0


def cmd_probe_monotone(args) -> int:
    session = build_session(args)
    witness = find_witness_descending(
        session.pv, args.level, args.interval, max_descent=args.max_descend
    )
    roles = ("inc_low", "inc_high", "dec_low", "dec_high")
    digit_of = dict(
        zip(roles, witness.increasing_digits + witness.decreasing_digits)
    )
    table_lines = [
        f"witness at level {witness.level}, interval {witness.interval_index}",
        f"increasing digits {witness.increasing_digits}, "
        f"decreasing digits {witness.decreasing_digits}",
    ]
    for role, point, image in zip(roles, witness.points, witness.images):
        table_lines.append(
            f"{role}: point {fmt_frac(point)} -> image {fmt_frac(image)}"
        )
    csv_lines = ["role,digit,point_num,point_den,image_num,image_den"] + [
        f"{role},{digit_of[role]},{p.numerator},{p.denominator},"
        f"{im.numerator},{im.denominator}"
        for role, p, im in zip(roles, witness.points, witness.images)
    ]
    payload = {
        "requested_level": args.level,
        "requested_interval": args.interval,
        "level": witness.level,
        "interval_index": witness.interval_index,
        "increasing_digits": list(witness.increasing_digits),
        "decreasing_digits": list(witness.decreasing_digits),
        "points": [fmt_frac(p) for p in witness.points],
        "images": [fmt_frac(im) for im in witness.images],
    }
    emit(args, table_lines, csv_lines, payload)
    return 0


def cmd_probe_quotient(args) -> int:
    session = build_session(args)
    sample = difference_quotient(
        session.pv, session.alpha_digits, args.digit, args.ell
    )
    q = sample.quotient
    emit(
        args,
        table_lines=[fmt_frac(q)],
        csv_lines=[
            "s,a_s,ell,quot_num,quot_den",
            f"{sample.digit_level},{sample.original_digit},{sample.perturbed_digit},"
            f"{q.numerator},{q.denominator}",
        ],
        payload={
            "s": sample.digit_level,
            "a_s": sample.original_digit,
            "ell": sample.perturbed_digit,
            "quot_num": q.numerator,
            "quot_den": q.denominator,
        },
    )
    return 0


def cmd_probe_derivative(args) -> int:
    session = build_session(args)
    report = derivative_probe(session.pv, session.alpha_digits, args.max_level)
    csv_lines = ["s,a_s,ell,quot_num,quot_den"]
    for lq in report.levels:
        perm = session.pv.perms[lq.level]
        for ell in range(perm.modulus):
            if ell == lq.digit:
                continue
            q = Fraction(perm.image[lq.digit] - perm.image[ell], lq.digit - ell)
            csv_lines.append(
                f"{lq.level},{lq.digit},{ell},{q.numerator},{q.denominator}"
            )
    table_lines = []
    for lq in report.levels:
        quots = " ".join(fmt_frac(q) for q in lq.quotients)
        table_lines.append(
            f"level {lq.level} digit {lq.digit}: quotients {quots}"
            f"  one_achievable={lq.achieves_one}"
        )
    table_lines.append(f"one_at_every_level: {report.one_at_every_level}")
    table_lines.append(
        "candidates: " + ",".join(str(c) for c in report.candidates)
    )
    table_lines.append(f"candidates_stable: {report.candidates_stable}")
    payload = {
        "levels": [
            {
                "level": lq.level,
                "digit": lq.digit,
                "quotients": [fmt_frac(q) for q in lq.quotients],
                "achieves_one": lq.achieves_one,
                "successor_candidate": lq.successor_candidate,
                "zero_candidate": lq.zero_candidate,
            }
            for lq in report.levels
        ],
        "one_at_every_level": report.one_at_every_level,
        "candidates": list(report.candidates),
        "candidates_stable": report.candidates_stable,
    }
    emit(args, table_lines, csv_lines, payload)
    return 0


# --- parser ---

def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--bases", default="2,3,5", help="comma-separated moduli")
    common.add_argument(
        "--perms",
        default="shift",
        help='"shift", a permutation file path, or inline "m:i0,i1,..;m:.."',
    )
    common.add_argument("--alpha", default="0", help='seed as "p/q"')
    common.add_argument("--depth", type=int, default=None, help="working depth")
    common.add_argument(
        "--format", choices=("table", "csv", "json"), default="table"
    )
    common.add_argument("--out", default=None, help="write output to this file")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_parser()
    parser = argparse.ArgumentParser(
        prog="cantorperm",
        description="Digit-permutation dynamics on Cantor series expansions",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("expand", parents=[common], help="digits of a rational")
    p.add_argument("--value", required=True)
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("decode", parents=[common], help="rational value of digits")
    p.add_argument("--digits", required=True)
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("map", parents=[common], help="apply the map once")
    p.add_argument("--value", required=True)
    p.set_defaults(func=cmd_map)

    p = sub.add_parser("orbit", parents=[common], help="orbit points as CSV")
    p.add_argument("--count", type=int, default=None)
    p.add_argument("--at", type=int, default=None, help="single random-access index")
    p.set_defaults(func=cmd_orbit)

    check = sub.add_parser("check", help="exact and statistical checks")
    check_sub = check.add_subparsers(dest="subcheck", required=True)
    p = check_sub.add_parser("ud", parents=[common], help="interval count balance")
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--count", type=int, required=True)
    p.set_defaults(func=cmd_check_ud)
    p = check_sub.add_parser(
        "equivalence", parents=[common], help="interval/residue-class equivalence"
    )
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--count", type=int, required=True)
    p.set_defaults(func=cmd_check_equivalence)
    p = check_sub.add_parser(
        "preserve", parents=[common], help="distribution preservation probe"
    )
    p.add_argument("--source", choices=SOURCES, required=True)
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--threshold", default=None, help='fail if image d_star > "p/q"')
    p.set_defaults(func=cmd_check_preserve)

    p = sub.add_parser("density", parents=[common], help="density of a periodic set")
    p.add_argument("--set", required=True, help='literal "r1,r2,...(M)"')
    p.add_argument("--intersect", default=None, help="intersect with this set first")
    p.set_defaults(func=cmd_density)

    probe = sub.add_parser("probe", help="monotonicity and derivative probes")
    probe_sub = probe.add_subparsers(dest="subprobe", required=True)
    p = probe_sub.add_parser(
        "monotone", parents=[common], help="non-monotonicity witness"
    )
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--interval", type=int, required=True)
    p.add_argument("--max-descend", type=int, default=None)
    p.set_defaults(func=cmd_probe_monotone)
    p = probe_sub.add_parser(
        "quotient", parents=[common], help="single difference quotient"
    )
    p.add_argument("--digit", type=int, required=True)
    p.add_argument("--ell", type=int, required=True)
    p.set_defaults(func=cmd_probe_quotient)
    p = probe_sub.add_parser(
        "derivative", parents=[common], help="achievable quotients per level"
    )
    p.add_argument("--max-level", type=int, required=True)
    p.set_defaults(func=cmd_probe_derivative)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.func is cmd_orbit and args.at is None and args.count is None:
        print("error: orbit needs --count or --at", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except CheckFalsified as exc:
        print(f"check falsified: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    except CantorPermError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

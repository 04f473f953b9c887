"""``surface-cert`` command line.

Exit codes: 0 pass, 2 fail (or route rejected), 3 inconclusive,
64 usage error, 65 bar-complex size cap exceeded, 66 missing data.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from surface_cert.certificate import (
    ROUTES,
    RouteRejected,
    TargetError,
    canonical_json,
    format_table_report,
    reproduce_table,
    resolve_target,
    verify_cyclic_route,
    verify_heisenberg_route,
    verify_twist_spin_route,
)
from surface_cert.constructions import DataError, knot_by_name, load_knot_file
from surface_cert.coset import DEFAULT_MAX_COSETS
from surface_cert.homology import (
    DEFAULT_SIZE_CAP,
    EvidenceError,
    SizeCapExceeded,
    bar_homology,
    homology_cyclic,
    psl2_p_torsion_degrees,
)
from surface_cert.perm import DEFAULT_SEARCH_BUDGET, DEFAULT_SEED, cyclic_group, dihedral_group, quaternion_group

EXIT_PASS, EXIT_FAIL, EXIT_INCONCLUSIVE = 0, 2, 3
EXIT_USAGE, EXIT_SIZE_CAP, EXIT_DATA = 64, 65, 66
VERDICT_EXIT = {"pass": EXIT_PASS, "fail": EXIT_FAIL, "inconclusive": EXIT_INCONCLUSIVE}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _seed(text: str) -> int:
    return int(text, 0)


def _positive(text: str) -> int:
    value = int(text, 0)
    if value <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="surface-cert", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    common = _Parser(add_help=False)
    common.add_argument("--seed", type=_seed, default=DEFAULT_SEED,
                        help="seed for every randomized step (default 0xC0FFEE)")
    common.add_argument("--data-dir", help="directory with group data files (or $SURFACE_CERT_DATA)")
    common.add_argument("--output", "-o", help="write the report here instead of stdout")
    common.add_argument("--format", choices=("json", "text"), default="json")

    v = sub.add_parser("verify", parents=[common], help="build and verify a certificate")
    v.add_argument("--route", choices=ROUTES, required=True)
    v.add_argument("--genus", type=int, default=1)
    v.add_argument("--euler", type=int, help="Euler number n of the circle bundle")
    v.add_argument("--target", help="M11, M12, M22, M23, psl2_<p> or he3_<p>")
    v.add_argument("--prime", type=int)
    v.add_argument("--mu-sign", type=int, choices=(1, -1), default=1)
    v.add_argument("--knot", default=None, help="built-in knot: unknot, trefoil, cinquefoil")
    v.add_argument("--knot-file", help="knot group presentation file with 'mark mu = ...'")
    v.add_argument("-d", type=int, help="twist-spin divisor d")
    v.add_argument("-m", type=int, default=1)
    v.add_argument("--coset-budget", type=_positive, default=DEFAULT_MAX_COSETS)
    v.add_argument("--search-budget", type=_positive, default=DEFAULT_SEARCH_BUDGET)

    h = sub.add_parser("homology", parents=[common], help="integral homology in low degrees")
    src = h.add_mutually_exclusive_group(required=True)
    src.add_argument("--cyclic", type=int, metavar="N")
    src.add_argument("--group", help="he3_<p>, cyclic_<n>, dihedral_<n>, q8, psl2_<p>, M11...")
    src.add_argument("--psl2", type=int, metavar="P")
    h.add_argument("--degree", type=int, default=3)
    h.add_argument("--method", choices=("bar",), default="bar")
    h.add_argument("--size-cap", type=_positive, default=DEFAULT_SIZE_CAP)
    h.add_argument("--p-torsion-degrees", action="store_true")
    h.add_argument("--max", type=int, default=12, dest="k_max")

    t = sub.add_parser("table", parents=[common], help="reproduce the sporadic table at desk scale")
    t.add_argument("--scope", choices=("desk",), default="desk")
    t.add_argument("--group", action="append", help="restrict to one group (repeatable)")
    t.add_argument("--search-budget", type=_positive, default=DEFAULT_SEARCH_BUDGET)
    return parser


def _emit(args, text: str) -> None:
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)


def _knot(args):
    if args.knot_file:
        return load_knot_file(args.knot_file)
    try:
        return knot_by_name(args.knot or "trefoil")
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_verify(args) -> int:
    if args.route == "twist-spin":
        if args.d is None:
            raise UsageError("--route twist-spin needs -d")
        cert = verify_twist_spin_route(_knot(args), args.d, args.m, args.coset_budget, args.seed)
    else:
        if args.euler is None or args.prime is None:
            raise UsageError(f"--route {args.route} needs --euler and --prime")
        try:
            if args.route == "cyclic":
                cert = verify_cyclic_route(args.genus, args.euler, args.prime, args.seed, args.mu_sign)
            else:
                if not args.target:
                    raise UsageError("--route heisenberg needs --target")
                target = resolve_target(args.target, args.data_dir)
                cert = verify_heisenberg_route(args.genus, args.euler, target, args.prime,
                                               seed=args.seed, mu_sign=args.mu_sign,
                                               search_budget=args.search_budget)
        except RouteRejected as exc:
            print(f"route rejected: {exc}", file=sys.stderr)
            return EXIT_FAIL
        except EvidenceError as exc:
            print(f"no usable H_3 evidence: {exc}", file=sys.stderr)
            return EXIT_INCONCLUSIVE
    _emit(args, canonical_json(cert) if args.format == "json" else cert.to_text())
    return VERDICT_EXIT[cert.verdict]


def _named_group(name: str, data):
    kind, _, arg = name.partition("_")
    if name == "q8":
        return quaternion_group()
    if kind == "cyclic" and arg.isdigit():
        return cyclic_group(int(arg))
    if kind == "dihedral" and arg.isdigit():
        return dihedral_group(int(arg))
    return resolve_target(name, data).group


def cmd_homology(args) -> int:
    if args.psl2 is not None:
        if not args.p_torsion_degrees:
            raise UsageError("--psl2 needs --p-torsion-degrees")
        try:
            degrees = sorted(psl2_p_torsion_degrees(args.psl2, args.k_max))
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        doc = {"schema": 1, "group": f"PSL2({args.psl2})", "p": args.psl2, "max_degree": args.k_max,
               "p_torsion_degrees": degrees, "method": "swan-weyl", "certified": True}
        text = f"PSL2({args.psl2}): {args.psl2}-torsion in degrees {{{', '.join(map(str, degrees))}}} up to {args.k_max}\n"
    elif args.cyclic is not None:
        if args.cyclic < 1 or args.degree < 0:
            raise UsageError("--cyclic needs N >= 1 and a non-negative degree")
        s = homology_cyclic(args.cyclic, args.degree)
        doc = {"schema": 1, "group": f"cyclic_{args.cyclic}", "degree": args.degree,
               "structure": s.to_json(), "text": str(s), "method": "periodic", "certified": True}
        text = f"H_{args.degree}(Z/{args.cyclic}; Z) = {s}  [periodic, certified]\n"
    else:
        try:
            G = _named_group(args.group, args.data_dir)
        except TargetError as exc:
            raise UsageError(str(exc)) from None
        try:
            r = bar_homology(G, args.degree, args.size_cap, group_id=args.group)
        except SizeCapExceeded as exc:
            print(str(exc), file=sys.stderr)
            return EXIT_SIZE_CAP
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        doc = dict(r.to_json(), schema=1)
        text = f"H_{r.degree}({r.group_id}; Z) = {r.structure}  [{r.method}, certified={r.certified}]\n"
    _emit(args, canonical_json(doc) if args.format == "json" else text)
    return EXIT_PASS


def cmd_table(args) -> int:
    try:
        report = reproduce_table(args.scope, args.seed, args.search_budget, args.data_dir, args.group)
    except TargetError as exc:
        raise UsageError(str(exc)) from None
    _emit(args, canonical_json(report) if args.format == "json" else format_table_report(report))
    return EXIT_PASS


COMMANDS = {"verify": cmd_verify, "homology": cmd_homology, "table": cmd_table}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"surface-cert: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DataError as exc:
        print(f"surface-cert: data error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())

"""Command line interface: alpha-spectra <subcommand> [options].

Exit codes are 0 on success, 1 on a computational or property failure and 2
on invalid input.
"""

import argparse
import csv
import json
import logging
import sys
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from pydantic import BaseModel, ConfigDict, ValidationError

from .appendix import verify_appendix
from .charpoly import largest_real_root, phi
from .enumeration import (
    SearchSpace,
    argmax_radius,
    compare_pair,
    conjecture_probe,
    enumerate_graphs,
    write_census,
)
from .errors import (
    AlphaSpectraError,
    CapExceeded,
    DisconnectedGraph,
    GapBelowResolution,
)
from .families import Family, FamilySpec, bstar3, bstar5, build, family_roles
from .graph import Graph, diameter, from_graph6, to_graph6
from .lemmas import verify_lemmas
from .settings import Settings
from .spectral import spectral_radius
from .validators import val_decimal_alpha

logger = logging.getLogger(__name__)

TABLE1_ALPHAS = ("0", "0.1", "0.2", "0.3", "0.4", "0.5", "0.6", "0.7", "0.8")
TABLE1_COLUMNS = ("alpha", "rho_b3", "rho_b5", "dr")


def parse_alpha(text: str) -> Fraction:
    """argparse type: decimal or rational literal read exactly, "0.1" -> 1/10"""
    try:
        val_decimal_alpha(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))
    return Fraction(text.strip())


def parse_alpha_list(text: str) -> list[str]:
    items = [item.strip() for item in text.split(",") if item.strip()]
    if not items:
        raise argparse.ArgumentTypeError("Expected a comma separated list of alphas")
    for item in items:
        parse_alpha(item)
    return items


def positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"'{text}' is not an integer")
    if value < 1:
        raise argparse.ArgumentTypeError(f"Expected a positive integer, got {value}")
    return value


def read_graph(text: str) -> Graph:
    """A family description such as "bstar3:n=16,d=9", a graph6 string, or "-" for stdin

    Raises:
        InvalidFamilyParams
        InvalidGraph6
    """
    if text == "-":
        text = sys.stdin.readline()
    text = text.strip()
    if ":" in text or text in (Family.INF_SMALL.value, Family.THETA_SMALL.value):
        return build(FamilySpec.parse(text))
    return from_graph6(text)


def _write_json(data, out: Optional[Path]) -> None:
    if out is not None:
        with open(out, "w", encoding="utf-8") as f:
            json.dump(data, f, indent=2)


class Table1Row(BaseModel):
    alpha: str
    rho_b3: float
    rho_b5: float
    dr: float

    model_config = ConfigDict(frozen=True)


def table1(
    alphas: Sequence[str] = TABLE1_ALPHAS,
    n: int = 16,
    d: int = 9,
    settings: Optional[Settings] = None,
) -> list[Table1Row]:
    """rho_alpha(B3*(n,d)), rho_alpha(B5*(n,d)) and their difference for each alpha"""
    cfg = settings or Settings()
    first, second = bstar3(n, d), bstar5(n, d)
    rows = []
    for alpha in alphas:
        rho_b3 = spectral_radius(first, alpha, settings=cfg).radius
        rho_b5 = spectral_radius(second, alpha, settings=cfg).radius
        rows.append(Table1Row(alpha=alpha, rho_b3=rho_b3, rho_b5=rho_b5, dr=rho_b3 - rho_b5))
    return rows


def write_table1_csv(rows: Sequence[Table1Row], f) -> None:
    writer = csv.DictWriter(f, fieldnames=TABLE1_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        record = row.model_dump()
        writer.writerow({k: repr(v) if isinstance(v, float) else v for k, v in record.items()})


def read_table1_csv(f) -> list[Table1Row]:
    return [Table1Row.model_validate(record) for record in csv.DictReader(f)]


def cmd_radius(args, cfg: Settings) -> int:
    g = read_graph(args.graph)
    result = spectral_radius(g, args.alpha, tol=args.tol, settings=cfg)
    print(f"rho_{args.alpha} = {result.radius:.12f}")
    print(f"residual = {result.residual:.3e} after {result.iterations} iterations")
    if args.perron:
        print("perron = " + " ".join(f"{v:.10f}" for v in result.perron))
    _write_json(
        {
            "graph6": to_graph6(g),
            "alpha": str(args.alpha),
            "radius": result.radius,
            "residual": result.residual,
            "iterations": result.iterations,
            "perron": list(result.perron),
        },
        args.out,
    )
    return 0


def cmd_charpoly(args, cfg: Settings) -> int:
    g = read_graph(args.graph)
    poly = phi(g, args.alpha)
    print(f"phi_{args.alpha}(x) = {poly}")
    root = largest_real_root(poly)
    if root is not None:
        print(f"largest root in [{float(root[0]):.12f}, {float(root[1]):.12f}]")
    _write_json(
        {"graph6": to_graph6(g), "alpha": str(args.alpha), "coefficients": poly.to_json()},
        args.out,
    )
    return 0


def cmd_family(args, cfg: Settings) -> int:
    spec = FamilySpec.parse(args.spec)
    g = build(spec)
    roles = family_roles(spec)
    print(f"{spec}: {to_graph6(g)}")
    print(f"n = {g.n}, m = {g.m}, diameter = {diameter(g)}")
    print("roles: " + ", ".join(f"{k}={v}" for k, v in roles.items()))
    _write_json(
        {"spec": str(spec), "graph6": to_graph6(g), "n": g.n, "m": g.m,
         "diameter": diameter(g), "roles": roles},
        args.out,
    )
    return 0


def cmd_enumerate(args, cfg: Settings) -> int:
    space = SearchSpace(n=args.n, d=args.d, cyclomatic=args.cyclomatic)
    graphs = list(enumerate_graphs(space, cfg))
    print(f"{space}: {len(graphs)} isomorphism classes")
    if args.snapshot is not None:
        write_census(graphs, args.snapshot)
    if args.alpha is None:
        _write_json({"space": str(space), "census": [to_graph6(g) for g in graphs]}, args.out)
        return 0
    report = argmax_radius(space, args.alpha, settings=cfg)
    print(f"maximiser {to_graph6(report.maximizer)} with rho = {report.radius:.12f}")
    print(f"runner-up gap {report.runner_up_gap:.3e}, near ties {len(report.near_ties)}")
    for g in report.exact_ties:
        print(f"EXACT TIE with {to_graph6(g)}")
    _write_json(report.to_json(), args.out)
    return 0


def cmd_compare(args, cfg: Settings) -> int:
    g, h = read_graph(args.first), read_graph(args.second)
    try:
        result = compare_pair(g, h, args.alpha, settings=cfg)
    except GapBelowResolution as e:
        print(f"indistinguishable: {e}")
        _write_json({"alpha": str(args.alpha), "ordering": 0, "gap": e.gap, "bound": e.bound}, args.out)
        return 0
    relation = ">" if result.sign > 0 else "<"
    print(f"rho(first) {relation} rho(second): gap {result.gap:.6e} +- {result.bound:.1e}")
    _write_json(
        {"alpha": str(args.alpha), "ordering": result.sign, "gap": result.gap, "bound": result.bound},
        args.out,
    )
    return 0


def cmd_table1(args, cfg: Settings) -> int:
    rows = table1(args.alphas, args.n, args.d, settings=cfg)
    if args.out is None:
        write_table1_csv(rows, sys.stdout)
    else:
        with open(args.out, "w", encoding="utf-8", newline="") as f:
            write_table1_csv(rows, f)
        for row in rows:
            print(f"alpha={row.alpha:>4}  DR={row.dr:+.5f}")
    return 0


def cmd_verify_appendix(args, cfg: Settings) -> int:
    report = verify_appendix(args.zmax)
    for reading, ok in report.readings.items():
        print(f"reading {reading}: {'validates' if ok else 'fails'}")
    for check in report.mismatches:
        print(f"MISMATCH F_{check.i}{check.j} at z={check.z}")
        print(f"  expected {check.expected}")
        print(f"  actual   {check.actual}")
    print(f"{len(report.checks) - len(report.mismatches)}/{len(report.checks)} identities hold")
    _write_json(
        {
            "zmax": report.zmax,
            "passed": report.passed,
            "readings": report.readings,
            "mismatches": [
                {"i": c.i, "j": c.j, "z": c.z, "expected": c.expected.to_json(),
                 "actual": c.actual.to_json()}
                for c in report.mismatches
            ],
        },
        args.out,
    )
    return 0 if report.passed else 1


def cmd_verify_lemmas(args, cfg: Settings) -> int:
    report = verify_lemmas(args.seed, args.instances, args.negative_control, settings=cfg)
    for suite in report.suites:
        status = "ok" if suite.passed else "FAILED"
        print(f"{suite.name:<24} {status:<7} checked {suite.checked}, discarded {suite.discarded}")
        for bad in suite.violations[:5]:
            print(f"  counterexample alpha={bad.alpha}: {bad.before} -> {bad.after} ({bad.detail})")
    _write_json(report.model_dump(), args.out)
    return 0 if report.passed else 1


def cmd_conjecture_probe(args, cfg: Settings) -> int:
    records = conjecture_probe(range(args.nmin, args.nmax + 1), args.alphas, settings=cfg)
    for r in records:
        verdict = "B3*" if r.is_bstar3 else "other"
        print(f"B({r.n},{r.d}) alpha={r.alpha}: {verdict} {r.maximizer}")
    _write_json([{**r.model_dump(), "alpha": str(r.alpha)} for r in records], args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="alpha-spectra",
        description="alpha-spectral radii and characteristic polynomials of graphs",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="Log progress at DEBUG level")
    commands = parser.add_subparsers(dest="command", required=True)

    def command(name: str, handler, help: str) -> argparse.ArgumentParser:
        sub = commands.add_parser(name, help=help)
        sub.set_defaults(handler=handler)
        sub.add_argument("--out", type=Path, default=None, help="Write a JSON/CSV report to this path")
        return sub

    radius = command("radius", cmd_radius, "Spectral radius of A_alpha(G)")
    radius.add_argument("graph", help='graph6 string, family such as "bstar3:n=16,d=9", or -')
    radius.add_argument("--alpha", type=parse_alpha, required=True)
    radius.add_argument("--tol", type=float, default=None, help="Residual tolerance")
    radius.add_argument("--perron", action="store_true", help="Print the Perron vector")

    charpoly = command("charpoly", cmd_charpoly, "Characteristic polynomial of A_alpha(G)")
    charpoly.add_argument("graph")
    charpoly.add_argument("--alpha", type=parse_alpha, required=True)

    family = command("family", cmd_family, "Construct a family member")
    family.add_argument("spec", help='e.g. "theta3:s=3,a=5,b=4"')

    enumerate_ = command("enumerate", cmd_enumerate, "Census of U(n,d) or B(n,d)")
    enumerate_.add_argument("--n", type=positive_int, required=True)
    enumerate_.add_argument("--d", type=positive_int, required=True)
    enumerate_.add_argument("--cyclomatic", type=int, choices=(1, 2), required=True)
    enumerate_.add_argument("--alpha", type=parse_alpha, default=None, help="Also find the maximiser")
    enumerate_.add_argument("--snapshot", type=Path, default=None, help="graph6 line file")

    compare = command("compare", cmd_compare, "Order two spectral radii")
    compare.add_argument("first")
    compare.add_argument("second")
    compare.add_argument("--alpha", type=parse_alpha, required=True)

    table = command("table1", cmd_table1, "rho_alpha(B3*) - rho_alpha(B5*) over an alpha grid")
    table.add_argument("--alphas", type=parse_alpha_list, default=list(TABLE1_ALPHAS))
    table.add_argument("--n", type=positive_int, default=16)
    table.add_argument("--d", type=positive_int, default=9)

    appendix = command("verify-appendix", cmd_verify_appendix, "Check the f_ij factorisations")
    appendix.add_argument("--zmax", type=positive_int, default=4)

    lemmas = command("verify-lemmas", cmd_verify_lemmas, "Run the lemma property suites")
    lemmas.add_argument("--seed", type=int, default=None)
    lemmas.add_argument("--instances", type=positive_int, default=None)
    lemmas.add_argument(
        "--negative-control", action="store_true", help="Invert the graft Perron condition"
    )

    probe = command("conjecture-probe", cmd_conjecture_probe, "Is B3* extremal for 1/2 < alpha < 1?")
    probe.add_argument("--nmin", type=positive_int, default=6)
    probe.add_argument("--nmax", type=positive_int, default=8)
    probe.add_argument("--alphas", type=parse_alpha_list, default=["0.6", "0.75", "0.9"])

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    cfg = Settings()
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else cfg.LOG_LEVEL,
        format="%(asctime)s %(name)s %(levelname)s %(message)s",
    )
    try:
        return args.handler(args, cfg)
    except (ValidationError, ValueError, CapExceeded, DisconnectedGraph) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except AlphaSpectraError as e:
        print(f"failed: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

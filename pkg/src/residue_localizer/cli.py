#!/usr/bin/env python3
"""
Command-line interface for the residue localizer

    residue-localizer validate FILE
    residue-localizer residue FILE --phi "c1*c2" [--vanishing]
    residue-localizer chern FILE
    residue-localizer spectrum FILE
    residue-localizer chiy FILE [--limits] [--y1-coefficient] [--pairing-check] [--sample]
    residue-localizer scan --dim N FILE...
    residue-localizer catalog {cpn,points,blowup} [--out FILE]

FILE may also be "catalog:blowup" for the packaged blown-up plane.
Exit status: 0 all checks pass, 1 an identity check failed, 2 bad input.
"""
import argparse
import json
import logging
import sys
from typing import Callable, Dict, Optional, Sequence

from . import __version__
from .catalog import (
    SCHEMA_VERSION,
    WeightSpec,
    blowup_plane,
    cpn_weighted,
    isolated_from_weights,
    load_file,
    parse_point,
    save_data,
    write_file,
)
from .chiy import (
    NonConstant,
    assert_rigidity,
    equivariant_chi_y,
    limits_check,
    pairing_identity_check,
    sampled_rigidity,
    specializations,
    y_plus_one_coefficient,
)
from .cohomology import FixedPointData
from .config import Settings, load_settings
from .errors import LocalizationError
from .invariants import InvariantPoly, monomials_of_degree, parse_phi
from .reports import RunReport
from .residue import (
    BELOW_N,
    EQUAL_N,
    PROJECTIVE_SPACE,
    ResidueEngine,
    c1cn,
    chern_number_direct,
    futaki_invariant,
    uniqueness_scan,
    vanishing_report,
)
from .scalars import format_gauss, format_poly, format_rational, gauss
from .spectrum import (
    build_spectrum,
    check_pairing,
    common_denominator_scale,
    corollary_sum,
    trace_sum,
    zero_euler_components,
)

logger = logging.getLogger(__name__)

BLOWUP_SOURCE = "catalog:blowup"
SPECIALIZATION_POINTS = {"euler": -1, "todd": 0, "signature": 1}


def load_instance(source: str) -> FixedPointData:
    if source == BLOWUP_SOURCE:
        return blowup_plane()
    return load_file(source)


def _has_oracle(data: FixedPointData) -> bool:
    return data.manifold in (PROJECTIVE_SPACE, f"CP{data.dim}")


class ResidueLocalizerCLI:
    """Dispatches parsed arguments to one report builder per subcommand"""

    def __init__(self, settings: Optional[Settings] = None):
        self.settings = settings or load_settings()
        self.commands: Dict[str, Callable[[argparse.Namespace], Optional[RunReport]]] = {
            "validate": self.validate,
            "residue": self.residue,
            "chern": self.chern,
            "spectrum": self.spectrum,
            "chiy": self.chiy,
            "scan": self.scan,
            "catalog": self.catalog,
        }

    def run(self, args: argparse.Namespace) -> int:
        report = self.commands[args.command](args)
        if report is None:
            return 0
        if args.json:
            print(report.to_json())
        else:
            print(report.render_text())
        return report.exit_status

    def _engine(self, data: FixedPointData, args: argparse.Namespace) -> ResidueEngine:
        margin = getattr(args, "degree_margin", None)
        return ResidueEngine(data, self.settings.degree_margin if margin is None else margin)

    # ------------------------------------------------------------------
    # validate
    # ------------------------------------------------------------------

    def validate(self, args: argparse.Namespace) -> RunReport:
        data = load_instance(args.file)
        report = RunReport("validate", data.name, details={"dim": data.dim, "components": len(data.components)})
        weights = list(data.all_weights())
        report.check("schema", True, f"schema_version {SCHEMA_VERSION}")
        report.check("integral tables complete", True, f"{len(data.components)} component(s)")
        report.check("nonzero weights", True, f"{len(weights)} normal line(s)")
        report.table(
            "components",
            ["component", "dim", "weights", "e(Z)"],
            [
                [comp.name, comp.dim, " ".join(format_rational(w) for w in comp.weights),
                 format_rational(comp.euler_characteristic)]
                for comp in data.sorted_components
            ],
        )
        return report

    # ------------------------------------------------------------------
    # residue
    # ------------------------------------------------------------------

    def residue(self, args: argparse.Namespace) -> RunReport:
        data = load_instance(args.file)
        engine = self._engine(data, args)
        report = RunReport("residue", data.name, details={"dim": data.dim})
        if args.phi is None and not args.vanishing:
            raise LocalizationError("residue needs --phi EXPR or --vanishing")
        if args.phi is not None:
            phi = parse_phi(args.phi, data.dim)
            result = engine.localize(phi)
            report.details["phi"] = str(phi)
            report.details["degree"] = result.degree_class
            report.details["result"] = result.to_dict()
            value = format_gauss(result.value)
            if phi == c1cn(data.dim):
                report.check(f"f_{phi} vanishes", not result.value, value)
            elif result.degree_class == BELOW_N:
                report.check(f"f_{phi} vanishes (deg < n)", not result.value, value)
            elif result.degree_class == EQUAL_N:
                report.check(f"f_{phi} is real", not result.imaginary_violation, value)
            else:
                report.info(f"f_{phi}", value)
            report.table(
                "contributions",
                ["component", "value"],
                [[name, format_gauss(v)] for name, v in result.per_component],
            )
        if args.vanishing:
            vanishing = vanishing_report(data, engine)
            for check in vanishing.checks:
                report.check(f"f_{check.phi} = 0 ({check.kind})", check.passed, format_gauss(check.value))
            report.details["realizable"] = "yes" if vanishing.realizable else "no"
        return report

    # ------------------------------------------------------------------
    # chern
    # ------------------------------------------------------------------

    def chern(self, args: argparse.Namespace) -> RunReport:
        data = load_instance(args.file)
        engine = self._engine(data, args)
        n = data.dim
        oracle = _has_oracle(data)
        report = RunReport("chern", data.name, details={"dim": n, "oracle": data.manifold if oracle else "none"})
        rows = []
        for exps in monomials_of_degree(n, n):
            phi = InvariantPoly.monomial(n, exps)
            result = engine.localize(phi)
            value = format_gauss(result.value)
            if oracle:
                expected = chern_number_direct(n, phi, data.manifold)
                matches = result.value == gauss(expected)
                rows.append([str(phi), value, format_rational(expected)])
                report.check(f"{phi} matches direct", matches, value)
            else:
                rows.append([str(phi), value, "-"])
                report.check(f"{phi} is real", result.is_real, value)
        report.table("Chern numbers", ["monomial", "localized", "direct"], rows)
        top = engine.localize(c1cn(n))
        report.check(f"f_{top.phi} vanishes", not top.value, format_gauss(top.value))
        report.info(f"futaki f_c1^{n + 1}", format_gauss(futaki_invariant(data, engine)))
        return report

    # ------------------------------------------------------------------
    # spectrum
    # ------------------------------------------------------------------

    def spectrum(self, args: argparse.Namespace) -> RunReport:
        data = load_instance(args.file)
        spectrum = build_spectrum(data)
        report = RunReport("spectrum", data.name, details={"dim": data.dim, "size": len(spectrum)})
        report.table(
            "S(A)",
            ["eigenvalue", "multiplicity"],
            [[format_rational(key), count] for key, count in spectrum.items()],
        )
        pairing = check_pairing(spectrum)
        report.check(
            "pairing mult(l) = mult(-l)",
            pairing.ok,
            "ok" if pairing.ok else f"violated at {format_rational(pairing.violation)}",
        )
        report.check("eigenvalue sum vanishes", not corollary_sum(data), format_gauss(corollary_sum(data)))
        report.info("trace sum", format_rational(trace_sum(data)))
        zero_euler = zero_euler_components(data)
        report.info("e(Z) = 0 components", ", ".join(c.name for c in zero_euler) or "none")
        return report

    # ------------------------------------------------------------------
    # chiy
    # ------------------------------------------------------------------

    def chiy(self, args: argparse.Namespace) -> RunReport:
        original = load_instance(args.file)
        data, factor = common_denominator_scale(original)
        report = RunReport("chiy", original.name, details={"dim": data.dim})
        if factor != 1:
            report.details["weight scale"] = factor

        if args.sample:
            points = args.sample_points or self.settings.samples_for(data.dim)
            sampled = sampled_rigidity(data, points)
            if sampled.rigid:
                report.check(f"rigid at {points} sample(s)", True, sampled.constant)
                self._add_specializations(report, sampled.constant)
            else:
                q_value, value = next(
                    (q, v) for q, v in sampled.samples[1:] if v != sampled.samples[0][1]
                )
                report.check(f"rigid at {points} sample(s)", False, f"q = {format_rational(q_value)} gives {value}")
            return report

        chi = equivariant_chi_y(data)
        constant = assert_rigidity(chi)
        rigid = not isinstance(constant, NonConstant)
        report.check("rigid in q", rigid, constant)
        if rigid:
            report.details["constant"] = str(constant)
            self._add_specializations(report, constant)
            if args.limits:
                limits = limits_check(data, chi)
                report.check("q -> oo limit", limits.infinity_matches, limits.sum_at_infinity)
                report.check("q -> 0 limit", limits.zero_matches, limits.sum_at_zero)
                report.check("e(M) = sum e(Z)", limits.euler_matches, format_rational(limits.euler_sum))
                report.table(
                    "limits",
                    ["component", "chi_y(Z)", "d+", "d-", "q -> 0", "q -> oo"],
                    [[c.component, c.chi_y, c.d_plus, c.d_minus, c.at_zero, c.at_infinity] for c in limits.components],
                )
            if args.y1_coefficient:
                coefficient = y_plus_one_coefficient(data, chi)
                report.details["coefficient"] = str(coefficient.extracted)
                report.check("(y+1) coefficient", coefficient.match, coefficient.extracted)
                report.info("closed form", coefficient.closed_form)
                report.info("-(n/2) e(M)", format_rational(coefficient.lhs))
        else:
            numerators, denominator = chi.common_denominator()
            report.table(
                "residual over common denominator",
                ["y-power", "numerator"],
                [[power, format_poly(num)] for power, num in enumerate(numerators)],
            )
            report.info("common denominator", format_poly(denominator))
            if args.limits or args.y1_coefficient:
                report.info("limits / (y+1) coefficient", "skipped: not rigid")
        if args.pairing_check:
            identity = pairing_identity_check(data)
            report.check("pairing identity", identity.passed, identity.lhs)
            report.info("(1/2) sum (n-r)|e(Z)|", format_rational(identity.rhs))
        return report

    @staticmethod
    def _add_specializations(report: RunReport, constant) -> None:
        for key, value in specializations(constant).items():
            report.info(f"{key} (y={SPECIALIZATION_POINTS[key]})", format_rational(value))

    # ------------------------------------------------------------------
    # scan
    # ------------------------------------------------------------------

    def scan(self, args: argparse.Namespace) -> RunReport:
        instances = [load_instance(source) for source in args.files]
        result = uniqueness_scan(args.dim, instances)
        report = RunReport("scan", ", ".join(result.instances), details={"dim": args.dim})
        rows = []
        for entry in result.entries:
            witness = entry.witness
            if witness is None:
                rows.append([str(entry.monomial), "vanishes on all", "-"])
            else:
                rows.append([str(entry.monomial), f"witness {witness[0]}", format_gauss(witness[1])])
        report.table("degree n+1 monomials", ["monomial", "status", "value"], rows)
        report.details["classification"] = result.as_mapping()
        target = c1cn(args.dim)
        target_entry = next(entry for entry in result.entries if entry.monomial == target)
        witness = target_entry.witness
        report.check(
            f"{target} vanishes on all",
            target_entry.vanishes_on_all,
            "0" if witness is None else f"{witness[0]}: {format_gauss(witness[1])}",
        )
        if result.insufficient:
            report.info("unique vanishing monomial", f"no: insufficient instance set ({len(result.vanishing)} vanish)")
        else:
            report.info("unique vanishing monomial", "yes" if target_entry.vanishes_on_all else "no")
        return report

    # ------------------------------------------------------------------
    # catalog
    # ------------------------------------------------------------------

    def catalog(self, args: argparse.Namespace) -> None:
        if args.kind == "cpn":
            data = cpn_weighted(WeightSpec.parse(args.weights), name=args.name)
        elif args.kind == "points":
            points = [parse_point(text) for text in args.point or []]
            data = isolated_from_weights(args.dim, points, name=args.name or "points")
        else:
            data = blowup_plane()
        if args.out:
            write_file(data, args.out)
            logger.info("wrote %s to %s", data.name, args.out)
            print(f"wrote {data.name} to {args.out}")
        else:
            print(save_data(data), end="")
        return None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable report")
    common.add_argument("-v", "--verbose", action="count", default=0, help="log to stderr (-vv for debug)")

    parser = argparse.ArgumentParser(
        prog="residue-localizer",
        description="Exact residue localization checks for fixed-point data",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="schema, table completeness and nonzero weights")
    p.add_argument("file")

    p = sub.add_parser("residue", parents=[common], help="evaluate f_phi")
    p.add_argument("file")
    p.add_argument("--phi", help="invariant polynomial, e.g. \"c1*c2 - 3*c1^3\"")
    p.add_argument("--vanishing", action="store_true", help="check all degree < n monomials and c1*cn")
    p.add_argument("--degree-margin", type=int, help="warn when deg(phi) exceeds n + margin")

    p = sub.add_parser("chern", parents=[common], help="all Chern numbers by localization")
    p.add_argument("file")
    p.add_argument("--degree-margin", type=int, help=argparse.SUPPRESS)

    p = sub.add_parser("spectrum", parents=[common], help="signed eigenvalue multiset and pairing")
    p.add_argument("file")

    p = sub.add_parser("chiy", parents=[common], help="equivariant chi_y genus and rigidity")
    p.add_argument("file")
    p.add_argument("--limits", action="store_true", help="compare q -> 0 and q -> oo limits")
    p.add_argument("--y1-coefficient", action="store_true", help="check the first-order (y+1) coefficient")
    p.add_argument("--pairing-check", action="store_true", help="check the 1/(1-q^l) pairing identity")
    p.add_argument("--sample", action="store_true", help="evaluate at q = 2, 3, ... instead of exactly in q")
    p.add_argument("--sample-points", type=int, help="number of sample points (default 2n+2)")

    p = sub.add_parser("scan", parents=[common], help="degree n+1 uniqueness scan over instances")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("files", nargs="+")

    p = sub.add_parser("catalog", help="generate fixed-point data")
    kinds = p.add_subparsers(dest="kind", required=True)
    k = kinds.add_parser("cpn", parents=[common], help="weighted CP^n")
    k.add_argument("--weights", required=True, help="blocks WEIGHT*SIZE, e.g. \"0*2,5*1\"")
    k.add_argument("--name")
    k.add_argument("--out")
    k = kinds.add_parser("points", parents=[common], help="isolated fixed points")
    k.add_argument("--dim", type=int, required=True)
    k.add_argument("--point", action="append", help="NAME:W1,W2,... (repeatable)")
    k.add_argument("--name")
    k.add_argument("--out")
    k = kinds.add_parser("blowup", parents=[common], help="blown-up projective plane")
    k.add_argument("--out")
    return parser


def _configure_logging(verbose: int, settings: Settings) -> None:
    if verbose >= 2:
        level = logging.DEBUG
    elif verbose == 1:
        level = logging.INFO
    else:
        level = logging.getLevelName(settings.log_level)
    logging.basicConfig(stream=sys.stderr, level=level, format="%(levelname)s %(name)s: %(message)s")
    logging.getLogger("residue_localizer").setLevel(level)


def _report_error(message: str, as_json: bool) -> int:
    print(f"error: {message}", file=sys.stderr)
    if as_json:
        print(json.dumps({"schema_version": 1, "error": message, "exit_status": 2}, indent=2))
    return 2


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Main entry point; returns the exit status"""
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv) if argv is not None else None)
    except SystemExit as exc:
        return int(exc.code or 0)

    settings = load_settings()
    _configure_logging(args.verbose, settings)
    cli = ResidueLocalizerCLI(settings)
    try:
        return cli.run(args)
    except LocalizationError as exc:
        return _report_error(str(exc), args.json)
    except OSError as exc:
        filename = exc.filename if exc.filename is not None else ""
        return _report_error(f"{filename}: {exc.strerror or exc}" if filename else str(exc), args.json)


if __name__ == "__main__":
    sys.exit(main())

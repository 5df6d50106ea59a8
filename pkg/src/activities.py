import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import TextIO

from jinja2 import Template

from . import ci, fixloc, gkm
from .codec import parse_fpd, parse_graph
from .config import FORMATS, Config
from .errors import PreconditionError
from .series import format_rational

logger = logging.getLogger(__name__)

RESOURCES = Path(__file__).parent.parent / "resources"

EXIT_OK = 0
EXIT_NEGATIVE = 1


@dataclass
class CommandContext:
    command: str
    args: object
    config: Config
    out: TextIO

    @property
    def output_format(self) -> str:
        return self.args.format or self.config.output.format


class CommandActivity:
    """One subcommand: registers its flags, renders its result and returns an exit code."""
    command_name = ""
    help = ""
    template_name = ""

    def __init__(self):
        self._template = Template((RESOURCES / self.template_name).read_text(encoding="utf-8"), autoescape=False)

    def configure(self, subparsers, parents):
        parser = subparsers.add_parser(self.command_name, help=self.help, parents=parents)
        self.add_arguments(parser)
        return parser

    def add_arguments(self, parser):
        pass

    def matches(self, context: CommandContext) -> bool:
        return context.command == self.command_name

    def on_activity(self, context: CommandContext) -> int:
        raise NotImplementedError

    def emit(self, context: CommandContext, document: dict):
        if context.output_format == "json":
            context.out.write(json.dumps(document, indent=2, sort_keys=True) + "\n")
        else:
            context.out.write(self._template.render(**document) + "\n")


def add_format_argument(parser):
    parser.add_argument("--format", choices=FORMATS, default=None,
                        help="output format (default from config, normally table)")


def _hit(md: ci.Multidegree) -> dict:
    return {"label": md.label(), "degrees": list(md.degrees)}


class CiInvariantsActivity(CommandActivity):
    command_name = "ci-invariants"
    help = "invariants of a complete intersection"
    template_name = "ci_invariants.jinja2"

    def add_arguments(self, parser):
        parser.add_argument("--dim", type=int, required=True, help="complex dimension n")
        parser.add_argument("--degrees", default="", help="comma separated degrees, e.g. 2,2 (empty for CP^n)")

    def on_activity(self, context: CommandContext) -> int:
        md = ci.Multidegree.parse(context.args.dim, context.args.degrees)
        logger.info("Computing invariants of %s", md)
        self.emit(context, ci.invariant_report(md).to_dict())
        return EXIT_OK


class CiScanActivity(CommandActivity):
    command_name = "ci-scan"
    help = "scan multidegrees for the circle-action obstructions"
    template_name = "ci_scan.jinja2"

    _scans = {"jr-null": ci.scan_jr_null, "chi-linear": ci.scan_chi_linear}

    def add_arguments(self, parser):
        parser.add_argument("--dim", type=int, required=True, help="complex dimension n")
        parser.add_argument("--predicate", choices=sorted(self._scans), default=None,
                            help="jr-null (even n) or chi-linear (odd n); picked by parity when omitted")
        parser.add_argument("--max-degree-sum", type=int, default=None, help="bound on the sum of degrees")
        parser.add_argument("--workers", type=int, default=None, help="parallel workers for the scan")

    def on_activity(self, context: CommandContext) -> int:
        args = context.args
        if args.dim < 1:
            raise PreconditionError(f"dimension must be a positive integer, got {args.dim}")
        bound = args.max_degree_sum if args.max_degree_sum is not None else context.config.scan.max_degree_sum
        workers = args.workers if args.workers is not None else context.config.scan.workers
        if workers < 1:
            raise PreconditionError(f"workers must be positive, got {workers}")
        predicate = args.predicate or ("jr-null" if args.dim % 2 == 0 else "chi-linear")
        hits = self._scans[predicate](args.dim, bound, workers)
        logger.info("%s scan found %d multidegrees", predicate, len(hits))
        self.emit(context, {
            "n": args.dim,
            "predicate": predicate,
            "max_degree_sum": bound,
            "hits": [_hit(md) for md in hits],
        })
        return EXIT_OK


class FpdValidateActivity(CommandActivity):
    command_name = "fpd-validate"
    help = "validate a fixed point dataset"
    template_name = "fpd_validate.jinja2"

    def add_arguments(self, parser):
        parser.add_argument("input", help="JSON document, or - for standard input")

    def on_activity(self, context: CommandContext) -> int:
        fpd = parse_fpd(context.args.input)
        report = fixloc.validate(fpd).extend(fixloc.check_inequalities(fpd))
        if fpd.half_dim == 4:
            report = report.extend([fixloc.check_unimodal_8(fpd), fixloc.check_positive_definite_8(fpd)])
        betti = fixloc.localize_betti(fpd)
        signature = fixloc.localize_signature(fpd)
        self.emit(context, {
            "half_dim": fpd.half_dim,
            "component_count": len(fpd.components),
            "betti": betti,
            "signature": signature,
            "euler": fixloc.euler_characteristic(fpd),
            "i_jr": fixloc.i_jr_direct(betti, signature),
            "i_jr_localized": fixloc.i_jr_localized(fpd),
            **report.to_dict(),
        })
        if not report.ok:
            logger.warning("Validation failed: %s", ", ".join(report.failed_names()))
        return EXIT_OK if report.ok else EXIT_NEGATIVE


class GkmCheckActivity(CommandActivity):
    command_name = "gkm-check"
    help = "check a GKM graph and count Betti numbers along a direction"
    template_name = "gkm_check.jinja2"

    def add_arguments(self, parser):
        parser.add_argument("input", help="JSON document, or - for standard input")
        parser.add_argument("--xi", nargs="+", type=int, default=None, metavar="N",
                            help="direction as space separated integers (default: a generic one)")

    def on_activity(self, context: CommandContext) -> int:
        graph = parse_graph(context.args.input)
        document = {"rank": graph.rank, "valence": graph.valence, "problems": graph.validate()}
        if document["problems"]:
            for problem in document["problems"]:
                logger.warning("Invalid graph: %s", problem)
            self.emit(context, document)
            return EXIT_NEGATIVE
        xi = tuple(context.args.xi) if context.args.xi else gkm.generic_direction(graph)
        betti = gkm.morse_betti(graph, xi)
        moment_h, s1_weights = gkm.circle_restriction(graph, xi)
        document.update({
            "euler": gkm.euler(graph),
            "edge_count_identity": gkm.edge_count_identity(graph),
            "xi": list(xi),
            "morse_betti": betti,
            "skeleton_c1_sum": format_rational(gkm.skeleton_c1_sum(graph, moment_h, s1_weights)),
        })
        self.emit(context, document)
        return EXIT_OK


class GkmTwoQuadricsActivity(CommandActivity):
    command_name = "gkm-two-quadrics"
    help = "feasibility of a GKM action on the intersection of two quadrics"
    template_name = "gkm_two_quadrics.jinja2"

    def add_arguments(self, parser):
        parser.add_argument("--n", type=int, required=True, help="even complex dimension >= 4")

    def on_activity(self, context: CommandContext) -> int:
        certificate = gkm.two_quadrics_feasibility(context.args.n)
        self.emit(context, certificate.to_dict())
        return EXIT_OK if certificate.feasible else EXIT_NEGATIVE

import argparse
import sys

from scf_workbench import config
from scf_workbench.config import logger
from scf_workbench.controllers.check_controller import CheckController
from scf_workbench.controllers.dictator_controller import DictatorController
from scf_workbench.controllers.enumerate_controller import EnumerateController
from scf_workbench.controllers.gen_controller import RANDOM_RULES, GenController
from scf_workbench.controllers.lemma_controller import LEMMAS, LemmaController
from scf_workbench.controllers.manipulate_controller import ManipulateController
from scf_workbench.controllers.render_trace_controller import RenderTraceController
from scf_workbench.controllers.verify_trace_controller import VerifyTraceController
from scf_workbench.exit_status import ExitStatus
from scf_workbench.services.rules import RuleKind


class Workbench:
    """
    Routes subcommands to their controllers.
    Routes:
        - check         -> CheckController
        - dictator      -> DictatorController
        - enumerate     -> EnumerateController
        - gen           -> GenController
        - manipulate    -> ManipulateController
        - verify-trace  -> VerifyTraceController
        - render-trace  -> RenderTraceController
        - lemma         -> LemmaController
    """
    check_controller = CheckController()
    dictator_controller = DictatorController()
    enumerate_controller = EnumerateController()
    gen_controller = GenController()
    manipulate_controller = ManipulateController()
    verify_trace_controller = VerifyTraceController()
    render_trace_controller = RenderTraceController()
    lemma_controller = LemmaController()

    def dispatch(self, args: argparse.Namespace) -> ExitStatus:
        routes = {
            "check": self.check_controller,
            "dictator": self.dictator_controller,
            "enumerate": self.enumerate_controller,
            "gen": self.gen_controller,
            "manipulate": self.manipulate_controller,
            "verify-trace": self.verify_trace_controller,
            "render-trace": self.render_trace_controller,
            "lemma": self.lemma_controller,
        }
        logger.debug(f"Delegating {args.command} to {type(routes[args.command]).__name__}")
        return routes[args.command].handle(args)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="scf-workbench",
        description="Check, enumerate and prove dictatorship of strategy-proof social choice functions.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    check = commands.add_parser("check", help="report UNM, STP and dictatorship of a table file")
    check.add_argument("table")

    dictator = commands.add_parser("dictator", help="find the dictator of a table")
    dictator.add_argument("table")
    dictator.add_argument("--method", choices=("proof", "brute"), default="proof")
    dictator.add_argument("--trace-out", help="write the contraction trace here (proof method)")
    dictator.add_argument("--seed", type=int, help="shuffle unconstrained order positions with this seed")

    enumerate_ = commands.add_parser("enumerate", help="list every table satisfying the axioms")
    enumerate_.add_argument("m", type=int)
    enumerate_.add_argument("n", type=int)
    enumerate_.add_argument("--axioms", default="unm,stp", help="comma separated subset of unm,stp")
    enumerate_.add_argument("--out", help="directory for one table file per solution")
    enumerate_.add_argument("--limit", type=int, help="stop after this many solutions")
    enumerate_.add_argument("--workers", type=int, default=config.DEFAULT_WORKERS)
    enumerate_.add_argument("--no-propagate", action="store_true", help="check constraints only on assignment")
    enumerate_.add_argument("--verify", action="store_true",
                            help="cross-check every solution with the proof procedure and the scan")

    gen = commands.add_parser("gen", help="write the table of a named rule")
    gen.add_argument("rule", choices=[kind.value for kind in RuleKind] + list(RANDOM_RULES))
    gen.add_argument("--m", type=int, default=3)
    gen.add_argument("--n", type=int, default=2)
    gen.add_argument("--param", type=int, help="dictator for dictatorship, winner for constant")
    gen.add_argument("--seed", type=int, help="required by random rules")
    gen.add_argument("--out", required=True)

    manipulate = commands.add_parser("manipulate", help="print the first manipulation of a table")
    manipulate.add_argument("table")

    verify = commands.add_parser("verify-trace", help="check a trace file against a table file")
    verify.add_argument("table")
    verify.add_argument("trace")

    render = commands.add_parser("render-trace", help="draw a trace file as a PNG")
    render.add_argument("trace")
    render.add_argument("--out", required=True)

    lemma = commands.add_parser("lemma", help="run one lemma procedure on a table")
    lemma.add_argument("lemma", choices=LEMMAS)
    lemma.add_argument("table")
    lemma.add_argument("--profile", help="profile index, or rankings like '0,1,2;1,0,2'")
    lemma.add_argument("--coalition", help="comma separated voters")
    lemma.add_argument("--a", type=int)
    lemma.add_argument("--b", type=int)
    lemma.add_argument("--c", type=int)
    lemma.add_argument("--seed", type=int)
    lemma.add_argument("--trace-out")
    return parser


def main(argv: list[str] | None = None) -> int:
    """
    Parse arguments and run one subcommand.
    Returns:
        Process exit status: 0 holds, 1 refuted, 2 usage or format error.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return ExitStatus.OK if e.code == 0 else ExitStatus.USAGE
    return int(Workbench().dispatch(args))


if __name__ == "__main__":
    sys.exit(main())

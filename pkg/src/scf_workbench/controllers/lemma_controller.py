import argparse

from scf_workbench.config import logger
from scf_workbench.exit_status import ExitStatus
from scf_workbench.controllers.base import Controller
from scf_workbench.errors import PremiseError, RuleSpecError
from scf_workbench.prefcore import Coalition
from scf_workbench.services.lemma_engine import LemmaEngine, Roles, dichotomy_statements
from scf_workbench.table_store import read_table, write_trace
from scf_workbench.utils import describe_witness, emit, parse_int_list, parse_profile

LEMMAS = ("tops-only", "extension", "decisive-over", "contraction")


class LemmaController(Controller):
    """
    Controller that runs one lemma procedure on a table and optionally writes its trace.
    A premise the table refutes is reported with its certificate and exits REFUTED.
    """
    name = "lemma"

    def __init__(self, engine: LemmaEngine | None = None):
        self.engine = engine

    def _engine(self, args: argparse.Namespace) -> LemmaEngine:
        if self.engine is not None:
            return self.engine
        a = args.a if args.a is not None else 0
        b = args.b if args.b is not None else (1 if a != 1 else 0)
        roles = Roles(a=a, b=b, c=args.c)
        return LemmaEngine(completion_seed=args.seed, roles=roles)

    def execute(self, args: argparse.Namespace) -> ExitStatus:
        f = read_table(args.table)
        engine = self._engine(args)
        try:
            outcome = self._run(engine, f, args)
        except PremiseError as e:
            logger.info(f"lemma {args.lemma}: premise refuted: {e}")
            emit(f"premise refuted: {e}")
            if e.violation is not None:
                emit(f"  {describe_witness(f, e.violation)}")
            return ExitStatus.REFUTED

        if not outcome.holds:
            emit(f"{args.lemma}: refuted, {describe_witness(f, outcome.witness)}")
            return ExitStatus.REFUTED
        emit(f"{args.lemma}: {outcome.trace.conclusion} ({len(outcome.trace)} steps)")
        if args.lemma == "tops-only" and "y^k" in {s.note for s in outcome.trace.steps}:
            y_b, z_a = dichotomy_statements(outcome.trace)
            emit(f"  dichotomy: f(y^k)=b is {y_b}, f(z^N)=a is {z_a}")
        if args.trace_out:
            write_trace(args.trace_out, outcome.trace)
            emit(f"trace written to {args.trace_out}")
        return ExitStatus.OK

    def _run(self, engine: LemmaEngine, f, args: argparse.Namespace):
        def coalition() -> Coalition:
            if args.coalition is None:
                raise RuleSpecError(f"Lemma {args.lemma} needs --coalition.")
            return Coalition.of(parse_int_list(args.coalition), f.n)

        def alternative(value: int | None, flag: str) -> int:
            if value is None:
                raise RuleSpecError(f"Lemma {args.lemma} needs {flag}.")
            return value

        if args.lemma == "tops-only":
            x = parse_profile(self._profile(args), f.m, f.n)
            return engine.lemma_tops_only(f, x, alternative(args.a, "--a"), alternative(args.b, "--b"))
        if args.lemma == "extension":
            x = parse_profile(self._profile(args), f.m, f.n)
            return engine.lemma_extension(f, coalition(), x, alternative(args.a, "--a"))
        if args.lemma == "decisive-over":
            return engine.decisive_over_implies_decisive(f, coalition(), alternative(args.a, "--a"))
        return engine.lemma_contraction(f, coalition())

    @staticmethod
    def _profile(args: argparse.Namespace) -> str:
        if args.profile is None:
            raise RuleSpecError(f"Lemma {args.lemma} needs --profile.")
        return args.profile

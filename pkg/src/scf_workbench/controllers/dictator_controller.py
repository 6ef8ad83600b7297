import argparse

from scf_workbench.config import logger
from scf_workbench.exit_status import ExitStatus
from scf_workbench.controllers.base import Controller
from scf_workbench.services.axioms import find_dictator_bruteforce, non_dictator_witness
from scf_workbench.services.lemma_engine import LemmaEngine, verify_trace
from scf_workbench.table_store import read_table, write_trace
from scf_workbench.utils import describe_profile, describe_witness, emit


class DictatorController(Controller):
    """
    Controller that names the dictator of a table, either by running the
    contraction proof (`--method proof`) or by scanning the table (`--method brute`).
    """
    name = "dictator"

    def __init__(self, engine: LemmaEngine | None = None):
        self.engine = engine

    def execute(self, args: argparse.Namespace) -> ExitStatus:
        f = read_table(args.table)
        if args.method == "brute":
            return self._brute(f)
        return self._proof(f, args)

    def _brute(self, f) -> ExitStatus:
        dictator = find_dictator_bruteforce(f)
        if dictator is None:
            emit("DT: none")
            for d in range(f.n):
                k = non_dictator_witness(f, d)
                emit(f"  voter {d} loses at {describe_profile(k, f.m, f.n)} (outcome {f[k]})")
            return ExitStatus.REFUTED
        emit(f"DT: voter {dictator}")
        return ExitStatus.OK

    def _proof(self, f, args: argparse.Namespace) -> ExitStatus:
        engine = self.engine or LemmaEngine(completion_seed=args.seed)
        outcome = engine.find_dictator_via_proof(f)
        if not outcome.holds:
            emit(f"DT: refuted, {describe_witness(f, outcome.witness)}")
            return ExitStatus.REFUTED

        brute = find_dictator_bruteforce(f)
        verdict = verify_trace(f, outcome.trace)
        emit(f"DT: voter {outcome.conclusion} (proof, {len(outcome.trace)} steps, "
             f"{outcome.trace.params['contractions']} contractions)")
        if args.trace_out:
            write_trace(args.trace_out, outcome.trace)
            emit(f"trace written to {args.trace_out}")
        if brute != outcome.conclusion or not verdict:
            logger.error(f"Proof gives voter {outcome.conclusion}, scan gives {brute}, trace verdict {verdict}")
            emit(f"disagreement: scan gives {brute}, trace check: {verdict.reason or 'ok'}")
            return ExitStatus.REFUTED
        return ExitStatus.OK

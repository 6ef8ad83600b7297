import argparse

from scf_workbench.exit_status import ExitStatus
from scf_workbench.controllers.base import Controller
from scf_workbench.services.lemma_engine import verify_trace
from scf_workbench.table_store import read_table, read_trace
from scf_workbench.utils import emit


class VerifyTraceController(Controller):
    """Checks a trace file against a table file and reports the first failing step."""
    name = "verify-trace"

    def execute(self, args: argparse.Namespace) -> ExitStatus:
        f = read_table(args.table)
        trace = read_trace(args.trace)
        verdict = verify_trace(f, trace)
        if verdict:
            emit(f"trace ok: {len(trace)} steps, {trace.lemma.value}: {trace.conclusion}")
            return ExitStatus.OK
        where = f"step {verdict.failing_step}" if verdict.failing_step is not None else "header"
        emit(f"trace rejected at {where}: {verdict.reason}")
        return ExitStatus.REFUTED

import argparse

from scf_workbench.exit_status import ExitStatus
from scf_workbench.controllers.base import Controller
from scf_workbench.services.axioms import find_manipulation, validate_witness
from scf_workbench.table_store import read_table
from scf_workbench.utils import describe_witness, emit


class ManipulateController(Controller):
    """Prints the lexicographically first manipulation of a table, or 'strategy-proof'."""
    name = "manipulate"

    def execute(self, args: argparse.Namespace) -> ExitStatus:
        f = read_table(args.table)
        witness = find_manipulation(f)
        if witness is None:
            emit("strategy-proof")
            return ExitStatus.OK
        if not validate_witness(f, witness):
            raise RuntimeError(f"Manipulation witness {witness} failed re-validation.")
        emit(describe_witness(f, witness))
        return ExitStatus.REFUTED

import argparse

from scf_workbench.config import logger
from scf_workbench.exit_status import ExitStatus
from scf_workbench.controllers.base import Controller
from scf_workbench.services.axioms import check_unanimous, find_dictator_bruteforce, find_manipulation
from scf_workbench.table_store import read_table
from scf_workbench.utils import describe_witness, emit


class CheckController(Controller):
    """
    Controller that reports unanimity, strategy-proofness and dictatorship of a table file.
    Exits OK when the table is unanimous and strategy-proof, REFUTED otherwise.
    """
    name = "check"

    def execute(self, args: argparse.Namespace) -> ExitStatus:
        f = read_table(args.table)
        unanimity = check_unanimous(f)
        manipulation = find_manipulation(f)
        dictator = find_dictator_bruteforce(f)
        logger.debug(f"check: unanimity={unanimity} manipulation={manipulation} dictator={dictator}")

        dt = f"voter {dictator}" if dictator is not None else "none"
        emit(f"UNM: {'fail' if unanimity else 'ok'}, STP: {'fail' if manipulation else 'ok'}, DT: {dt}")
        if unanimity:
            emit(f"  {describe_witness(f, unanimity)}")
        if manipulation:
            emit(f"  {describe_witness(f, manipulation)}")
        return ExitStatus.REFUTED if unanimity or manipulation else ExitStatus.OK

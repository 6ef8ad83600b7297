import argparse

from scf_workbench.exit_status import ExitStatus
from scf_workbench.controllers.base import Controller
from scf_workbench.errors import RuleSpecError
from scf_workbench.services.rules import (
    RuleKind,
    RuleSpec,
    build_table,
    random_table,
    random_unanimous_table,
)
from scf_workbench.table_store import write_table
from scf_workbench.utils import emit

RANDOM_RULES = {"random": random_table, "random-unanimous": random_unanimous_table}


class GenController(Controller):
    """
    Controller that writes the table of a named rule.
    Randomised rules need an explicit --seed.
    """
    name = "gen"

    def execute(self, args: argparse.Namespace) -> ExitStatus:
        if args.rule in RANDOM_RULES:
            if args.seed is None:
                raise RuleSpecError(f"Rule {args.rule} needs --seed.")
            if args.param is not None:
                raise RuleSpecError(f"Rule {args.rule} takes no parameter.")
            f = RANDOM_RULES[args.rule](args.m, args.n, args.seed)
            label = f"{args.rule}(seed={args.seed}) m={args.m} n={args.n}"
        else:
            spec = RuleSpec(RuleKind(args.rule), args.m, args.n, args.param)
            f = build_table(spec)
            label = str(spec)
        path = write_table(args.out, f)
        emit(f"{label}: {f.num_profiles} profiles written to {path}")
        return ExitStatus.OK

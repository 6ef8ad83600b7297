import argparse
from collections import Counter
from pathlib import Path

from scf_workbench.config import logger
from scf_workbench.exit_status import ExitStatus
from scf_workbench.controllers.base import Controller
from scf_workbench.services.axioms import find_dictator_bruteforce
from scf_workbench.services.enumerator import (
    Axiom,
    SearchConfig,
    enumerate_scfs,
    verify_all_dictatorial,
)
from scf_workbench.table_store import write_table
from scf_workbench.utils import emit, format_counts, format_dictators


def parse_axioms(text: str) -> frozenset[Axiom]:
    """'unm,stp' -> {Axiom.UNM, Axiom.STP}."""
    try:
        return frozenset(Axiom(part.strip().lower()) for part in text.split(",") if part.strip())
    except ValueError as e:
        raise ValueError(f"Unknown axiom in {text!r}; choose from unm, stp.") from e


class EnumerateController(Controller):
    """
    Controller that enumerates every table satisfying the chosen axioms,
    writes each one as `<ordinal>.gssc` and prints a summary.
    """
    name = "enumerate"

    def execute(self, args: argparse.Namespace) -> ExitStatus:
        cfg = SearchConfig(
            m=args.m,
            n=args.n,
            axioms=parse_axioms(args.axioms),
            solution_limit=args.limit,
            worker_count=args.workers,
            propagate=not args.no_propagate,
        )
        if args.verify:
            return self._verify(cfg)

        out = Path(args.out) if args.out else None
        enumeration = enumerate_scfs(cfg)
        dictators: list[int] = []
        non_dictatorial = 0
        count = 0
        for ordinal, f in enumerate(enumeration):
            count += 1
            if out is not None:
                write_table(out / f"{ordinal:06d}.gssc", f)
            d = find_dictator_bruteforce(f)
            if d is None:
                non_dictatorial += 1
            else:
                dictators.append(d)

        summary = f"{count} solution{'' if count == 1 else 's'}; dictators {format_dictators(dictators)}"
        if non_dictatorial:
            summary += f"; non-dictatorial {non_dictatorial}"
        emit(summary)
        stats = enumeration.stats
        emit(f"nodes {stats.nodes_expanded}, stp prunes {stats.prunes_by_stp}, unm prunes {stats.prunes_by_unm}")
        if out is not None:
            logger.info(f"{count} tables written to {out}")
        return ExitStatus.OK

    def _verify(self, cfg: SearchConfig) -> ExitStatus:
        ok, report = verify_all_dictatorial(cfg)
        emit(f"{report.solution_count} solutions; dictators {format_dictators(report.dictators)}")
        if report.dictators:
            emit(f"  {format_counts(Counter(report.dictators))}")
        for line in report.disagreements:
            emit(f"  {line}")
        emit("every solution is dictatorial" if ok else "verification failed")
        return ExitStatus.OK if ok else ExitStatus.REFUTED

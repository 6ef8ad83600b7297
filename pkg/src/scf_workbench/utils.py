import sys
from collections import Counter
from typing import TextIO

from scf_workbench.prefcore import Profile, ScfTable, profile_from_index
from scf_workbench.services.axioms import (
    DecisivenessViolation,
    ManipulationWitness,
    UnanimityViolation,
    Witness,
)


def describe_profile(k: int, m: int, n: int) -> str:
    return f"#{k} {profile_from_index(k, m, n)}"


def describe_witness(f: ScfTable, witness: Witness) -> str:
    """
    One-line human readable description of a witness.
    Args:
        f: The table the witness refers to.
        witness: Manipulation, unanimity or decisiveness witness.
    Returns:
        Description including the profile in ranking notation.
    """
    where = describe_profile(witness.profile_index, f.m, f.n)
    if isinstance(witness, ManipulationWitness):
        lie = f.space.orders[witness.misreport_order_index]
        return (f"manipulation (profile={witness.profile_index}, voter={witness.voter}, "
                f"misreport={witness.misreport_order_index}) at {where}: voter {witness.voter} reports {lie} "
                f"and moves the outcome from {witness.sincere_outcome} to {witness.manipulated_outcome}")
    if isinstance(witness, UnanimityViolation):
        return f"unanimity violation at {where}: common top {witness.common_top}, outcome {witness.outcome}"
    if isinstance(witness, DecisivenessViolation):
        return (f"decisiveness violation at {where}: {witness.coalition} tops {witness.alternative}, "
                f"outcome {witness.outcome}")
    return str(witness)


def format_dictators(dictators: list[int]) -> str:
    """Multiset of dictators as '{0,1}' or '{0,0,1}'."""
    return "{" + ",".join(str(d) for d in sorted(dictators)) + "}"


def format_counts(counts: Counter) -> str:
    return ", ".join(f"voter {d}: {counts[d]}" for d in sorted(counts))


def emit(line: str, out: TextIO | None = None) -> None:
    """Write one report line to stdout (or `out`)."""
    print(line, file=out or sys.stdout)


def parse_profile(text: str, m: int, n: int) -> Profile:
    """
    Parse either a profile index ('17') or rankings separated by ';',
    each a comma separated top-first list ('0,1,2;1,0,2').
    """
    text = text.strip()
    if text.isascii() and text.isdigit():
        return profile_from_index(int(text), m, n)
    rankings = [tuple(int(a) for a in part.split(",")) for part in text.split(";")]
    x = Profile.of(*rankings)
    if x.m != m or x.n != n:
        raise ValueError(f"Profile {text!r} is over m={x.m} n={x.n}, table is over m={m} n={n}.")
    return x


def parse_int_list(text: str) -> list[int]:
    """'0,2' -> [0, 2]; empty string -> []."""
    return [int(part) for part in text.split(",") if part.strip()]

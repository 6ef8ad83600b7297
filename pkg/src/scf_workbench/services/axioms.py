"""
Definitional checkers for unanimity, strategy-proofness, decisiveness and
dictatorship, each returning the lowest-index falsifying witness.

Scans are exhaustive and vectorised over the table grid (voter i is grid
axis n-1-i), so the C-order position of a grid cell is its profile index.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from scf_workbench.config import logger
from scf_workbench.errors import EmptyCoalitionError, IndexOutOfRangeError, VoterOutOfRangeError
from scf_workbench.prefcore import (
    Coalition,
    LinearOrder,
    Profile,
    ScfTable,
    order_index,
    prefers,
    profile_from_index,
    replace_coord,
    scf_eval,
)


@dataclass(frozen=True)
class ManipulationWitness:
    """Voter `voter` at profile `profile_index` gains by reporting order `misreport_order_index`."""
    profile_index: int
    voter: int
    misreport_order_index: int
    sincere_outcome: int
    manipulated_outcome: int

    def as_tuple(self) -> tuple[int, int, int]:
        return self.profile_index, self.voter, self.misreport_order_index


@dataclass(frozen=True)
class UnanimityViolation:
    profile_index: int
    common_top: int
    outcome: int


@dataclass(frozen=True)
class DecisivenessViolation:
    coalition: Coalition
    alternative: int
    profile_index: int
    outcome: int


Witness = Union[ManipulationWitness, UnanimityViolation, DecisivenessViolation]


def _first_cell(mask: np.ndarray, axes: list[np.ndarray], shape: tuple[int, ...]) -> int | None:
    """Profile index of the first True cell of a sub-grid selected by `axes`."""
    hits = np.argwhere(mask)
    if hits.size == 0:
        return None
    first = hits[0]
    coords = tuple(int(axis[c]) for axis, c in zip(axes, first))
    return int(np.ravel_multi_index(coords, shape))


def check_unanimous(f: ScfTable) -> UnanimityViolation | None:
    """
    Check that every common top wins.
    Returns:
        None if f is unanimous, else the violation at the lowest profile index.
    """
    space = f.space
    grid = f.grid()
    best: UnanimityViolation | None = None
    for a in range(f.m):
        with_top = space.with_top(a)
        axes = [with_top] * f.n
        block = grid[np.ix_(*axes)]
        k = _first_cell(block != a, axes, grid.shape)
        if k is not None and (best is None or k < best.profile_index):
            best = UnanimityViolation(profile_index=k, common_top=a, outcome=f[k])
    if best:
        logger.debug(f"Unanimity fails at profile {best.profile_index}: top {best.common_top} lost to {best.outcome}")
    return best


def is_manipulable_at(f: ScfTable, x: Profile, i: int, o: LinearOrder) -> bool:
    """
    True iff voter i, whose sincere order is x_i, strictly prefers f(o, x_{-i}) to f(x).
    Raises:
        VoterOutOfRangeError: If i is not a voter.
    """
    if not 0 <= i < x.n:
        raise VoterOutOfRangeError(f"Voter {i} is outside 0..{x.n - 1}.")
    sincere = scf_eval(f, x)
    manipulated = scf_eval(f, replace_coord(x, i, o))
    if sincere == manipulated:
        return False
    return prefers(x[i], manipulated, sincere)


def _first_manipulation_by(f: ScfTable, voter: int) -> tuple[int, int] | None:
    """Lowest (profile_index, misreport) manipulation available to one voter."""
    space = f.space
    size = space.size
    axis = f.voter_axis(voter)
    moved = np.moveaxis(f.grid(), axis, -1)
    sincere_idx = np.arange(size)
    # gained[..., s, o]: rank under sincere order s of the outcome reached by reporting o
    gained = space.ranks[sincere_idx[:, None], moved[..., None, :]]
    held = space.ranks[sincere_idx, moved]
    better = gained < held[..., :, None]
    better = np.moveaxis(better, -2, axis).reshape(f.num_profiles, size)
    rows = np.flatnonzero(better.any(axis=1))
    if rows.size == 0:
        return None
    k = int(rows[0])
    return k, int(np.argmax(better[k]))


def find_manipulation(f: ScfTable) -> ManipulationWitness | None:
    """
    Search every (profile, voter, misreport) triple.
    Returns:
        None if f is strategy-proof, else the lexicographically smallest witness.
    """
    best: tuple[int, int, int] | None = None
    for voter in range(f.n):
        found = _first_manipulation_by(f, voter)
        if found is None:
            continue
        candidate = (found[0], voter, found[1])
        if best is None or candidate < best:
            best = candidate
    if best is None:
        return None
    k, voter, misreport = best
    x = profile_from_index(k, f.m, f.n)
    lie = f.space.orders[misreport]
    witness = ManipulationWitness(
        profile_index=k,
        voter=voter,
        misreport_order_index=misreport,
        sincere_outcome=f[k],
        manipulated_outcome=scf_eval(f, replace_coord(x, voter, lie)),
    )
    logger.debug(f"Manipulation found: {witness}")
    return witness


def _require_coalition(f: ScfTable, coalition: Coalition) -> None:
    if len(coalition) == 0:
        raise EmptyCoalitionError("Decisiveness is not defined for the empty coalition.")
    if coalition.n != f.n:
        raise VoterOutOfRangeError(f"Coalition over {coalition.n} voters used with a table over {f.n}.")


def is_decisive_over(f: ScfTable, coalition: Coalition, a: int) -> DecisivenessViolation | None:
    """
    Check that a wins whenever it tops every member's order.
    Only the qualifying profiles are scanned.
    Returns:
        None if the coalition is decisive over a, else the lowest-index violation.
    """
    _require_coalition(f, coalition)
    if not 0 <= a < f.m:
        raise IndexOutOfRangeError(f"Alternative {a} is outside 0..{f.m - 1}.")
    space = f.space
    every = np.arange(space.size)
    with_top = space.with_top(a)
    grid = f.grid()
    # axis j of the grid belongs to voter n-1-j
    axes = [with_top if (f.n - 1 - j) in coalition else every for j in range(f.n)]
    block = grid[np.ix_(*axes)]
    k = _first_cell(block != a, axes, grid.shape)
    if k is None:
        return None
    return DecisivenessViolation(coalition=coalition, alternative=a, profile_index=k, outcome=f[k])


def first_decisiveness_violation(f: ScfTable, coalition: Coalition) -> DecisivenessViolation | None:
    for a in range(f.m):
        violation = is_decisive_over(f, coalition, a)
        if violation:
            return violation
    return None


def is_decisive(f: ScfTable, coalition: Coalition) -> bool:
    return first_decisiveness_violation(f, coalition) is None


def non_dictator_witness(f: ScfTable, d: int) -> int | None:
    """Lowest profile index where f differs from voter d's top, or None if d is a dictator."""
    axis = f.voter_axis(d)
    shape = [1] * f.n
    shape[axis] = f.space.size
    tops = f.space.tops.reshape(shape)
    mismatch = np.flatnonzero((f.grid() != tops).reshape(-1))
    return int(mismatch[0]) if mismatch.size else None


def find_dictator_bruteforce(f: ScfTable) -> int | None:
    """The voter whose top always wins, if any. At most one exists since m >= 2."""
    for d in range(f.n):
        if non_dictator_witness(f, d) is None:
            return d
    return None


def validate_witness(f: ScfTable, witness: Witness) -> bool:
    """Re-check a witness against its defining predicate."""
    x = profile_from_index(witness.profile_index, f.m, f.n)
    if isinstance(witness, ManipulationWitness):
        lie = f.space.orders[witness.misreport_order_index]
        return (
            is_manipulable_at(f, x, witness.voter, lie)
            and f[witness.profile_index] == witness.sincere_outcome
            and scf_eval(f, replace_coord(x, witness.voter, lie)) == witness.manipulated_outcome
        )
    if isinstance(witness, UnanimityViolation):
        return x.common_top() == witness.common_top and f[witness.profile_index] == witness.outcome != witness.common_top
    if isinstance(witness, DecisivenessViolation):
        return (
            all(x[v].top() == witness.alternative for v in witness.coalition)
            and f[witness.profile_index] == witness.outcome != witness.alternative
        )
    return False


def manipulation_between(
        f: ScfTable, before: Profile, after: Profile, voter: int
) -> ManipulationWitness | None:
    """
    For two profiles differing only at `voter`, the manipulation the pair exhibits, if any.
    Checks the move before -> after first, then after -> before.
    """
    w, v = scf_eval(f, before), scf_eval(f, after)
    if w == v:
        return None
    if prefers(before[voter], v, w):
        return ManipulationWitness(profile_index=before.index, voter=voter,
                                   misreport_order_index=order_index(after[voter]),
                                   sincere_outcome=w, manipulated_outcome=v)
    if prefers(after[voter], w, v):
        return ManipulationWitness(profile_index=after.index, voter=voter,
                                   misreport_order_index=order_index(before[voter]),
                                   sincere_outcome=v, manipulated_outcome=w)
    return None

"""
Generators of concrete social choice tables: dictatorships, constants,
plurality and Borda with lowest-id tie-breaking, and seeded random tables.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from scf_workbench.config import logger
from scf_workbench.errors import RuleSpecError
from scf_workbench.prefcore import ScfTable, check_size, order_space


class RuleKind(Enum):
    DICTATORSHIP = 'dictatorship'
    CONSTANT = 'constant'
    PLURALITY = 'plurality'
    BORDA = 'borda'


@dataclass(frozen=True)
class RuleSpec:
    """
    A named rule over m alternatives and n voters.
    `param` is the dictator for DICTATORSHIP and the winner for CONSTANT.
    """
    kind: RuleKind
    m: int
    n: int
    param: int | None = None

    def __post_init__(self) -> None:
        check_size(self.m, self.n)
        if self.kind is RuleKind.DICTATORSHIP:
            if self.param is None or not 0 <= self.param < self.n:
                raise RuleSpecError(f"Dictatorship needs a dictator in 0..{self.n - 1}, got {self.param}.")
        elif self.kind is RuleKind.CONSTANT:
            if self.param is None or not 0 <= self.param < self.m:
                raise RuleSpecError(f"Constant rule needs an alternative in 0..{self.m - 1}, got {self.param}.")
        elif self.param is not None:
            raise RuleSpecError(f"{self.kind.value} takes no parameter, got {self.param}.")

    def __str__(self) -> str:
        suffix = f"({self.param})" if self.param is not None else ""
        return f"{self.kind.value}{suffix} m={self.m} n={self.n}"


def _voter_orders(m: int, n: int) -> list[np.ndarray]:
    """For each voter, the order index it holds in every profile (profile-index order)."""
    base = math.factorial(m)
    profiles = np.arange(base ** n, dtype=np.int64)
    return [(profiles // base ** voter) % base for voter in range(n)]


def _score_winner(scores: np.ndarray) -> np.ndarray:
    # argmax returns the first maximum, i.e. the smallest alternative id among ties
    return np.argmax(scores, axis=1)


def build_table(spec: RuleSpec) -> ScfTable:
    """
    Fill the table of a named rule.
    Args:
        spec: Validated rule specification.
    Returns:
        The immutable ScfTable.
    """
    m, n = spec.m, spec.n
    space = order_space(m)
    entries = math.factorial(m) ** n
    logger.debug(f"Building table for {spec}: {entries} profiles")

    if spec.kind is RuleKind.CONSTANT:
        values = np.full(entries, spec.param, dtype=np.uint8)
    elif spec.kind is RuleKind.DICTATORSHIP:
        values = space.tops[_voter_orders(m, n)[spec.param]]
    elif spec.kind is RuleKind.PLURALITY:
        scores = np.zeros((entries, m), dtype=np.int32)
        alternatives = np.arange(m)
        for held in _voter_orders(m, n):
            scores += space.tops[held][:, None] == alternatives
        values = _score_winner(scores)
    elif spec.kind is RuleKind.BORDA:
        scores = np.zeros((entries, m), dtype=np.int32)
        for held in _voter_orders(m, n):
            scores += (m - 1) - space.ranks[held].astype(np.int32)
        values = _score_winner(scores)
    else:
        raise RuleSpecError(f"Unknown rule kind {spec.kind}.")

    return ScfTable(m, n, values)


def dictatorship(d: int, m: int = 3, n: int = 2) -> ScfTable:
    return build_table(RuleSpec(RuleKind.DICTATORSHIP, m, n, d))


def constant_table(a: int, m: int = 3, n: int = 2) -> ScfTable:
    return build_table(RuleSpec(RuleKind.CONSTANT, m, n, a))


def plurality(m: int = 3, n: int = 2) -> ScfTable:
    return build_table(RuleSpec(RuleKind.PLURALITY, m, n))


def borda(m: int = 3, n: int = 2) -> ScfTable:
    return build_table(RuleSpec(RuleKind.BORDA, m, n))


def random_table(m: int, n: int, seed: int) -> ScfTable:
    """Uniformly random table; the same seed always gives the same table."""
    entries = check_size(m, n)
    rng = np.random.default_rng(seed)
    return ScfTable(m, n, rng.integers(0, m, size=entries))


def random_unanimous_table(m: int, n: int, seed: int) -> ScfTable:
    """Random table with every common-top profile forced to its common top."""
    entries = check_size(m, n)
    rng = np.random.default_rng(seed)
    values = rng.integers(0, m, size=entries).astype(np.uint8)
    space = order_space(m)
    tops = np.stack([space.tops[held] for held in _voter_orders(m, n)])
    common = (tops == tops[0]).all(axis=0)
    values[common] = tops[0][common]
    return ScfTable(m, n, values)


def permute_voters(f: ScfTable, perm: tuple[int, ...]) -> ScfTable:
    """
    The table g with g(x) = f(x_{perm[0]}, ..., x_{perm[n-1]}).
    A dictatorship of d becomes a dictatorship of perm[d].
    """
    n = f.n
    if sorted(perm) != list(range(n)):
        raise RuleSpecError(f"{perm} is not a permutation of the {n} voters.")
    inverse = [0] * n
    for j, source in enumerate(perm):
        inverse[source] = j
    # grid axis q holds voter n-1-q; in g that voter's order feeds f's voter inverse[n-1-q]
    axes = [n - 1 - inverse[n - 1 - q] for q in range(n)]
    return ScfTable(f.m, n, np.transpose(f.grid(), axes).reshape(-1))

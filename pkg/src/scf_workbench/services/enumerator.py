"""
Exhaustive search for every table satisfying a chosen set of axioms.

Variables are profiles in ascending index order, values alternatives in
ascending order, so tables come out in lexicographic order. Unanimity fixes
every common-top profile up front; strategy-proofness is the binary
constraint between each profile and its single-voter neighbours, enforced
by forward checking on bitmask domains.
"""
from __future__ import annotations

from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterator

from scf_workbench import config
from scf_workbench.config import logger
from scf_workbench.errors import SizeGuardError
from scf_workbench.prefcore import ScfTable, check_size, order_space, profile_order_indices
from scf_workbench.services.axioms import check_unanimous, find_dictator_bruteforce, find_manipulation


class Axiom(Enum):
    UNM = 'unm'
    STP = 'stp'


@dataclass(frozen=True)
class SearchConfig:
    m: int
    n: int
    axioms: frozenset[Axiom] = frozenset({Axiom.UNM, Axiom.STP})
    solution_limit: int | None = None
    worker_count: int = config.DEFAULT_WORKERS
    propagate: bool = True

    def __post_init__(self) -> None:
        profiles = check_size(self.m, self.n)
        if profiles > config.SEARCH_SCOPE:
            raise SizeGuardError(
                f"Search over (m!)^n = {profiles} profiles exceeds the search scope {config.SEARCH_SCOPE}.")
        if not self.axioms:
            raise ValueError("At least one axiom must be selected.")
        if self.solution_limit is not None and self.solution_limit < 1:
            raise ValueError(f"Solution limit must be positive, got {self.solution_limit}.")
        if self.worker_count < 1:
            raise ValueError(f"Worker count must be positive, got {self.worker_count}.")
        object.__setattr__(self, "axioms", frozenset(self.axioms))


@dataclass
class SearchStats:
    nodes_expanded: int = 0
    prunes_by_stp: int = 0
    prunes_by_unm: int = 0
    solutions_found: int = 0

    def merge(self, other: SearchStats) -> None:
        self.nodes_expanded += other.nodes_expanded
        self.prunes_by_stp += other.prunes_by_stp
        self.prunes_by_unm += other.prunes_by_unm
        self.solutions_found += other.solutions_found


def _bits(mask: int) -> list[int]:
    return [v for v in range(mask.bit_length()) if mask >> v & 1]


class _Model:
    """Precomputed neighbourhoods and compatibility masks for one (m, n, axioms)."""

    def __init__(self, cfg: SearchConfig):
        self.m, self.n = cfg.m, cfg.n
        space = order_space(cfg.m)
        base = space.size
        self.size = base ** cfg.n
        self.full = (1 << cfg.m) - 1
        self.stp = Axiom.STP in cfg.axioms
        ranks = [[int(r) for r in row] for row in space.ranks]

        # compatible[s][o][w]: values v allowed at (o, x_-i) when (s, x_-i) holds w
        self.compatible = [[[0] * cfg.m for _ in range(base)] for _ in range(base)]
        for s in range(base):
            for o in range(base):
                for w in range(cfg.m):
                    mask = 1 << w
                    for v in range(cfg.m):
                        if v != w and ranks[s][w] < ranks[s][v] and ranks[o][v] < ranks[o][w]:
                            mask |= 1 << v
                    self.compatible[s][o][w] = mask

        self.coords = [profile_order_indices(k, cfg.m, cfg.n) for k in range(self.size)]
        powers = [base ** i for i in range(cfg.n)]
        # neighbours[k]: (other profile, own order of the changed voter, other's order)
        self.neighbours: list[list[tuple[int, int, int]]] = []
        for k, coord in enumerate(self.coords):
            near = []
            for voter, held in enumerate(coord):
                for other in range(base):
                    if other != held:
                        near.append((k + (other - held) * powers[voter], held, other))
            self.neighbours.append(near)

        self.domains = [self.full] * self.size
        self.unm_removed = 0
        if Axiom.UNM in cfg.axioms:
            tops = [int(t) for t in space.tops]
            for k, coord in enumerate(self.coords):
                profile_tops = {tops[c] for c in coord}
                if len(profile_tops) == 1:
                    self.domains[k] = 1 << profile_tops.pop()
                    self.unm_removed += cfg.m - 1
        # first profile with a real choice; every earlier one is fixed
        self.split = next((k for k, d in enumerate(self.domains) if d & (d - 1)), 0)


class Enumerator:
    """
    Depth-first search over one configuration.
    Iterating yields ScfTables; `stats` is complete once iteration ends.
    `first_value` restricts the first profile with more than one candidate
    value to that value, which is how the parallel run splits the search.
    """

    def __init__(self, cfg: SearchConfig, first_value: int | None = None):
        self.cfg = cfg
        self.first_value = first_value
        self.stats = SearchStats()

    def __iter__(self) -> Iterator[ScfTable]:
        model = _Model(self.cfg)
        self.stats.prunes_by_unm = model.unm_removed
        logger.info(f"Search m={self.cfg.m} n={self.cfg.n} axioms={sorted(a.value for a in self.cfg.axioms)} "
                    f"profiles={model.size} propagate={self.cfg.propagate}")
        yield from self._search(model)
        logger.info(f"Search done: {self.stats}")

    def _consistent(self, model: _Model, assignment: list[int], k: int, w: int) -> bool:
        for other, held, other_held in model.neighbours[k]:
            v = assignment[other]
            if v >= 0 and not model.compatible[held][other_held][w] >> v & 1:
                return False
        return True

    def _propagate(self, model: _Model, domains: list[int], assignment: list[int], k: int, w: int,
                   trail: list[tuple[int, int]]) -> bool:
        for other, held, other_held in model.neighbours[k]:
            if assignment[other] >= 0:
                continue
            narrowed = domains[other] & model.compatible[held][other_held][w]
            if narrowed != domains[other]:
                trail.append((other, domains[other]))
                domains[other] = narrowed
                if not narrowed:
                    return False
        return True

    def _search(self, model: _Model) -> Iterator[ScfTable]:
        cfg = self.cfg
        size = model.size
        domains = list(model.domains)
        assignment = [-1] * size
        trail: list[tuple[int, int]] = []
        if self.first_value is not None:
            domains[model.split] &= 1 << self.first_value
        # frames: (profile, values still to try, trail length before assigning it)
        frames: list[tuple[int, list[int], int]] = [(0, _bits(domains[0]), 0)]
        while frames:
            k, values, mark = frames[-1]
            while len(trail) > mark:
                other, previous = trail.pop()
                domains[other] = previous
            assignment[k] = -1
            if not values:
                frames.pop()
                continue
            w = values.pop(0)
            self.stats.nodes_expanded += 1
            if model.stp:
                if cfg.propagate:
                    if not self._propagate(model, domains, assignment, k, w, trail):
                        self.stats.prunes_by_stp += 1
                        continue
                elif not self._consistent(model, assignment, k, w):
                    self.stats.prunes_by_stp += 1
                    continue
            assignment[k] = w
            if k == size - 1:
                self.stats.solutions_found += 1
                yield ScfTable(cfg.m, cfg.n, assignment)
                if cfg.solution_limit is not None and self.stats.solutions_found >= cfg.solution_limit:
                    return
                continue
            frames.append((k + 1, _bits(domains[k + 1]), len(trail)))


def _search_subtree(cfg: SearchConfig, first_value: int) -> tuple[list[ScfTable], SearchStats]:
    enumerator = Enumerator(cfg, first_value)
    return list(enumerator), enumerator.stats


class Enumeration:
    """
    The stream of solutions for a configuration.
    With several workers the values of the first undetermined profile are
    searched in parallel and the subtrees are merged in value order, which keeps
    the output identical to the sequential run.
    """

    def __init__(self, cfg: SearchConfig):
        self.cfg = cfg
        self.stats = SearchStats()

    def __iter__(self) -> Iterator[ScfTable]:
        if self.cfg.worker_count == 1:
            enumerator = Enumerator(self.cfg)
            self.stats = enumerator.stats
            yield from enumerator
            return

        model = _Model(self.cfg)
        values = _bits(model.domains[model.split])
        logger.info(f"Splitting search at profile {model.split} over values {values} "
                    f"on {self.cfg.worker_count} workers")
        emitted = 0
        with ProcessPoolExecutor(max_workers=self.cfg.worker_count) as pool:
            futures = [pool.submit(_search_subtree, self.cfg, v) for v in values]
            for future in futures:
                tables, stats = future.result()
                stats.prunes_by_unm = 0
                self.stats.merge(stats)
                for table in tables:
                    if self.cfg.solution_limit is not None and emitted >= self.cfg.solution_limit:
                        break
                    emitted += 1
                    yield table
        self.stats.prunes_by_unm = model.unm_removed
        self.stats.solutions_found = emitted


def enumerate_scfs(cfg: SearchConfig) -> Enumeration:
    return Enumeration(cfg)


@dataclass
class VerificationReport:
    solution_count: int = 0
    dictators: list[int] = field(default_factory=list)
    disagreements: list[str] = field(default_factory=list)
    stats: SearchStats = field(default_factory=SearchStats)

    @property
    def dictator_counts(self) -> Counter:
        return Counter(self.dictators)


def verify_all_dictatorial(cfg: SearchConfig, engine=None) -> tuple[bool, VerificationReport]:
    """
    Enumerate every unanimous strategy-proof table and confirm each has a dictator,
    found both by the proof procedure and by a direct scan.
    """
    from scf_workbench.services.lemma_engine import LemmaEngine, verify_trace

    if cfg.axioms != frozenset({Axiom.UNM, Axiom.STP}):
        raise ValueError("Dictatorship verification needs exactly the UNM and STP axioms.")
    engine = engine or LemmaEngine()
    report = VerificationReport()
    enumeration = enumerate_scfs(cfg)
    for ordinal, table in enumerate(enumeration):
        report.solution_count += 1
        if check_unanimous(table) is not None or find_manipulation(table) is not None:
            report.disagreements.append(f"solution {ordinal} fails the axioms on re-check")
            continue
        brute = find_dictator_bruteforce(table)
        proof = engine.find_dictator_via_proof(table)
        if brute is None or not proof.holds or proof.conclusion != brute:
            report.disagreements.append(
                f"solution {ordinal}: proof gives {proof.conclusion if proof.holds else proof.witness}, scan gives {brute}")
            continue
        if not verify_trace(table, proof.trace):
            report.disagreements.append(f"solution {ordinal}: proof trace rejected")
            continue
        report.dictators.append(brute)
    report.stats = enumeration.stats
    report.dictators.sort()
    ok = not report.disagreements and report.dictators == list(range(cfg.n))
    logger.info(f"Dictatorship verification m={cfg.m} n={cfg.n}: ok={ok} solutions={report.solution_count} "
                f"dictators={report.dictators}")
    return ok, report

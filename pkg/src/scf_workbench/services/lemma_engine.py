"""
Constructive tops-only, extension and contraction lemmas.

Each procedure walks the profiles of the corresponding proof one voter at a
time, evaluating the table at every step. When the table is unanimous and
strategy-proof the walk ends in the lemma's conclusion and the visited
profiles form a ProofTrace that verify_trace can re-check on its own. When it
is not, the first step that breaks the argument yields a manipulation or
unanimity witness instead.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, Iterable, Sequence

import numpy as np

from scf_workbench.config import logger
from scf_workbench.errors import (
    DimensionMismatchError,
    EmptyCoalitionError,
    PreconditionError,
    PremiseError,
)
from scf_workbench.prefcore import (
    Coalition,
    LinearOrder,
    Profile,
    ScfTable,
    move_to_top,
    order_index,
    profile_from_index,
    replace_coord,
    scf_eval,
    swap_pair,
)
from scf_workbench.services.axioms import (
    DecisivenessViolation,
    ManipulationWitness,
    UnanimityViolation,
    Witness,
    check_unanimous,
    find_manipulation,
    first_decisiveness_violation,
    is_decisive_over,
    manipulation_between,
    non_dictator_witness,
)


class Justification(Enum):
    INITIAL = 'INITIAL'
    STP_STEP = 'STP_STEP'
    UNM_APPLICATION = 'UNM_APPLICATION'
    LEMMA1_REF = 'LEMMA1_REF'
    LEMMA2_REF = 'LEMMA2_REF'
    DICHOTOMY = 'DICHOTOMY'


CLAIM_REQUIRED = {Justification.LEMMA1_REF, Justification.LEMMA2_REF, Justification.DICHOTOMY}


class LemmaTag(Enum):
    TOPS_ONLY = 'TOPS_ONLY'
    EXTENSION = 'EXTENSION'
    CONTRACTION = 'CONTRACTION'
    DICTATOR = 'DICTATOR'


@dataclass(frozen=True)
class TraceStep:
    """
    One visited profile. `claimed` is the set the outcome is asserted to lie in,
    `changed_voter` the only coordinate that differs from the previous step.
    """
    profile_index: int
    outcome: int
    justification: Justification
    changed_voter: int | None = None
    note: str = ""
    claimed: frozenset[int] | None = None


@dataclass(frozen=True)
class ProofTrace:
    m: int
    n: int
    steps: tuple[TraceStep, ...]
    conclusion: str
    lemma: LemmaTag
    params: dict[str, Any] = field(default_factory=dict, hash=False)

    def __post_init__(self) -> None:
        if not self.steps:
            raise ValueError("A proof trace needs at least one step.")

    def __len__(self) -> int:
        return len(self.steps)


@dataclass(frozen=True)
class LemmaOutcome:
    """Either a conclusion with its trace, or a witness refuting the lemma's hypotheses."""
    conclusion: Any = None
    trace: ProofTrace | None = None
    witness: Witness | None = None

    def __post_init__(self) -> None:
        if (self.trace is None) == (self.witness is None):
            raise ValueError("A lemma outcome carries exactly one of a trace or a witness.")

    @property
    def holds(self) -> bool:
        return self.witness is None


@dataclass(frozen=True)
class TraceVerdict:
    ok: bool
    failing_step: int | None = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class Roles:
    """
    Alternatives playing a, b and c in the contraction construction; c=None picks the smallest free id.
    Outside contraction, c is used for whichever pair it is not part of.
    """
    a: int = 0
    b: int = 1
    c: int | None = None

    def __post_init__(self) -> None:
        if self.a == self.b:
            raise ValueError(f"Roles a and b must differ, got {self.a} twice.")
        if self.c is not None and self.c in (self.a, self.b):
            raise ValueError(f"Role c={self.c} must differ from a={self.a} and b={self.b}.")
        if min(self.a, self.b, self.c if self.c is not None else 0) < 0:
            raise ValueError(f"Roles must be alternative ids, got a={self.a} b={self.b} c={self.c}.")

    def check(self, m: int) -> None:
        """Raise ValueError if a role names no alternative among 0..m-1."""
        for name, value in (("a", self.a), ("b", self.b), ("c", self.c)):
            if value is not None and value >= m:
                raise ValueError(f"Role {name}={value} is outside 0..{m - 1}.")

    def third(self, m: int, a: int, b: int) -> int:
        self.check(m)
        if self.c is not None and self.c not in (a, b):
            return self.c
        return min(set(range(m)) - {a, b})


class _WitnessFound(Exception):
    def __init__(self, witness: Witness):
        super().__init__(str(witness))
        self.witness = witness


class _ClaimBroken(Exception):
    """A proof invariant failed at a step that exhibits no direct manipulation."""

    def __init__(self, profile: Profile, outcome: int):
        super().__init__(f"outcome {outcome} at profile {profile.index}")
        self.profile = profile
        self.outcome = outcome


class TraceBuilder:
    """Records a one-voter-at-a-time walk through profiles, checking each move as it goes."""

    def __init__(self, f: ScfTable):
        self.f = f
        self.steps: list[TraceStep] = []
        self.current: Profile | None = None
        self.outcome: int | None = None

    def record(self, x: Profile, justification: Justification, note: str = "",
               claimed: Iterable[int] | None = None) -> int:
        """
        Append a step at x.
        Raises:
            _WitnessFound: If the move from the previous profile is a manipulation,
                or a unanimity application is refuted.
            _ClaimBroken: If the outcome falls outside `claimed`.
        """
        outcome = scf_eval(self.f, x)
        changed = None
        if self.current is not None:
            diff = [v for v in range(x.n) if x[v] != self.current[v]]
            if len(diff) > 1:
                raise ValueError(f"Trace step changes voters {diff}; only one may change per step.")
            if diff:
                changed = diff[0]
                witness = manipulation_between(self.f, self.current, x, changed)
                if witness:
                    logger.debug(f"Walk exposed manipulation {witness} ({note})")
                    raise _WitnessFound(witness)
        if justification is Justification.UNM_APPLICATION:
            common = x.common_top()
            if common is None:
                raise ValueError(f"Unanimity applied at profile {x.index} without a common top.")
            if outcome != common:
                raise _WitnessFound(UnanimityViolation(profile_index=x.index, common_top=common, outcome=outcome))
            claimed = {common}
        claim = frozenset(claimed) if claimed is not None else None
        if claim is not None and outcome not in claim:
            raise _ClaimBroken(x, outcome)
        self.steps.append(TraceStep(x.index, outcome, justification, changed, note, claim))
        self.current = x
        self.outcome = outcome
        return outcome

    def enter(self, x: Profile, note: str, claimed: Iterable[int] | None = None) -> int:
        """Start the trace at x, or walk to x from wherever it currently is."""
        if self.current is None:
            return self.record(x, Justification.INITIAL, note, claimed)
        self.walk(x, note=f"bridge to {note}")
        if claimed is None:
            return self.outcome
        return self.record(x, Justification.STP_STEP, note, claimed)

    def move(self, voter: int, order: LinearOrder, justification: Justification = Justification.STP_STEP,
             note: str = "", claimed: Iterable[int] | None = None) -> int:
        if self.current[voter] == order:
            return self.outcome
        return self.record(replace_coord(self.current, voter, order), justification, note, claimed)

    def walk(self, target: Profile, voters: Sequence[int] | None = None,
             justification: Justification = Justification.STP_STEP, note: str = "",
             claimed: Iterable[int] | None = None) -> int:
        """Change the listed voters (then any others) to their orders in target, one at a time."""
        order = list(voters) if voters is not None else []
        order += [v for v in range(target.n) if v not in order]
        for voter in order:
            self.move(voter, target[voter], justification, note, claimed)
        return self.outcome

    def build(self, lemma: LemmaTag, conclusion: str, params: dict[str, Any]) -> ProofTrace:
        return ProofTrace(self.f.m, self.f.n, tuple(self.steps), conclusion, lemma, params)


def partition_by_top(x: Profile, a: int, b: int) -> tuple[Coalition, Coalition]:
    """
    Split the voters by whether a or b tops their order.
    Raises:
        PreconditionError: If some voter's top is neither a nor b.
    """
    if a == b:
        raise ValueError(f"partition_by_top() needs two distinct alternatives, got {a} twice.")
    group_a, group_b = [], []
    for voter, order in enumerate(x):
        if order.top() == a:
            group_a.append(voter)
        elif order.top() == b:
            group_b.append(voter)
        else:
            raise PreconditionError(
                f"Voter {voter} ranks {order.top()} on top, outside {{{a},{b}}}.", voter=voter, position=0)
    return Coalition.of(group_a, x.n), Coalition.of(group_b, x.n)


class LemmaEngine:
    """
    Runs the lemma procedures against a table.
    Args:
        completion_seed: None fills every unconstrained part of a constructed
            order with the unused alternatives in ascending order; a seed
            shuffles those fillers reproducibly instead.
        assume_premise: Skip the exhaustive premise checks (unanimity of f,
            decisiveness of the input coalition).
        roles: Alternatives used as a, b, c by the contraction construction.
    """

    def __init__(self, completion_seed: int | None = None, assume_premise: bool = False,
                 roles: Roles | None = None):
        self.assume_premise = assume_premise
        self.roles = roles or Roles()
        self._rng = np.random.default_rng(completion_seed) if completion_seed is not None else None

    def _compose(self, m: int, head: Sequence[int], tail: Sequence[int] = ()) -> LinearOrder:
        rest = sorted(set(range(m)) - set(head) - set(tail))
        if self._rng is not None:
            rest = [int(a) for a in self._rng.permutation(rest)]
        return LinearOrder(tuple(head) + tuple(rest) + tuple(tail))

    @staticmethod
    def _fallback(f: ScfTable) -> Witness:
        """Global scan used when a proof invariant breaks without a local certificate."""
        logger.info("Proof invariant broke without a local certificate; scanning the whole table.")
        witness = find_manipulation(f) or check_unanimous(f)
        if witness is None:
            raise PremiseError("Proof invariant broke on a unanimous strategy-proof table; the lemma premise does not hold.", None)
        return witness

    def _run(self, f: ScfTable, body: Callable[[TraceBuilder], tuple[Any, str]],
             lemma: LemmaTag, params: dict[str, Any]) -> LemmaOutcome:
        builder = TraceBuilder(f)
        try:
            conclusion, text = body(builder)
        except _WitnessFound as found:
            logger.info(f"{lemma.value}: refuted by {found.witness}")
            return LemmaOutcome(witness=found.witness)
        except _ClaimBroken as broken:
            logger.debug(f"{lemma.value}: claim broken at {broken}")
            return LemmaOutcome(witness=self._fallback(f))
        logger.info(f"{lemma.value}: {text} ({len(builder.steps)} steps)")
        return LemmaOutcome(conclusion=conclusion, trace=builder.build(lemma, text, params))

    def _require_unanimity(self, f: ScfTable) -> UnanimityViolation | None:
        if self.assume_premise:
            return None
        return check_unanimous(f)

    # tops only

    def lemma_tops_only(self, f: ScfTable, x: Profile, a: int, b: int) -> LemmaOutcome:
        """
        Show f(x) is a or b when every top at x is a or b.
        Raises:
            PreconditionError: If some voter's top is outside {a, b}.
        """
        _check_dimensions(f, x)
        partition_by_top(x, a, b)
        violation = self._require_unanimity(f)
        if violation:
            return LemmaOutcome(witness=violation)
        params = {"a": a, "b": b, "profile": x.index}
        return self._run(f, lambda builder: self._tops_only(builder, x, a, b), LemmaTag.TOPS_ONLY, params)

    def _tops_only(self, builder: TraceBuilder, x: Profile, a: int, b: int) -> tuple[int, str]:
        f = builder.f
        group_a, group_b = partition_by_top(x, a, b)
        if not len(group_a) or not len(group_b):
            outcome = builder.record(x, Justification.UNM_APPLICATION, "common top")
            return outcome, f"f(x)={outcome} is the common top"

        voters_a, voters_b = list(group_a), list(group_b)
        pair = {a, b}
        others = set(range(f.m)) - pair
        block = {v: self._compose(f.m, (a, b)) for v in voters_a}
        block.update({v: self._compose(f.m, (b, a)) for v in voters_b})
        x_prime = Profile(tuple(block[v] for v in range(x.n)))

        start = builder.enter(x_prime, "x' two-block profile")
        # if f(x') left {a, b}, swapping a and b for group a keeps it outside until unanimity refutes it
        claim = others if start not in pair else None
        for position, voter in enumerate(voters_a):
            last = position == len(voters_a) - 1
            builder.move(voter, swap_pair(builder.current[voter], a, b),
                         Justification.UNM_APPLICATION if last else Justification.STP_STEP,
                         f"x^{position + 1}: swap {a},{b} for voter {voter}", claim)
        builder.walk(x_prime, voters_a, note="back to x'")

        for position, voter in enumerate(voters_a):
            target = replace_coord(builder.current, voter, x[voter])
            if target == builder.current:
                continue
            try:
                builder.record(target, Justification.STP_STEP, f"y^{position + 1}: restore voter {voter}", pair)
            except _ClaimBroken:
                self._escape_to_unanimity(f, target, voters_b, a, pair)
                raise
        y_k = builder.current
        f_y = builder.record(y_k, Justification.DICHOTOMY, "y^k", pair)

        builder.walk(x_prime, voters_a, note="back to x'")
        for voter in voters_b:
            target = replace_coord(builder.current, voter, x[voter])
            if target == builder.current:
                continue
            try:
                builder.record(target, Justification.STP_STEP, f"z^{voter + 1}: restore voter {voter}", pair)
            except _ClaimBroken:
                self._escape_to_unanimity(f, target, voters_a, b, pair)
                raise
        z_n = builder.current
        f_z = builder.record(z_n, Justification.DICHOTOMY, "z^N", pair)

        statement_a, statement_b = f_y == b, f_z == a
        if statement_a == statement_b:
            logger.debug(f"Dichotomy fails: f(y^k)={f_y} f(z^N)={f_z}")
            if not statement_a:
                self._refute_dichotomy(f, y_k, z_n, x_prime, voters_a, voters_b, a, b)
            raise _ClaimBroken(z_n, f_z)

        if statement_a:
            builder.walk(x_prime, voters_b, note="back to x'")
            builder.walk(y_k, voters_a, note="redo y chain")
            builder.walk(x, voters_b, note=f"stays at {b}", claimed={b})
        else:
            builder.walk(x, voters_a, note=f"stays at {a}", claimed={a})
        outcome = builder.outcome
        return outcome, f"f(x)={outcome} in {{{a},{b}}}"

    def _escape_to_unanimity(self, f: ScfTable, start: Profile, voters: Sequence[int], lifted: int,
                             avoided: set[int]) -> None:
        """
        From a profile whose outcome left `avoided`, lift `lifted` to the top for `voters`
        one at a time: every move back into `avoided` is a manipulation, and staying outside
        until everyone tops `lifted` contradicts unanimity.
        """
        scratch = TraceBuilder(f)
        scratch.record(start, Justification.INITIAL, "escape")
        outside = set(range(f.m)) - avoided
        for position, voter in enumerate(voters):
            last = position == len(voters) - 1
            scratch.move(voter, move_to_top(scratch.current[voter], lifted),
                         Justification.UNM_APPLICATION if last else Justification.STP_STEP,
                         f"lift {lifted} for voter {voter}", outside)

    def _refute_dichotomy(self, f: ScfTable, y_k: Profile, z_n: Profile, x_prime: Profile,
                          voters_a: Sequence[int], voters_b: Sequence[int], a: int, b: int) -> None:
        """With f(y^k)=a and f(z^N)=b, walking both back to x' cannot keep both outcomes."""
        for start, voters, held in ((y_k, voters_a, a), (z_n, voters_b, b)):
            scratch = TraceBuilder(f)
            scratch.record(start, Justification.INITIAL, "dichotomy walk-back")
            scratch.walk(x_prime, voters, claimed={held})

    def _refute_tops_only(self, f: ScfTable, x: Profile, a: int, b: int) -> None:
        """Raise the witness the tops-only procedure extracts at x."""
        result = self._run(f, lambda builder: self._tops_only(builder, x, a, b), LemmaTag.TOPS_ONLY, {})
        if result.witness is not None:
            raise _WitnessFound(result.witness)
        raise _ClaimBroken(x, scf_eval(f, x))

    # extension

    def lemma_extension(self, f: ScfTable, coalition: Coalition, x: Profile, a: int) -> LemmaOutcome:
        """
        Promote a coalition to full decisiveness from one profile where a tops every
        member, sits at the bottom for everyone else, and wins.
        Raises:
            PreconditionError: If x does not have that shape or f(x) != a.
        """
        _check_dimensions(f, x)
        if not len(coalition):
            raise EmptyCoalitionError("The extension lemma needs a nonempty coalition.")
        for voter in range(x.n):
            order = x[voter]
            if voter in coalition and order.top() != a:
                raise PreconditionError(
                    f"Voter {voter} is in the coalition but ranks {a} at position {order.rank[a]}, not on top.",
                    voter=voter, position=order.rank[a])
            if voter not in coalition and order.bottom() != a:
                raise PreconditionError(
                    f"Voter {voter} is outside the coalition but ranks {a} at position {order.rank[a]}, not at the bottom.",
                    voter=voter, position=order.rank[a])
        outcome = scf_eval(f, x)
        if outcome != a:
            raise PreconditionError(f"Premise f(x)={a} fails: f(x)={outcome}.")
        violation = self._require_unanimity(f)
        if violation:
            return LemmaOutcome(witness=violation)

        def body(builder: TraceBuilder) -> tuple[Coalition, str]:
            builder.enter(x, "premise profile", {a})
            self._extend(builder, coalition, a)
            return coalition, f"G={coalition} is decisive"

        params = {"coalition": sorted(coalition), "a": a, "profile": x.index}
        return self._run(f, body, LemmaTag.EXTENSION, params)

    def _extend(self, builder: TraceBuilder, coalition: Coalition, a: int) -> None:
        """builder sits at a premise profile for (coalition, a) with outcome a."""
        f = builder.f
        premise = builder.current
        members, outsiders = list(coalition), list(coalition.outsiders())

        target = Profile(tuple(
            self._compose(f.m, (a,)) if v in coalition else self._compose(f.m, ())
            for v in range(f.n)
        ))
        builder.walk(target, members + outsiders, note=f"keeps {a}", claimed={a})
        self._certify_decisive_over(f, coalition, a, premise)
        builder.record(builder.current, Justification.LEMMA2_REF, f"G decisive over {a}", {a})
        self._extend_from_decisive_over(builder, coalition, a)

    def _certify_decisive_over(self, f: ScfTable, coalition: Coalition, a: int, premise: Profile) -> None:
        """Exhaustive check; a failure is turned into the chain witness from the premise profile."""
        violation = is_decisive_over(f, coalition, a)
        if violation is None:
            return
        logger.debug(f"Coalition {coalition} not decisive over {a}: {violation}")
        target = profile_from_index(violation.profile_index, f.m, f.n)
        scratch = TraceBuilder(f)
        scratch.record(premise, Justification.INITIAL, "premise profile")
        scratch.walk(target, list(coalition) + list(coalition.outsiders()), claimed={a})
        raise _ClaimBroken(target, violation.outcome)

    def _extend_from_decisive_over(self, builder: TraceBuilder, coalition: Coalition, a: int) -> None:
        f = builder.f
        members, outsiders = list(coalition), list(coalition.outsiders())
        certified = {a}
        for b in range(f.m):
            if b == a:
                continue
            c = self.roles.third(f.m, a, b)
            y = Profile(tuple(
                self._compose(f.m, (a, b)) if v in coalition else self._compose(f.m, (c,), (b,))
                for v in range(f.n)
            ))
            for voter in members + outsiders:
                if builder.current[voter] == y[voter]:
                    continue
                step = replace_coord(builder.current, voter, y[voter])
                decided = [alt for alt in certified if all(step[v].top() == alt for v in members)]
                if decided:
                    builder.record(step, Justification.LEMMA2_REF, f"G decisive over {decided[0]}", decided)
                else:
                    builder.record(step, Justification.STP_STEP, f"towards y for b={b}")
            if builder.current == y and builder.steps[-1].claimed != frozenset({a}):
                builder.record(y, Justification.LEMMA2_REF, f"y for b={b}: G decisive over {a}", {a})

            for position, voter in enumerate(members):
                builder.move(voter, swap_pair(builder.current[voter], a, b),
                             note=f"y^{position + 1}: swap {a},{b} for voter {voter}", claimed={a, b})
            y_k = builder.current
            try:
                builder.record(y_k, Justification.LEMMA1_REF, f"tops in {{{b},{c}}}", {b, c})
            except _ClaimBroken:
                self._refute_tops_only(f, y_k, b, c)
            self._certify_decisive_over(f, coalition, b, y_k)
            builder.record(y_k, Justification.LEMMA2_REF, f"G decisive over {b}", {b})
            certified.add(b)

    def decisive_over_implies_decisive(self, f: ScfTable, coalition: Coalition, a: int) -> LemmaOutcome:
        """
        A coalition decisive over one alternative is decisive.
        Raises:
            PremiseError: If the coalition is not decisive over a.
        """
        if not len(coalition):
            raise EmptyCoalitionError("Decisiveness is not defined for the empty coalition.")
        if not self.assume_premise:
            violation = is_decisive_over(f, coalition, a)
            if violation:
                raise PremiseError(f"{coalition} is not decisive over {a}.", violation)
        unanimity = self._require_unanimity(f)
        if unanimity:
            return LemmaOutcome(witness=unanimity)

        def body(builder: TraceBuilder) -> tuple[Coalition, str]:
            start = Profile(tuple(
                self._compose(f.m, (a,)) if v in coalition else self._compose(f.m, ())
                for v in range(f.n)
            ))
            builder.enter(start, f"G decisive over {a}", {a})
            self._extend_from_decisive_over(builder, coalition, a)
            return coalition, f"G={coalition} is decisive"

        params = {"coalition": sorted(coalition), "a": a}
        return self._run(f, body, LemmaTag.EXTENSION, params)

    # contraction

    def lemma_contraction(self, f: ScfTable, coalition: Coalition) -> LemmaOutcome:
        """
        Shrink a decisive coalition of two or more voters to a decisive proper subset.
        Raises:
            PreconditionError: If the coalition has fewer than two members.
            PremiseError: If the coalition is not decisive (eager mode only).
        """
        self.roles.check(f.m)
        self._check_contraction(f, coalition)
        unanimity = self._require_unanimity(f)
        if unanimity:
            return LemmaOutcome(witness=unanimity)
        a, b = self.roles.a, self.roles.b
        c = self.roles.third(f.m, a, b)
        params = {"coalition": sorted(coalition), "a": a, "b": b, "c": c, "g1": coalition.smallest}
        return self._run(f, lambda builder: self._contract(builder, coalition), LemmaTag.CONTRACTION, params)

    def _check_contraction(self, f: ScfTable, coalition: Coalition) -> None:
        if len(coalition) < 2:
            raise PreconditionError(f"Contraction needs at least two members, got {coalition}.")
        if coalition.n != f.n:
            raise DimensionMismatchError(f"Coalition over {coalition.n} voters used with a table over {f.n}.")
        if not self.assume_premise:
            violation = first_decisiveness_violation(f, coalition)
            if violation:
                raise PremiseError(f"{coalition} is not decisive.", violation)

    def _contract(self, builder: TraceBuilder, coalition: Coalition) -> tuple[Coalition, str]:
        f = builder.f
        a, b = self.roles.a, self.roles.b
        c = self.roles.third(f.m, a, b)
        g1 = coalition.smallest
        members = [v for v in coalition if v != g1]
        outsiders = list(coalition.outsiders())

        x = Profile(tuple(
            self._compose(f.m, (b,), (a,)) if v in members else self._compose(f.m, (a,), (b,))
            for v in range(f.n)
        ))
        builder.enter(x, "x for contraction")
        try:
            outcome = builder.record(x, Justification.LEMMA1_REF, f"tops in {{{a},{b}}}", {a, b})
        except _ClaimBroken:
            self._refute_tops_only(f, x, a, b)

        if outcome == b:
            rest = coalition.without(g1)
            builder.record(x, Justification.LEMMA2_REF, f"{rest} tops {b}, bottom elsewhere", {b})
            self._extend(builder, rest, b)
            return rest, f"{rest} is decisive"

        builder.move(g1, self._compose(f.m, (a, b), (c,)), note="x^1", claimed={a})
        for voter in outsiders:
            target = replace_coord(builder.current, voter, self._compose(f.m, (c,), (b,)))
            try:
                builder.record(target, Justification.STP_STEP, f"x^{voter + 1}", {a})
            except _ClaimBroken as broken:
                if broken.outcome != b:
                    self._decisive_side_step(f, coalition, target, g1, b, broken.outcome)
                raise
        builder.move(g1, x[g1], note="y", claimed={a})
        for voter in members:
            builder.move(voter, self._compose(f.m, (c,), (a,)), note=f"y^{voter + 1}", claimed={a})
        for voter in outsiders:
            target = replace_coord(builder.current, voter, self._compose(f.m, (c,), (a,)))
            try:
                builder.record(target, Justification.STP_STEP, f"y^{voter + 1}: tops in {{{a},{c}}}", {a})
            except _ClaimBroken as broken:
                if broken.outcome != c:
                    self._refute_tops_only(f, target, a, c)
                raise

        single = Coalition.of([g1], f.n)
        builder.record(builder.current, Justification.LEMMA2_REF, f"{single} tops {a}, bottom elsewhere", {a})
        self._extend(builder, single, a)
        return single, f"{single} is decisive"

    def _decisive_side_step(self, f: ScfTable, coalition: Coalition, x: Profile, g1: int, b: int,
                            outcome: int) -> None:
        """Voter g1 reporting b on top hands every member b on top, so decisiveness forces b."""
        lie = move_to_top(x[g1], b)
        side = replace_coord(x, g1, lie)
        forced = scf_eval(f, side)
        if forced == b:
            raise _WitnessFound(ManipulationWitness(
                profile_index=x.index, voter=g1, misreport_order_index=order_index(lie),
                sincere_outcome=outcome, manipulated_outcome=b))
        raise PremiseError(
            f"{coalition} is not decisive over {b}.",
            DecisivenessViolation(coalition=coalition, alternative=b, profile_index=side.index, outcome=forced))

    # dictator

    def find_dictator_via_proof(self, f: ScfTable) -> LemmaOutcome:
        """
        Contract the grand coalition down to a single decisive voter.
        Returns the dictator with the concatenated trace, or a witness that f is
        not unanimous or not strategy-proof.
        """
        self.roles.check(f.m)
        violation = check_unanimous(f)
        if violation:
            return LemmaOutcome(witness=violation)
        engine = LemmaEngine(assume_premise=True, roles=self.roles)
        engine._rng = self._rng
        builder = TraceBuilder(f)
        builder.record(profile_from_index(0, f.m, f.n), Justification.UNM_APPLICATION, "I decisive by unanimity")
        coalition = Coalition.everyone(f.n)
        contractions = 0
        try:
            while len(coalition) >= 2:
                coalition, _ = engine._contract(builder, coalition)
                contractions += 1
                logger.debug(f"Contraction {contractions}: decisive coalition {coalition}")
        except _WitnessFound as found:
            return LemmaOutcome(witness=found.witness)
        except (_ClaimBroken, PremiseError) as error:
            logger.info(f"Proof chain broke ({error}); scanning the whole table.")
            return LemmaOutcome(witness=self._fallback(f))

        d = coalition.smallest
        if non_dictator_witness(f, d) is not None:
            logger.info(f"Voter {d} survived contraction but is not a dictator; scanning the whole table.")
            return LemmaOutcome(witness=self._fallback(f))
        params = {"dictator": d, "contractions": contractions}
        text = f"voter {d} is a dictator"
        logger.info(f"DICTATOR: {text} after {contractions} contractions ({len(builder.steps)} steps)")
        return LemmaOutcome(conclusion=d, trace=builder.build(LemmaTag.DICTATOR, text, params))


def _check_dimensions(f: ScfTable, x: Profile) -> None:
    if x.m != f.m or x.n != f.n:
        raise DimensionMismatchError(f"Profile over m={x.m} n={x.n} used with a table over m={f.m} n={f.n}.")


def verify_trace(f: ScfTable, trace: ProofTrace) -> TraceVerdict:
    """
    Re-check a trace against a table without replaying how it was built.
    Returns:
        A truthy verdict, or a falsy one naming the first failing step.
    """
    if trace.m != f.m or trace.n != f.n:
        return TraceVerdict(False, None, f"trace is over m={trace.m} n={trace.n}, table over m={f.m} n={f.n}")
    previous: Profile | None = None
    for position, step in enumerate(trace.steps):
        def fail(reason: str) -> TraceVerdict:
            logger.debug(f"Trace rejected at step {position}: {reason}")
            return TraceVerdict(False, position, reason)

        if not 0 <= step.profile_index < f.num_profiles:
            return fail(f"profile index {step.profile_index} out of range")
        x = profile_from_index(step.profile_index, f.m, f.n)
        if f[step.profile_index] != step.outcome:
            return fail(f"recorded outcome {step.outcome}, table gives {f[step.profile_index]}")
        changed: list[int] = []
        if previous is None:
            if step.changed_voter is not None:
                return fail("first step names a changed voter")
        else:
            if step.justification is Justification.INITIAL:
                return fail("INITIAL is only allowed at the first step")
            changed = [v for v in range(f.n) if x[v] != previous[v]]
            if len(changed) > 1:
                return fail(f"voters {changed} change at once")
            if changed != ([step.changed_voter] if step.changed_voter is not None else []):
                return fail(f"changed voter recorded as {step.changed_voter}, actual {changed}")
        if step.justification in CLAIM_REQUIRED and not step.claimed:
            return fail(f"{step.justification.value} without a claimed set")
        if step.claimed is not None and step.outcome not in step.claimed:
            return fail(f"outcome {step.outcome} outside claimed {sorted(step.claimed)}")
        if step.justification is Justification.STP_STEP and changed:
            if manipulation_between(f, previous, x, changed[0]) is not None:
                return fail(f"move by voter {changed[0]} is a manipulation")
        if step.justification is Justification.UNM_APPLICATION:
            common = x.common_top()
            if common is None or common != step.outcome:
                return fail(f"unanimity step without matching common top (top {common}, outcome {step.outcome})")
        previous = x
    return TraceVerdict(True)


def dichotomy_statements(trace: ProofTrace) -> tuple[bool, bool]:
    """(f(y^k)=b, f(z^N)=a) as recorded on a tops-only trace."""
    recorded = {s.note: s.outcome for s in trace.steps if s.justification is Justification.DICHOTOMY}
    if "y^k" not in recorded or "z^N" not in recorded:
        raise ValueError("Trace records no dichotomy.")
    return recorded["y^k"] == trace.params["b"], recorded["z^N"] == trace.params["a"]


_default_engine = LemmaEngine()


def lemma_tops_only(f: ScfTable, x: Profile, a: int, b: int) -> LemmaOutcome:
    return _default_engine.lemma_tops_only(f, x, a, b)


def lemma_extension(f: ScfTable, coalition: Coalition, x: Profile, a: int) -> LemmaOutcome:
    return _default_engine.lemma_extension(f, coalition, x, a)


def decisive_over_implies_decisive(f: ScfTable, coalition: Coalition, a: int) -> LemmaOutcome:
    return _default_engine.decisive_over_implies_decisive(f, coalition, a)


def lemma_contraction(f: ScfTable, coalition: Coalition) -> LemmaOutcome:
    return _default_engine.lemma_contraction(f, coalition)


def find_dictator_via_proof(f: ScfTable) -> LemmaOutcome:
    return _default_engine.find_dictator_via_proof(f)

"""
Canonical representations of alternatives, strict linear orders, profiles,
coalitions and social choice function tables.

Alternatives and voters are 0-based integers. Orders are enumerated in
lexicographic order of their top-first ranking (Lehmer code); profiles are
encoded mixed radix in base m! with voter 0 least significant.
All values are immutable once built.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations
from typing import Iterable, Iterator, Sequence

import numpy as np

from scf_workbench import config
from scf_workbench.config import logger
from scf_workbench.errors import (
    DimensionMismatchError,
    IndexOutOfRangeError,
    SizeGuardError,
    VoterOutOfRangeError,
)

MIN_ALTERNATIVES = 3


def check_size(m: int, n: int) -> int:
    """
    Validate table dimensions against the size guard.
    Args:
        m: Number of alternatives (at least 3).
        n: Number of voters (at least 1).
    Returns:
        The number of profiles (m!)^n.
    Raises:
        SizeGuardError: If (m!)^n exceeds config.SIZE_GUARD.
        ValueError: If m < 3 or n < 1.
    """
    if m < MIN_ALTERNATIVES:
        raise ValueError(f"At least {MIN_ALTERNATIVES} alternatives are required, got m={m}.")
    if n < 1:
        raise ValueError(f"At least one voter is required, got n={n}.")
    base = _bounded_factorial(m, config.SIZE_GUARD)
    # base >= 6 > 2, so n beyond the guard's bit length overflows it
    if base is None or n > config.SIZE_GUARD.bit_length():
        logger.warning(f"Size guard refused m={m} n={n}")
        raise SizeGuardError(f"(m!)^n for m={m} n={n} exceeds the size guard {config.SIZE_GUARD}.")
    entries = base ** n
    if entries > config.SIZE_GUARD:
        logger.warning(f"Size guard refused m={m} n={n}: {entries} > {config.SIZE_GUARD}")
        raise SizeGuardError(
            f"(m!)^n = {base}^{n} = {entries} table entries exceeds the size guard {config.SIZE_GUARD}."
        )
    return entries


def _bounded_factorial(m: int, limit: int) -> int | None:
    """m!, or None as soon as a partial product passes limit."""
    product = 1
    for k in range(2, m + 1):
        product *= k
        if product > limit:
            return None
    return product


@dataclass(frozen=True, slots=True)
class LinearOrder:
    """A strict ranking; ranking[0] is the top, rank[a] the position of a."""
    ranking: tuple[int, ...]
    rank: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        ranking = tuple(int(a) for a in self.ranking)
        if sorted(ranking) != list(range(len(ranking))):
            raise ValueError(f"Ranking {ranking} is not a permutation of 0..{len(ranking) - 1}.")
        rank = [0] * len(ranking)
        for position, alternative in enumerate(ranking):
            rank[alternative] = position
        object.__setattr__(self, "ranking", ranking)
        object.__setattr__(self, "rank", tuple(rank))

    @property
    def m(self) -> int:
        return len(self.ranking)

    def top(self) -> int:
        return self.ranking[0]

    def bottom(self) -> int:
        return self.ranking[-1]

    @property
    def index(self) -> int:
        return order_index(self)

    def __str__(self) -> str:
        return "≻".join(str(a) for a in self.ranking)


def _check_alternative(o: LinearOrder, a: int) -> None:
    if not 0 <= a < o.m:
        raise IndexOutOfRangeError(f"Alternative {a} is outside 0..{o.m - 1}.")


def order_index(o: LinearOrder) -> int:
    """
    Lexicographic rank of an order among all m! orders (its Lehmer code).
    Args:
        o: The order.
    Returns:
        Integer in [0, m!).
    """
    ranking = o.ranking
    m = len(ranking)
    k = 0
    for position, alternative in enumerate(ranking):
        smaller_later = sum(1 for other in ranking[position + 1:] if other < alternative)
        k += smaller_later * math.factorial(m - 1 - position)
    return k


def order_from_index(k: int, m: int) -> LinearOrder:
    """
    Inverse of order_index.
    Raises:
        IndexOutOfRangeError: If k is not in [0, m!).
    """
    total = math.factorial(m)
    if not 0 <= k < total:
        raise IndexOutOfRangeError(f"Order index {k} is outside [0, {total}) for m={m}.")
    pool = list(range(m))
    ranking = []
    for position in range(m):
        digit, k = divmod(k, math.factorial(m - 1 - position))
        ranking.append(pool.pop(digit))
    return LinearOrder(tuple(ranking))


def top(o: LinearOrder) -> int:
    return o.ranking[0]


def prefers(o: LinearOrder, a: int, b: int) -> bool:
    """
    True iff a is ranked above b in o.
    Raises:
        ValueError: If a == b; a strict order never compares an alternative with itself.
    """
    if a == b:
        raise ValueError(f"prefers() needs two distinct alternatives, got {a} twice.")
    _check_alternative(o, a)
    _check_alternative(o, b)
    return o.rank[a] < o.rank[b]


def move_to_top(o: LinearOrder, a: int) -> LinearOrder:
    _check_alternative(o, a)
    return LinearOrder((a,) + tuple(x for x in o.ranking if x != a))


def swap_pair(o: LinearOrder, a: int, b: int) -> LinearOrder:
    if a == b:
        raise ValueError(f"swap_pair() needs two distinct alternatives, got {a} twice.")
    _check_alternative(o, a)
    _check_alternative(o, b)
    ranking = list(o.ranking)
    ranking[o.rank[a]], ranking[o.rank[b]] = b, a
    return LinearOrder(tuple(ranking))


@dataclass(frozen=True)
class OrderSpace:
    """
    All m! orders in index order, with lookup arrays for vectorised scans.
    ranks[k, a] is the position of a in order k; tops[k] the top of order k.
    """
    m: int
    orders: tuple[LinearOrder, ...]
    ranks: np.ndarray
    tops: np.ndarray

    @property
    def size(self) -> int:
        return len(self.orders)

    def with_top(self, a: int) -> np.ndarray:
        """Ascending indices of the orders whose top is a."""
        return np.flatnonzero(self.tops == a)


@lru_cache(maxsize=None)
def order_space(m: int) -> OrderSpace:
    orders = tuple(LinearOrder(p) for p in permutations(range(m)))
    ranks = np.array([o.rank for o in orders], dtype=np.int8)
    tops = np.array([o.top() for o in orders], dtype=np.int8)
    ranks.setflags(write=False)
    tops.setflags(write=False)
    logger.debug(f"Built order space for m={m}: {len(orders)} orders")
    return OrderSpace(m=m, orders=orders, ranks=ranks, tops=tops)


@dataclass(frozen=True, slots=True)
class Profile:
    """One linear order per voter, voter 0 first."""
    orders: tuple[LinearOrder, ...]

    def __post_init__(self) -> None:
        orders = tuple(self.orders)
        if not orders:
            raise ValueError("A profile needs at least one voter.")
        if len({o.m for o in orders}) != 1:
            raise DimensionMismatchError("All orders in a profile must rank the same alternatives.")
        object.__setattr__(self, "orders", orders)

    @classmethod
    def of(cls, *rankings: Sequence[int]) -> Profile:
        return cls(tuple(LinearOrder(tuple(r)) for r in rankings))

    @property
    def n(self) -> int:
        return len(self.orders)

    @property
    def m(self) -> int:
        return self.orders[0].m

    def __getitem__(self, voter: int) -> LinearOrder:
        return self.orders[voter]

    def __iter__(self) -> Iterator[LinearOrder]:
        return iter(self.orders)

    def __len__(self) -> int:
        return len(self.orders)

    def tops(self) -> tuple[int, ...]:
        return tuple(o.top() for o in self.orders)

    def common_top(self) -> int | None:
        tops = set(self.tops())
        return tops.pop() if len(tops) == 1 else None

    @property
    def index(self) -> int:
        return profile_index(self)

    def __str__(self) -> str:
        return "(" + ", ".join(f"({o})" for o in self.orders) + ")"


def profile_index(x: Profile) -> int:
    """Mixed-radix index: sum of order_index(x_i) * (m!)^i."""
    base = math.factorial(x.m)
    k = 0
    for voter in reversed(range(x.n)):
        k = k * base + order_index(x.orders[voter])
    return k


def profile_from_index(k: int, m: int, n: int) -> Profile:
    """
    Inverse of profile_index.
    Raises:
        IndexOutOfRangeError: If k is not in [0, (m!)^n).
    """
    base = math.factorial(m)
    total = base ** n
    if not 0 <= k < total:
        raise IndexOutOfRangeError(f"Profile index {k} is outside [0, {total}) for m={m} n={n}.")
    space = order_space(m)
    orders = []
    for _ in range(n):
        k, digit = divmod(k, base)
        orders.append(space.orders[digit])
    return Profile(tuple(orders))


def profile_order_indices(k: int, m: int, n: int) -> tuple[int, ...]:
    """Per-voter order indices of profile k, voter 0 first."""
    base = math.factorial(m)
    digits = []
    for _ in range(n):
        k, digit = divmod(k, base)
        digits.append(digit)
    return tuple(digits)


def replace_coord(x: Profile, i: int, o: LinearOrder) -> Profile:
    """
    The profile (o, x_{-i}).
    Raises:
        VoterOutOfRangeError: If i is not a voter of x.
    """
    if not 0 <= i < x.n:
        raise VoterOutOfRangeError(f"Voter {i} is outside 0..{x.n - 1}.")
    if o.m != x.m:
        raise DimensionMismatchError(f"Order over {o.m} alternatives used in a profile over {x.m}.")
    orders = list(x.orders)
    orders[i] = o
    return Profile(tuple(orders))


@dataclass(frozen=True, slots=True)
class Coalition:
    """A set of voters; members need not be contiguous."""
    members: frozenset[int]
    n: int

    def __post_init__(self) -> None:
        members = frozenset(int(v) for v in self.members)
        for voter in members:
            if not 0 <= voter < self.n:
                raise VoterOutOfRangeError(f"Coalition member {voter} is outside 0..{self.n - 1}.")
        object.__setattr__(self, "members", members)

    @classmethod
    def of(cls, members: Iterable[int], n: int) -> Coalition:
        listed = list(members)
        if len(set(listed)) != len(listed):
            raise ValueError(f"Coalition members {listed} contain duplicates.")
        return cls(frozenset(listed), n)

    @classmethod
    def everyone(cls, n: int) -> Coalition:
        return cls(frozenset(range(n)), n)

    def __contains__(self, voter: object) -> bool:
        return voter in self.members

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self.members))

    @property
    def smallest(self) -> int:
        return min(self.members)

    def outsiders(self) -> tuple[int, ...]:
        return tuple(v for v in range(self.n) if v not in self.members)

    def without(self, voter: int) -> Coalition:
        return Coalition(self.members - {voter}, self.n)

    def __str__(self) -> str:
        return "{" + ",".join(str(v) for v in sorted(self.members)) + "}"


class ScfTable:
    """
    Immutable social choice function: table[profile_index] is the winner.
    grid() views the same data with one axis per voter; voter i is axis n-1-i.
    """
    __slots__ = ("m", "n", "table")

    def __init__(self, m: int, n: int, table: Iterable[int] | np.ndarray):
        size = check_size(m, n)
        array = np.array(table, dtype=np.uint8)
        if array.shape != (size,):
            raise DimensionMismatchError(f"Table for m={m} n={n} needs {size} entries, got shape {array.shape}.")
        if size and int(array.max()) >= m:
            bad = int(np.flatnonzero(array >= m)[0])
            raise ValueError(f"Table entry at profile {bad} is {int(array[bad])}, not an alternative below {m}.")
        array.setflags(write=False)
        self.m = m
        self.n = n
        self.table = array

    @property
    def num_profiles(self) -> int:
        return int(self.table.shape[0])

    @property
    def space(self) -> OrderSpace:
        return order_space(self.m)

    def grid(self) -> np.ndarray:
        return self.table.reshape((math.factorial(self.m),) * self.n)

    def voter_axis(self, voter: int) -> int:
        if not 0 <= voter < self.n:
            raise VoterOutOfRangeError(f"Voter {voter} is outside 0..{self.n - 1}.")
        return self.n - 1 - voter

    def __getitem__(self, k: int) -> int:
        return int(self.table[k])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ScfTable):
            return NotImplemented
        return self.m == other.m and self.n == other.n and np.array_equal(self.table, other.table)

    def __hash__(self) -> int:
        return hash((self.m, self.n, self.table.tobytes()))

    def __reduce__(self):
        return ScfTable, (self.m, self.n, self.table)

    def __repr__(self) -> str:
        return f"ScfTable(m={self.m}, n={self.n}, profiles={self.num_profiles})"


def scf_eval(f: ScfTable, x: Profile) -> int:
    """
    Winner of f at x.
    Raises:
        DimensionMismatchError: If x is not over f's (m, n).
    """
    if x.m != f.m or x.n != f.n:
        raise DimensionMismatchError(f"Profile over m={x.m} n={x.n} evaluated by a table over m={f.m} n={f.n}.")
    return int(f.table[profile_index(x)])

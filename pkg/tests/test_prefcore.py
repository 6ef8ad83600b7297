import math
from itertools import permutations

import pytest

from scf_workbench import config
from scf_workbench.errors import (
    DimensionMismatchError,
    IndexOutOfRangeError,
    SizeGuardError,
    VoterOutOfRangeError,
)
from scf_workbench.prefcore import (
    Coalition,
    LinearOrder,
    Profile,
    ScfTable,
    check_size,
    move_to_top,
    order_from_index,
    order_index,
    prefers,
    profile_from_index,
    profile_index,
    replace_coord,
    scf_eval,
    swap_pair,
    top,
)
from scf_workbench.services.rules import constant_table, dictatorship, plurality
from tests.conftest import rankings


def order(text: str) -> LinearOrder:
    return LinearOrder(tuple(int(c) for c in text))


class TestOrders:
    @pytest.mark.parametrize("text, k", [("012", 0), ("210", 5), ("102", 2)])
    def test_order_index(self, text, k):
        assert order_index(order(text)) == k

    @pytest.mark.parametrize("k, text", [(0, "012"), (5, "210"), (3, "120"), (4, "201")])
    def test_order_from_index(self, k, text):
        assert order_from_index(k, 3) == order(text)

    @pytest.mark.parametrize("m", [3, 4, 5])
    def test_index_is_lexicographic_bijection(self, m):
        expected = [LinearOrder(p) for p in permutations(range(m))]
        assert [order_from_index(k, m) for k in range(math.factorial(m))] == expected
        assert [order_index(o) for o in expected] == list(range(math.factorial(m)))

    def test_order_from_index_out_of_range(self):
        with pytest.raises(IndexOutOfRangeError):
            order_from_index(6, 3)
        with pytest.raises(IndexOutOfRangeError):
            order_from_index(-1, 3)

    def test_rejects_non_permutation(self):
        with pytest.raises(ValueError):
            LinearOrder((0, 0, 1))

    def test_top(self):
        assert top(order("120")) == 1
        assert top(order("012")) == 0
        assert top(order_from_index(4, 3)) == 2

    def test_prefers(self):
        assert prefers(order("012"), 0, 2)
        assert not prefers(order("012"), 2, 0)
        assert prefers(order("120"), 2, 0)

    def test_prefers_same_alternative(self):
        with pytest.raises(ValueError):
            prefers(order("012"), 1, 1)

    def test_prefers_out_of_range(self):
        with pytest.raises(IndexOutOfRangeError):
            prefers(order("012"), 0, 3)

    def test_move_to_top(self):
        assert move_to_top(order("120"), 0) == order("012")
        assert move_to_top(order("012"), 0) == order("012")
        assert move_to_top(order("210"), 1) == order("120")

    def test_swap_pair(self):
        assert swap_pair(order("012"), 0, 1) == order("102")
        assert swap_pair(order("012"), 0, 2) == order("210")

    def test_swap_pair_is_involution(self):
        for o in (order_from_index(k, 4) for k in range(24)):
            assert swap_pair(swap_pair(o, 1, 3), 1, 3) == o

    def test_str(self):
        assert str(order("120")) == "1≻2≻0"


class TestProfiles:
    def test_profile_index(self):
        assert profile_index(rankings("012", "012")) == 0
        assert profile_index(Profile((order_from_index(1, 3), order_from_index(2, 3)))) == 13

    def test_round_trip(self):
        assert profile_index(profile_from_index(35, 3, 2)) == 35
        for k in range(216):
            assert profile_from_index(k, 3, 3).index == k

    def test_profile_from_index_out_of_range(self):
        with pytest.raises(IndexOutOfRangeError):
            profile_from_index(36, 3, 2)

    def test_replace_coord(self):
        x = profile_from_index(0, 3, 2)
        assert replace_coord(x, 1, x[1]) == x
        y = replace_coord(x, 1, order_from_index(3, 3))
        assert profile_index(y) == 18
        assert [v for v in range(2) if x[v] != y[v]] == [1]

    def test_replace_coord_bad_voter(self):
        with pytest.raises(VoterOutOfRangeError):
            replace_coord(profile_from_index(0, 3, 2), 2, order("012"))

    def test_mixed_dimensions(self):
        with pytest.raises(DimensionMismatchError):
            Profile((order("012"), order("0123")))

    def test_common_top(self):
        assert rankings("012", "021").common_top() == 0
        assert rankings("012", "102").common_top() is None


class TestCoalition:
    def test_duplicates_rejected(self):
        with pytest.raises(ValueError):
            Coalition.of([0, 0], 2)

    def test_out_of_range(self):
        with pytest.raises(VoterOutOfRangeError):
            Coalition.of([2], 2)

    def test_outsiders_and_order(self):
        g = Coalition.of([2, 0], 4)
        assert list(g) == [0, 2]
        assert g.outsiders() == (1, 3)
        assert g.smallest == 0
        assert str(g.without(0)) == "{2}"


class TestTable:
    def test_scf_eval(self):
        assert scf_eval(dictatorship(0), rankings("102", "012")) == 1
        assert scf_eval(constant_table(2), rankings("120", "201")) == 2
        assert scf_eval(plurality(3, 2), rankings("012", "102")) == 0

    def test_scf_eval_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            scf_eval(dictatorship(0), rankings("012", "012", "012"))

    def test_table_is_read_only(self):
        f = dictatorship(0)
        with pytest.raises(ValueError):
            f.table[0] = 1

    def test_wrong_length(self):
        with pytest.raises(DimensionMismatchError):
            ScfTable(3, 2, [0] * 35)

    def test_entry_out_of_range(self):
        with pytest.raises(ValueError):
            ScfTable(3, 1, [0, 1, 2, 3, 0, 0])

    def test_grid_axes(self):
        f = dictatorship(1, 3, 3)
        x = rankings("012", "201", "120")
        grid = f.grid()
        coords = tuple(x[f.n - 1 - axis].index for axis in range(f.n))
        assert grid[coords] == scf_eval(f, x) == 2

    def test_equality_and_hash(self):
        assert dictatorship(0) == dictatorship(0)
        assert dictatorship(0) != dictatorship(1)
        assert len({dictatorship(0), dictatorship(0)}) == 1


class TestSizeGuard:
    def test_within_guard(self):
        assert check_size(3, 9) == 6 ** 9

    def test_guard_exceeded(self):
        with pytest.raises(SizeGuardError):
            check_size(5, 4)

    def test_guard_follows_config(self, monkeypatch):
        monkeypatch.setattr(config, "SIZE_GUARD", 100)
        with pytest.raises(SizeGuardError):
            check_size(3, 3)

    @pytest.mark.parametrize("m, n", [(10_000_000, 1), (3, 10_000_000), (10 ** 12, 10 ** 12)])
    def test_huge_dimensions_refused_without_computing(self, m, n):
        with pytest.raises(SizeGuardError):
            check_size(m, n)

    def test_too_few_alternatives(self):
        with pytest.raises(ValueError):
            check_size(2, 2)

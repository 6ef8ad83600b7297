from itertools import product

import pytest

from scf_workbench.errors import SizeGuardError
from scf_workbench.prefcore import ScfTable
from scf_workbench.services.axioms import check_unanimous, find_dictator_bruteforce, find_manipulation
from scf_workbench.services.enumerator import (
    Axiom,
    SearchConfig,
    enumerate_scfs,
    verify_all_dictatorial,
)
from scf_workbench.services.rules import dictatorship

BOTH = frozenset({Axiom.UNM, Axiom.STP})


def brute_force_solutions(m: int, n: int, axioms: frozenset[Axiom]) -> list[ScfTable]:
    size = 6 ** n
    found = []
    for values in product(range(m), repeat=size):
        f = ScfTable(m, n, values)
        if Axiom.UNM in axioms and check_unanimous(f) is not None:
            continue
        if Axiom.STP in axioms and find_manipulation(f) is not None:
            continue
        found.append(f)
    return found


class TestSearchConfig:
    def test_search_scope(self):
        with pytest.raises(SizeGuardError):
            SearchConfig(3, 9)

    def test_size_guard(self):
        with pytest.raises(SizeGuardError):
            SearchConfig(5, 4)

    def test_no_axioms(self):
        with pytest.raises(ValueError):
            SearchConfig(3, 2, axioms=frozenset())

    def test_bad_limit_and_workers(self):
        with pytest.raises(ValueError):
            SearchConfig(3, 2, solution_limit=0)
        with pytest.raises(ValueError):
            SearchConfig(3, 2, worker_count=0)


class TestEnumeration:
    def test_two_voters(self):
        solutions = list(enumerate_scfs(SearchConfig(3, 2)))
        # tables come out in lexicographic order, which lists the later dictators first
        assert solutions == [dictatorship(1), dictatorship(0)]

    def test_one_voter(self):
        solutions = list(enumerate_scfs(SearchConfig(3, 1)))
        assert solutions == [dictatorship(0, 3, 1)]

    @pytest.mark.parametrize("axioms", [BOTH, frozenset({Axiom.STP}), frozenset({Axiom.UNM})])
    def test_matches_brute_force_at_one_voter(self, axioms):
        enumerated = list(enumerate_scfs(SearchConfig(3, 1, axioms=axioms)))
        assert enumerated == brute_force_solutions(3, 1, axioms)

    def test_lexicographic_order(self):
        solutions = list(enumerate_scfs(SearchConfig(3, 1, axioms=frozenset({Axiom.STP}))))
        keys = [tuple(f.table.tolist()) for f in solutions]
        assert keys == sorted(keys)
        assert len(set(keys)) == len(keys)

    @pytest.mark.parametrize("m, n, axioms", [
        (3, 2, BOTH),
        (3, 1, frozenset({Axiom.STP})),
        pytest.param(3, 3, BOTH, marks=pytest.mark.slow),
    ])
    def test_propagation_does_not_change_output(self, m, n, axioms):
        on = enumerate_scfs(SearchConfig(m, n, axioms=axioms))
        off = enumerate_scfs(SearchConfig(m, n, axioms=axioms, propagate=False))
        assert list(on) == list(off)
        assert on.stats.solutions_found == off.stats.solutions_found
        assert off.stats.nodes_expanded >= on.stats.nodes_expanded

    def test_solution_limit(self):
        enumeration = enumerate_scfs(SearchConfig(3, 2, solution_limit=1))
        assert list(enumeration) == [dictatorship(1)]
        assert enumeration.stats.solutions_found == 1

    def test_stats(self):
        enumeration = enumerate_scfs(SearchConfig(3, 2))
        list(enumeration)
        stats = enumeration.stats
        assert stats.solutions_found == 2
        assert stats.nodes_expanded >= 36
        # 12 common-top profiles, two values removed from each
        assert stats.prunes_by_unm == 24

    def test_workers_give_identical_output(self):
        sequential = list(enumerate_scfs(SearchConfig(3, 2)))
        parallel = enumerate_scfs(SearchConfig(3, 2, worker_count=2))
        assert list(parallel) == sequential
        assert parallel.stats.solutions_found == 2

    def test_workers_without_unanimity(self):
        cfg = dict(m=3, n=1, axioms=frozenset({Axiom.STP}))
        sequential = list(enumerate_scfs(SearchConfig(**cfg)))
        parallel = enumerate_scfs(SearchConfig(**cfg, worker_count=3))
        assert list(parallel) == sequential
        assert parallel.stats.prunes_by_unm == 0

    @pytest.mark.slow
    def test_three_voters(self):
        solutions = list(enumerate_scfs(SearchConfig(3, 3)))
        assert solutions == [dictatorship(d, 3, 3) for d in (2, 1, 0)]

    def test_stp_only_includes_constants(self):
        solutions = list(enumerate_scfs(SearchConfig(3, 2, axioms=frozenset({Axiom.STP}))))
        dictators = [find_dictator_bruteforce(f) for f in solutions]
        assert dictators.count(None) >= 3
        assert all(find_manipulation(f) is None for f in solutions)


class TestVerifyAllDictatorial:
    def test_two_voters(self):
        ok, report = verify_all_dictatorial(SearchConfig(3, 2))
        assert ok
        assert report.solution_count == 2
        assert report.dictators == [0, 1]
        assert not report.disagreements
        assert report.stats.solutions_found == 2

    def test_requires_both_axioms(self):
        with pytest.raises(ValueError):
            verify_all_dictatorial(SearchConfig(3, 2, axioms=frozenset({Axiom.STP})))

    @pytest.mark.slow
    def test_three_voters(self):
        ok, report = verify_all_dictatorial(SearchConfig(3, 3))
        assert ok
        assert report.dictator_counts == {0: 1, 1: 1, 2: 1}

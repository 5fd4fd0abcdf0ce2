"""Tests for the finite support search and family recognition"""

from fractions import Fraction

import pytest

from aomega_rota_baxter.alie import Window
from aomega_rota_baxter.classify import (
    FamilyMatch,
    NoMatch,
    PartialAssignment,
    SearchSpaceTooLarge,
    SearchSpec,
    classify_finite,
    enumerate_rb_finite,
    parse_values,
    prune_necessary,
    recognize,
    solution_to_dict
)
from aomega_rota_baxter.operators import (
    FamilyR02,
    FamilyR03,
    FamilyR04,
    FamilyR05,
    FiniteSupport,
    scale
)


def _acceptance_search() -> SearchSpec:
    return SearchSpec(
        Window(-4, 5),
        2,
        parse_values('1,-1,1/2,-1/2'),
        pinned={0: 0, 1: 0},
        min_support_size=1
    )


@pytest.mark.unit
def test_search_spec():
    """Search specifications normalize and validate their values"""
    spec = SearchSpec(Window(0, 3), 2, (1, 1, '-1'), pinned=[(1, '2')])
    assert spec.value_set == (Fraction(1), Fraction(-1))
    assert spec.pinned == ((1, Fraction(2)),)
    assert spec.free_indices == [0, 2, 3]
    assert spec.candidate_count() == 1 + 3 * 2 + 3 * 4
    assert SearchSpec(Window(0, 3), 2, (1, -1)).candidate_count() == 33
    with pytest.raises(ValueError):
        SearchSpec(Window(0, 3), 2, (1, 0))
    with pytest.raises(ValueError):
        SearchSpec(Window(0, 3), 1, (1,), min_support_size=2)
    with pytest.raises(ValueError):
        SearchSpec(Window(0, 3), -1, (1,))


@pytest.mark.unit
def test_search_budget():
    """Searches beyond their budget are refused before they start"""
    spec = SearchSpec(Window(-20, 20), 6, (1, -1), budget=1000)
    with pytest.raises(SearchSpaceTooLarge) as info:
        enumerate_rb_finite(spec)
    assert info.value.budget == 1000
    assert info.value.count == spec.candidate_count()


@pytest.mark.regression
def test_acceptance_search():
    """With f(0) = f(1) = 0 the solutions are the r04 and r05 supports"""
    results = classify_finite(_acceptance_search())
    assert len(results) == 96
    singletons = [solution for solution, _ in results if len(solution.support) == 1]
    pairs = [solution for solution, _ in results if len(solution.support) == 2]
    assert len(singletons) == 32
    assert len(pairs) == 64
    assert all(sum(solution.support) == 1 for solution in pairs)
    for solution, match in results:
        assert match.label == ('r04' if len(solution.support) == 1 else 'r05')
        assert scale(match.family(), 1 / match.scale) == solution


@pytest.mark.regression
def test_pruning_preserves_solutions():
    """Pruning only removes candidates that are not solutions"""
    pruned = enumerate_rb_finite(SearchSpec(Window(-3, 4), 2, (1, -1)))
    exhaustive = enumerate_rb_finite(SearchSpec(Window(-3, 4), 2, (1, -1), prune=False))
    assert pruned == exhaustive
    assert FiniteSupport({0: 1, 1: -1}) in pruned
    assert FiniteSupport({}) in pruned


@pytest.mark.unit
def test_workers_agree():
    """Partitioning the support patterns does not change the solutions"""
    spec = SearchSpec(Window(-3, 4), 2, (1, -1))
    assert enumerate_rb_finite(spec, workers=3) == enumerate_rb_finite(spec)


@pytest.mark.unit
def test_pinned_endpoints():
    """Pinned endpoints fix the r01 branch"""
    solutions = enumerate_rb_finite(
        SearchSpec(Window(-2, 3), 2, (1,), pinned={0: 1, 1: -1})
    )
    assert solutions == [FiniteSupport({0: 1, 1: -1})]
    results = classify_finite(SearchSpec(Window(-2, 3), 0, (1,), pinned={0: 1, 1: 7}))
    assert len(results) == 1
    solution, match = results[0]
    assert solution == FiniteSupport({0: 1, 1: 7})
    assert match.label == 'r01'
    assert match.params == {'b': 7}
    assert solution_to_dict(solution, match)['support'] == {'0': '1', '1': '7'}


@pytest.mark.unit
def test_prune_necessary():
    """Necessary conditions flag bad partial assignments only"""
    bad = PartialAssignment({0: Fraction(1), 1: Fraction(-1), 4: Fraction(1)}, ())
    report = prune_necessary(bad, Window(-4, 5))
    assert report.violated
    assert report.relations
    operator = FamilyR02(2, 3)
    values = {m: operator.f(m) for m in range(-200, 201)}
    assert not prune_necessary(values, Window(-4, 5)).violated
    unknown = PartialAssignment({0: Fraction(1), 1: Fraction(-1)}, [4, -3])
    assert not prune_necessary(unknown, Window(-4, 5)).violated


@pytest.mark.unit
def test_partial_assignment():
    """Unknown indices are absent and the rest read as zero"""
    assignment = PartialAssignment({0: Fraction(1)}, [3])
    assert 0 in assignment and 7 in assignment and 3 not in assignment
    assert assignment[7] == 0
    with pytest.raises(KeyError):
        assignment[3]  # pylint: disable=pointless-statement
    assignment.assign(3, Fraction(2))
    assert assignment[3] == 2
    assignment.unassign(3)
    assert 3 not in assignment


@pytest.mark.unit
def test_recognize_infinite_families():
    """The infinite families are recovered with their parameters"""
    match = recognize(FamilyR02(2, 3), Window(-12, 12))
    assert match.label == 'r02'
    assert match.params == {'m0': 2, 'a': 3}
    assert match.scale == 1
    scaled = recognize(scale(FamilyR02(2, 3), 5), Window(-12, 12))
    assert scaled.label == 'r02'
    assert scaled.scale == Fraction(1, 5)
    assert scaled.params['a'] == 3
    match = recognize(FamilyR03(7, 2, 2), Window(-30, 30))
    assert match.label == 'r03'
    assert match.params == {'m0': 7, 's0': 2, 'a': 2}
    assert set(match.skipped) == {-10, 11}
    assert match.family() == FamilyR03(7, 2, 2)


@pytest.mark.unit
def test_recognize_finite_families():
    """Finite support operators are labelled"""
    assert recognize(FamilyR04(3), Window(-5, 5)).params == {'m1': 3}
    match = recognize(FamilyR05(2, 1), Window(-5, 5))
    assert match.label == 'r05'
    assert match.params == {'m1': 2, 'b': 1}
    assert recognize(FamilyR05(2, Fraction(1, 2)), Window(-5, 5)).params == {
        'm1': 2, 'b': Fraction(1, 2)
    }
    assert recognize(FiniteSupport({}), Window(-3, 3)).label == 'zero'
    endpoint = recognize(FiniteSupport({1: 3}), Window(-3, 3))
    assert endpoint.label == 'endpoint'
    assert endpoint.scale == Fraction(1, 3)


@pytest.mark.unit
def test_no_match():
    """Unrecognized supports fail loudly on request"""
    match = recognize(FiniteSupport({3: 1, 4: 1}), Window(-5, 5))
    assert match.label == 'none'
    assert not match.matched
    assert match.family() is None
    with pytest.raises(NoMatch):
        match.require()
    assert FamilyMatch('r04', {'m1': 3}).require().label == 'r04'


@pytest.mark.unit
def test_match_to_dict():
    """Matches render parameters as canonical strings"""
    document = recognize(scale(FamilyR05(2, 1), 2), Window(-3, 3)).to_dict()
    assert document['label'] == 'r05'
    assert document['params'] == {'m1': 2, 'b': '1'}
    assert document['scale'] == '1/2'
    assert document['evidence'] == '-3..3'


@pytest.mark.unit
def test_recognize_canonical_parameters():
    """Equal r05 values report the larger support point as m1"""
    operator = FamilyR05(-1, 1)
    match = recognize(operator, Window(-5, 5))
    assert match.label == 'r05'
    assert match.params == {'m1': 2, 'b': 1}
    assert match.family() != operator
    assert match.family().finite_table() == operator.finite_table()
    assert FamilyR05(2, 1) != FiniteSupport({-1: 1, 2: 1})
    assert FamilyR05(2, 1).finite_table() == FiniteSupport({-1: 1, 2: 1}).finite_table()

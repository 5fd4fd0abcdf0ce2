"""Tests for induced 3-Lie algebras and their closed forms"""

from fractions import Fraction
from itertools import permutations, product
from typing import Any, Dict

import pytest

from aomega_rota_baxter.alie import Window, det_d
from aomega_rota_baxter.closed_forms import CLOSED_FORMS, FormParameters, closed_forms
from aomega_rota_baxter.induced import (
    build_table,
    crosscheck_closed_forms,
    induced_coeff,
    induced_coeff_expanded,
    induced_coeff_literal,
    induced_graded_coeff,
    verify_induced
)
from aomega_rota_baxter.operators import (
    FamilyR01,
    FamilyR02,
    FamilyR03,
    FamilyR04,
    FamilyR05,
    FiniteSupport,
    HomogeneousOperator,
    InvalidParameter
)
from aomega_rota_baxter.scalar import RatFun

ERRATUM = '[L2m0k1+2s0,L1-2m0k2-2s0,L2m]'


class Constant(HomogeneousOperator):
    """``R = c Id``"""

    def __init__(self, c: Fraction) -> None:
        self.c = c

    def f(self, m: int) -> Fraction:
        return self.c

    def to_spec(self) -> Dict[str, Any]:
        return {'constant': str(self.c)}


@pytest.mark.unit
def test_endpoint_family_constants():
    """``[L0, L1, Lm]_R`` for f(0) = 1, f(1) = b"""
    for b in (1, -1, 5):
        operator = FamilyR01(b)
        for m in range(-5, 7):
            if m in (0, 1):
                continue
            expected = b * (2 * m if m % 2 == 0 else 2 * m - 2)
            assert induced_coeff(operator, 0, 0, 1, m) == expected


@pytest.mark.unit
def test_unsupported_index_constant():
    """An unsupported even index meets f(0) f(1) only"""
    operator = FamilyR02(2, 3)
    for m in (-3, -1, 1, 3, 5):
        assert induced_coeff(operator, 0, 0, 1, 2 * m) == -4 * m


@pytest.mark.unit
def test_induced_coeff_alternates():
    """Induced constants change sign under a swap"""
    operator = FamilyR03(4, 3, Fraction(3, 5))
    for l, m, n in product(range(-4, 5), repeat=3):
        value = induced_coeff(operator, 0, l, m, n)
        assert induced_coeff(operator, 0, m, l, n) == -value
        assert induced_coeff(operator, 0, l, n, m) == -value


@pytest.mark.unit
def test_literal_expansion_agrees():
    """The subset expansion agrees with the closed forms of the coefficient"""
    operator = FiniteSupport({0: 1, 2: 5, -1: Fraction(1, 2)})
    for candidate in (FamilyR02(1, 3), FamilyR05(2, 3), operator):
        for l, m, n in permutations(range(-3, 4), 3):
            literal = induced_coeff_literal(candidate, 0, l, m, n)
            assert literal == induced_coeff(candidate, 0, l, m, n)
    for weight in (3, Fraction(-1, 2)):
        for l, m, n in permutations(range(-3, 4), 3):
            literal = induced_coeff_literal(operator, weight, l, m, n)
            assert literal == induced_coeff_expanded(operator, weight, l, m, n)
            assert literal == induced_coeff(operator, weight, l, m, n)


@pytest.mark.unit
def test_constant_operator_of_nonzero_weight():
    """``-w Id`` induces ``w^2 D`` and is Rota-Baxter for it"""
    operator = Constant(Fraction(-2))
    assert induced_coeff(operator, 2, 0, 1, 2) == 4 * det_d(0, 1, 2)
    verification = verify_induced(operator, 2, Window(-3, 3))
    assert verification.passed
    assert verification.to_dict() == {'fundamental': True, 'rota_baxter': True}


@pytest.mark.unit
def test_graded_coeff_label():
    """The induced bracket carries a readable label"""
    g = induced_graded_coeff(FamilyR04(3))
    assert g.label == 'induced[r04, weight 0]'
    assert g(3, 4, 5) == 0


@pytest.mark.unit
def test_build_table():
    """Tables hold the nonzero constants on increasing triples"""
    assert build_table(FamilyR04(3), 0, Window(-5, 5)).triples() == []
    algebra = build_table(FamilyR05(2, 3), 0, Window(-3, 4))
    assert algebra.table[(-1, 2, 3)] == -24
    assert algebra.lookup(-1, 2, 3) == -24
    assert algebra.lookup(2, -1, 3) == 24
    assert algebra.lookup(3, 2, -1) == 24
    assert algebra.lookup(2, 2, 3) == 0
    assert algebra.lookup(-1, 2, 10) == induced_coeff(FamilyR05(2, 3), 0, -1, 2, 10)
    assert all(l < m < n for (l, m, n), _ in algebra.triples())
    assert {
        'l': -1, 'm': 2, 'n': 3, 'coeff': '-24', 'out_index': 3
    } in algebra.to_dict()['triples']


@pytest.mark.unit
def test_build_table_workers_agree():
    """Partitioned table building gives the same constants"""
    operator = FamilyR02(1, 3)
    single = build_table(operator, 0, Window(-4, 4))
    parallel = build_table(operator, 0, Window(-4, 4), workers=3)
    assert single.table == parallel.table


@pytest.mark.unit
def test_symbolic_table_specializes():
    """Evaluating the symbolic table at a point gives the rational table"""
    symbolic = build_table(FamilyR02(1, RatFun.variable()), 0, Window(-3, 3))
    rational = build_table(FamilyR02(1, 3), 0, Window(-3, 3))
    assert set(rational.table) <= set(symbolic.table)
    for key, value in symbolic.table.items():
        specialized = value.evaluate(3) if isinstance(value, RatFun) else value
        assert specialized == rational.table.get(key, 0)


@pytest.mark.regression
def test_verify_induced_families():
    """The induced brackets of the families are 3-Lie"""
    operators = [
        FamilyR01(5),
        FamilyR02(1, 3),
        FamilyR03(4, 3, Fraction(3, 5)),
        FamilyR04(3),
        FamilyR05(2, 1),
        FiniteSupport({}),
    ]
    for operator in operators:
        verification = verify_induced(operator, 0, Window(-5, 5))
        assert verification.passed
        assert verification.report.label == 'induced-algebra'


@pytest.mark.regression
def test_verify_induced_degenerate():
    """Degenerate constants are skipped on request"""
    operator = FamilyR03(7, 2, 2)
    verification = verify_induced(operator, 0, Window(-5, 5), skip_degenerate=True)
    assert verification.passed
    assert verification.report.tuples_skipped > 0


@pytest.mark.unit
def test_verify_induced_failure():
    """A non Rota-Baxter operator fails the Rota-Baxter half"""
    verification = verify_induced(FiniteSupport({3: 1, 4: 1}), 0, Window(-4, 5))
    assert not verification.rota_baxter.passed
    assert not verification.passed


@pytest.mark.regression
@pytest.mark.parametrize('family,params', [
    (1, {'b': '5'}),
    (1, {'b': '-1/3'}),
    (2, {'m0': 2, 'a': '3'}),
    (2, {'m0': 1, 'a': '5/2'}),
    (3, {'m0': 7, 's0': 2, 'a': '2'}),
    (3, {'m0': 4, 's0': 3, 'a': '3/5'}),
    (4, {'m1': 3}),
    (5, {'m1': 2, 'b': '1'}),
    (5, {'m1': -3, 'b': '2/3'}),
])
def test_closed_forms_agree(family, params):
    """Every tabulated constant agrees with the induced bracket"""
    report = crosscheck_closed_forms(family, params, Window(-5, 5))
    assert report.passed
    assert report.tuples_checked > 0
    assert report.label == f'closed-forms-{family}'


@pytest.mark.unit
def test_closed_form_erratum():
    """The tabulated sign of one constant is wrong"""
    assert [form.name for forms in CLOSED_FORMS.values() for form in forms if form.erratum] == [
        ERRATUM
    ]
    report = crosscheck_closed_forms(
        3, FamilyR03(7, 2, 2), Window(-5, 5), apply_errata=False
    )
    assert not report.passed
    assert {item.check for item in report.counterexamples} == {ERRATUM}


@pytest.mark.unit
def test_closed_form_matching():
    """Role patterns bind their variables"""
    params = FormParameters.of(FamilyR02(2, 3))
    form = closed_forms(2)[0]
    assert form.match(params, (0, 1, 6)) == {'m': 3}
    assert form.match(params, (0, 1, 4)) is None
    assert form.match(params, (1, 0, 6)) is None
    assert form.out_index(params, {'m': 3}) == 6


@pytest.mark.unit
def test_crosscheck_rejects_mismatches():
    """Unknown families and foreign operators are rejected"""
    with pytest.raises(InvalidParameter):
        crosscheck_closed_forms(6, {}, Window(-2, 2))
    with pytest.raises(InvalidParameter):
        crosscheck_closed_forms(2, FamilyR04(3), Window(-2, 2))

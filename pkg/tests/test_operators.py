"""Tests for homogeneous operators, the weight-zero criterion and derived identities"""

from fractions import Fraction

import pytest

from aomega_rota_baxter.alie import (
    A_OMEGA,
    Element,
    Window,
    check_derivation,
    check_rota_baxter,
    det_d
)
from aomega_rota_baxter.operators import (
    DegenerateParameter,
    FamilyR01,
    FamilyR02,
    FamilyR03,
    FamilyR04,
    FamilyR05,
    FiniteSupport,
    InvalidParameter,
    NotInvertibleOnWindow,
    OperatorSpecError,
    ScaledOperator,
    Supporter,
    ZeroScalar,
    check_rb_global_finite,
    check_rb_weight0,
    global_candidate_triples,
    identity_names,
    identity_reports,
    identity_suite,
    inverse_on_window,
    lambda_k,
    operator_from_spec,
    scale
)
from aomega_rota_baxter.scalar import RatFun

A = RatFun.variable()


class PerturbedR02(FamilyR02):
    """An r02 operator with a wrong value at 2"""

    def f(self, m: int):
        value = super().f(m)
        return 2 * value if m == 2 else value


def _reverify(operator, indices) -> bool:
    l, m, n = indices
    x, y, z = operator.f(l), operator.f(m), operator.f(n)
    det = det_d(l, m, n)
    return x * y * z * det == (x * y + x * z + y * z) * operator.f(l + m + n - 1) * det


@pytest.mark.unit
def test_supporter():
    """Membership in the even and shifted supporters"""
    even = Supporter.even(3)
    assert even.contains(6)
    assert even.contains(-5)
    assert not even.contains(4)
    assert even.locate(-5) == (1, -1)
    assert even.locate(-6) == (-1, 1)
    shifted = Supporter.shifted(7, 2)
    assert shifted.contains(4) and shifted.contains(-3)
    assert shifted.kind == 'shifted' and even.kind == 'even'
    assert Supporter.shifted(4, 3).contains(6)
    assert Supporter.shifted(4, 3).odd_point(0) == -5
    with pytest.raises(InvalidParameter):
        Supporter.shifted(3, 3)
    with pytest.raises(InvalidParameter):
        Supporter(0)


@pytest.mark.unit
def test_family_values():
    """Closed form values of the infinite families"""
    r02 = FamilyR02(1, 3)
    for k in range(-5, 6):
        assert r02.f(2 * k) == Fraction(1, 2 * k + 1)
        assert r02.f(1 - 2 * k) == Fraction(-1, 2 * k + 1)
    r03 = FamilyR03(7, 2, 2)
    for k in range(-10, 11):
        if k == -1:
            with pytest.raises(DegenerateParameter):
                r03.f(14 * k + 4)
            continue
        assert r03.f(14 * k + 4) == Fraction(1, k + 1)
        assert r03.f(-14 * k - 3) == Fraction(-1, k + 1)
    r03 = FamilyR03(4, 3, Fraction(3, 5))
    for k in range(-10, 11):
        assert r03.f(8 * k + 6) == Fraction(5, 5 - 2 * k)
    assert FamilyR03(4, 3, Fraction(3, 5)).f(0) == 0
    assert FamilyR02(1, A).f(2) == 1 / A
    assert lambda_k(A, 2) == 2 * A - 1


@pytest.mark.unit
def test_family_parameters():
    """Invalid parameters are rejected"""
    with pytest.raises(InvalidParameter):
        FamilyR02(0, 3)
    with pytest.raises(InvalidParameter):
        FamilyR03(4, 4, 3)
    with pytest.raises(InvalidParameter):
        FamilyR04(1)
    with pytest.raises(InvalidParameter):
        FamilyR05(2, 0)
    with pytest.raises(InvalidParameter):
        FamilyR01('x')


@pytest.mark.unit
def test_degenerate_parameter():
    """A vanishing lambda_k raises unless skipped"""
    operator = FamilyR02(1, Fraction(1, 2))
    with pytest.raises(DegenerateParameter) as info:
        operator.f(4)
    assert info.value.k == 2
    with pytest.raises(DegenerateParameter):
        check_rb_weight0(operator, Window(-5, 5))
    report = check_rb_weight0(operator, Window(-5, 5), skip_degenerate=True)
    assert report.passed
    assert report.tuples_skipped > 0
    assert report.tuples_checked == 11 ** 3


@pytest.mark.regression
def test_weight_zero_criterion_on_families():
    """Every family passes the criterion on a window"""
    assert check_rb_weight0(FamilyR01(7), Window(-10, 10)).passed
    assert check_rb_weight0(FamilyR02(1, 3), Window(-10, 10)).passed
    assert check_rb_weight0(FamilyR02(3, Fraction(-2, 7)), Window(-8, 8)).passed
    assert check_rb_weight0(FamilyR04(3), Window(-6, 6)).passed
    assert check_rb_weight0(FamilyR05(-2, Fraction(1, 3)), Window(-6, 6)).passed
    assert check_rb_weight0(FamilyR03(4, 3, Fraction(3, 5)), Window(-16, 16)).passed
    report = check_rb_weight0(FamilyR03(7, 2, 2), Window(-16, 16), skip_degenerate=True)
    assert report.passed
    assert report.tuples_skipped > 0


@pytest.mark.regression
def test_weight_zero_criterion_symbolic():
    """The r02 family passes as rational function identities"""
    assert check_rb_weight0(FamilyR02(1, A), Window(-6, 6)).passed
    assert check_rb_weight0(FamilyR02(2, A), Window(-6, 6), workers=2).passed
    assert check_rb_weight0(FamilyR02(3, A), Window(-6, 6)).passed


@pytest.mark.unit
def test_weight_zero_criterion_failure():
    """A non Rota-Baxter operator fails with counterexamples that re-verify"""
    operator = FiniteSupport({3: 1, 4: 1})
    report = check_rb_weight0(operator, Window(-6, 8))
    assert not report.passed
    for item in report.counterexamples:
        assert not _reverify(operator, item.indices)


@pytest.mark.unit
def test_specialized_and_generic_checks_agree():
    """The specialized criterion matches the generic Rota-Baxter checker"""
    for operator in (FiniteSupport({3: 1, 4: 1}), FamilyR02(2, 3), FiniteSupport({0: 1, 2: 5})):
        specialized = check_rb_weight0(operator, Window(-5, 5), max_counterexamples=None)
        generic = check_rota_baxter(
            operator.f, A_OMEGA, 0, Window(-5, 5), max_counterexamples=None
        )
        assert specialized.tuples_checked == generic.tuples_checked
        assert specialized.failures == generic.failures


@pytest.mark.unit
def test_global_candidate_triples():
    """Candidates are sorted triples of distinct indices"""
    triples = global_candidate_triples([3, 4])
    assert (-3, 3, 4) in triples
    assert all(l < m < n for l, m, n in triples)
    assert global_candidate_triples([0, 1]) == []


@pytest.mark.unit
def test_global_decision():
    """The global procedure for finite support"""
    for b in (0, 1, -1, 7, Fraction(-1, 3)):
        assert check_rb_global_finite(FamilyR01(b)).passed
    assert check_rb_global_finite(FiniteSupport({0: 1, 1: 5})).passed
    for b in (1, Fraction(-1, 2), 7):
        assert check_rb_global_finite(FiniteSupport({3: 1, -2: b})).passed
    assert check_rb_global_finite(FamilyR04(3)).passed
    assert check_rb_global_finite(FamilyR05(2, 1)).passed
    report = check_rb_global_finite(FiniteSupport({0: 1, 1: -1, 4: 1}))
    assert not report.passed
    operator = FiniteSupport({0: 1, 1: -1, 4: 1})
    for item in report.counterexamples:
        assert not _reverify(operator, item.indices)
    with pytest.raises(InvalidParameter):
        check_rb_global_finite(FamilyR02(1, 3))


@pytest.mark.regression
def test_endpoint_family_admits_no_extension():
    """One extra nonzero value breaks f(0) = 1, f(1) = b with b != -1"""
    for b in (0, 5, Fraction(-1, 3)):
        for extra in range(-5, 7):
            if extra in (0, 1):
                continue
            for value in (1, -1, Fraction(1, 2)):
                operator = FiniteSupport({0: 1, 1: b, extra: value})
                assert not check_rb_global_finite(operator).passed


@pytest.mark.unit
def test_scale():
    """Scaling keeps the Rota-Baxter property"""
    assert scale(FamilyR04(3), 2) == FiniteSupport({3: 2})
    r02 = FamilyR02(1, 3)
    assert scale(r02, 1) is r02
    scaled = scale(r02, 2)
    assert isinstance(scaled, ScaledOperator)
    assert scaled.f(0) == 2
    assert scaled.f(5) == Fraction(2, 3)
    nested = scale(scaled, Fraction(1, 4))
    assert isinstance(nested, ScaledOperator)
    assert nested.factor == Fraction(1, 2)
    assert nested.base == r02
    with pytest.raises(ZeroScalar):
        scale(r02, 0)


@pytest.mark.regression
def test_scaling_preserves_rota_baxter():
    """Scaled verified operators still pass"""
    operators = [
        FamilyR01(7),
        FamilyR01(Fraction(-1, 3)),
        FamilyR02(1, 3),
        FamilyR02(2, 5),
        FamilyR02(3, -1),
        FamilyR03(4, 3, Fraction(3, 5)),
        FamilyR04(3),
        FamilyR05(2, 1),
        FamilyR05(-3, Fraction(1, 2)),
        FiniteSupport({3: 1, -2: 5}),
    ]
    for operator in operators:
        for factor in (2, Fraction(-1, 3)):
            scaled = scale(operator, factor)
            if scaled.finite_table() is not None:
                assert check_rb_global_finite(scaled).passed
            else:
                assert check_rb_weight0(scaled, Window(-6, 6)).passed


@pytest.mark.unit
def test_inverse_on_window():
    """The inverse of an invertible operator is a derivation"""
    operator = FamilyR02(1, 3)
    inverse = inverse_on_window(operator, Window(-8, 8))
    for k in range(-4, 5):
        assert inverse(2 * k) == 2 * k + 1
        assert inverse(1 - 2 * k) == -(2 * k + 1)
    assert check_derivation(inverse, A_OMEGA, 0, Window(-8, 8)).passed
    with pytest.raises(NotInvertibleOnWindow) as info:
        inverse_on_window(FamilyR02(3, A), Window(-3, 3))
    assert 2 in info.value.indices
    with pytest.raises(NotInvertibleOnWindow):
        inverse_on_window(FamilyR04(3), Window(-1, 1))


@pytest.mark.unit
def test_apply():
    """Operators act diagonally on elements"""
    operator = FamilyR05(2, 3)
    assert operator.apply(Element({2: 1, -1: 1, 5: 1})) == Element({2: 1, -1: 3})


@pytest.mark.unit
def test_operator_from_spec():
    """Operators parse from their specification and round trip"""
    assert operator_from_spec({'family': 'r02', 'm0': 1, 'a': '3'}) == FamilyR02(1, Fraction(3))
    assert operator_from_spec({'support': {'3': '1'}}) == FiniteSupport({3: 1})
    scaled = operator_from_spec({'scale': '2', 'operator': {'family': 'r04', 'm1': 3}})
    assert scaled == FiniteSupport({3: 2})
    assert operator_from_spec({'family': 'r02', 'm0': 2, 'a': 'sym'}).symbolic
    operators = [
        FamilyR01(Fraction(1, 2)),
        FamilyR02(2, A),
        FamilyR03(7, 2, 2),
        FamilyR04(-4),
        FamilyR05(3, -1),
        FiniteSupport({0: 1, 1: Fraction(-2, 3)}),
    ]
    for operator in operators:
        assert operator_from_spec(operator.to_spec()) == operator
    for spec in (
            {'family': 'r03', 'm0': 3, 's0': 3, 'a': '1'},
            {'family': 'r06'},
            {'family': 'r02', 'm0': 1},
            {'family': 'r02', 'm0': 'x', 'a': '1'},
            {'support': {'1': '0.5'}},
            {'support': [1, 2]},
    ):
        with pytest.raises(OperatorSpecError):
            operator_from_spec(spec)


@pytest.mark.regression
def test_identity_suites_pass():
    """The derived identities hold for the infinite families"""
    for operator in (FamilyR02(1, 3), FamilyR02(2, Fraction(5, 3))):
        report = identity_suite(operator, Window(-6, 6))
        assert report.passed
        assert report.label == 'identity-suite'
        assert report.tuples_checked > 0
    for operator in (FamilyR03(7, 2, 2), FamilyR03(4, 3, Fraction(3, 5))):
        assert identity_suite(operator, Window(-6, 6)).passed


@pytest.mark.regression
def test_identity_suite_symbolic():
    """The derived identities hold as rational function identities"""
    assert identity_suite(FamilyR02(1, A), Window(-2, 2)).passed


@pytest.mark.regression
def test_identity_suites_on_wide_window():
    """The families satisfy their identities for k in -20..20"""
    operators = (
        FamilyR02(2, Fraction(5, 3)),
        FamilyR03(7, 2, 2),
        FamilyR03(4, 3, Fraction(3, 5))
    )
    for operator in operators:
        report = identity_suite(operator, Window(-20, 20))
        assert report.passed
        assert report.tuples_checked > report.tuples_skipped


@pytest.mark.integration
@pytest.mark.parametrize('m0', [1, 2, 3])
def test_identity_suite_symbolic_on_wide_window(m0):
    """The r02 identities hold in a for k in -20..20"""
    assert identity_suite(FamilyR02(m0, A), Window(-20, 20)).passed


@pytest.mark.unit
def test_identity_reports_find_perturbation():
    """A wrong value breaks the reciprocal identities"""
    reports = identity_reports(PerturbedR02(1, 3), Window(-3, 3))
    assert set(reports) == set(identity_names(FamilyR02(1, 3)))
    assert not reports['mirror-reciprocal'].passed
    assert reports['mirror-reciprocal'].counterexamples[0].check == 'mirror-reciprocal'


@pytest.mark.unit
def test_identity_selection():
    """Identities apply to r02 and r03 only and must be known"""
    report = identity_reports(FamilyR03(7, 2, 2), Window(-3, 3), identities=['support-pairing'])
    assert list(report) == ['support-pairing']
    assert 'support-pairing' not in identity_names(FamilyR02(1, 3))
    with pytest.raises(InvalidParameter):
        identity_suite(FamilyR04(3), Window(-3, 3))
    with pytest.raises(InvalidParameter):
        identity_suite(FamilyR02(1, 3), Window(-3, 3), identities=['unknown'])

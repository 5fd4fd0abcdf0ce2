"""
Homogeneous operators ``R(L_m) = f(m) L_m`` on A_omega.

The five closed form families, finite support operators, their supporter
sets, the weight-zero criterion (window and global finite decision), scaling,
inverses and the suite of derived identities.
"""

from __future__ import annotations

from abc import ABCMeta, abstractmethod
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations, product
import logging
from typing import (
    Any,
    Callable,
    Dict,
    Iterable,
    List,
    Mapping,
    Optional,
    Sequence,
    Tuple,
    Union
)

from .alie import (
    DEFAULT_MAX_COUNTEREXAMPLES,
    Element,
    Report,
    ReportBuilder,
    Window,
    det_d,
    d_zero_predicate,
    merge_reports
)
from . import relations
from .relations import Lookup, Reciprocals
from .scalar import (
    ONE,
    ZERO,
    Number,
    RatFun,
    Scalar,
    ScalarError,
    as_scalar,
    format_scalar
)
from .utils import run_partitioned, sorted_items

LOGGER = logging.getLogger(__name__)


class OperatorError(Exception):
    """Base class for operator errors"""


class DegenerateParameter(OperatorError):
    """Raised when ``lambda_k = k a - (k - 1)`` vanishes"""

    def __init__(self, k: int, a: Scalar) -> None:
        super().__init__(
            f'lambda_{k} = {k}a-({k}-1) vanishes at a={format_scalar(a)}'
        )
        self.k = k
        self.a = a


class NotInvertibleOnWindow(OperatorError):
    """Raised when an operator has zero diagonal entries on a window"""

    def __init__(self, indices: Sequence[int]) -> None:
        super().__init__(f'f vanishes at {list(indices)}')
        self.indices = list(indices)


class ZeroScalar(OperatorError, ValueError):
    """Raised when scaling by zero"""


class InvalidParameter(OperatorError, ValueError):
    """Raised when family parameters violate their constraints"""


class OperatorSpecError(OperatorError, ValueError):
    """Raised when an operator specification cannot be parsed"""


def lambda_k(a: Scalar, k: int) -> Scalar:
    """The denominator ``k a - (k - 1)`` of the family closed forms"""
    return k * a - (k - 1)


def _inverse_lambda(a: Scalar, k: int) -> Scalar:
    value = lambda_k(a, k)
    if value == 0:
        raise DegenerateParameter(k, a)
    return 1 / value


def _parameter(value: Union[Number, str], name: str) -> Scalar:
    try:
        return as_scalar(value)
    except ScalarError as error:
        raise InvalidParameter(f'Invalid {name}: {error}') from error


def _render_parameter(value: Scalar) -> str:
    if isinstance(value, RatFun) and value == RatFun.variable():
        return 'sym'
    return format_scalar(value)


@dataclass(frozen=True)
class Supporter:
    """The support ``{2 m0 k + 2 s0} U {1 - 2 m0 k - 2 s0}`` of an infinite family.

    ``s0 == 0`` is the even supporter ``W_{m0}``, otherwise the shifted
    supporter ``W_{m0,s0}`` with ``1 <= s0 < m0``.
    """

    m0: int
    s0: int = 0

    def __post_init__(self) -> None:
        if self.m0 < 1:
            raise InvalidParameter(f'm0 must be positive, got {self.m0}')
        if self.s0 and not 1 <= self.s0 < self.m0:
            raise InvalidParameter(
                f's0 must satisfy 1 <= s0 < m0, got s0={self.s0}, m0={self.m0}'
            )

    @classmethod
    def even(cls, m0: int) -> Supporter:
        """The even supporter"""
        return cls(m0)

    @classmethod
    def shifted(cls, m0: int, s0: int) -> Supporter:
        """The shifted supporter"""
        if s0 == 0:
            raise InvalidParameter('A shifted supporter needs s0 >= 1')
        return cls(m0, s0)

    @property
    def kind(self) -> str:
        """Either 'even' or 'shifted'"""
        return 'shifted' if self.s0 else 'even'

    def even_point(self, k: int) -> int:
        """The point ``2 m0 k + 2 s0``"""
        return 2 * self.m0 * k + 2 * self.s0

    def odd_point(self, k: int) -> int:
        """The point ``1 - 2 m0 k - 2 s0``"""
        return 1 - self.even_point(k)

    def locate(self, m: int) -> Optional[Tuple[int, int]]:
        """The progression index ``k`` and branch sign of ``m``, if supported"""
        period = 2 * self.m0
        if (m - 2 * self.s0) % period == 0:
            return (m - 2 * self.s0) // period, 1
        if (1 - m - 2 * self.s0) % period == 0:
            return (1 - m - 2 * self.s0) // period, -1
        return None

    def contains(self, m: int) -> bool:
        """Membership in either progression"""
        return self.locate(m) is not None


def supporter_contains(supporter: Supporter, m: int) -> bool:
    """True if ``m`` lies in the supporter"""
    return supporter.contains(m)


class HomogeneousOperator(metaclass=ABCMeta):
    """A diagonal operator ``R(L_m) = f(m) L_m``.

    Equality compares the class and the parameters, not the values:
    ``FamilyR05(2, 1)``, ``FamilyR05(-1, 1)`` and ``FiniteSupport({-1: 1, 2: 1})``
    are the same map and pairwise unequal. Compare finite operators through
    ``finite_table()``.
    """

    family = ''

    @abstractmethod
    def f(self, m: int) -> Scalar:
        """The diagonal entry at ``m``"""

    @abstractmethod
    def to_spec(self) -> Dict[str, Any]:
        """The JSON operator specification"""

    def __call__(self, m: int) -> Scalar:
        return self.f(m)

    def finite_table(self) -> Optional[Dict[int, Scalar]]:
        """The nonzero entries when the support is finite, otherwise None"""
        return None

    @property
    def symbolic(self) -> bool:
        """True when values are rational functions of ``a``"""
        return False

    def apply(self, x: Element) -> Element:
        """Apply the operator to a finitely supported vector"""
        return x.map_diagonal(self.f)


def eval_f(operator: HomogeneousOperator, m: int) -> Scalar:
    """The diagonal entry ``f(m)``.

    Raises:
        DegenerateParameter: When the entry needs a vanishing ``lambda_k``.
    """
    return operator.f(m)


class FiniteSupport(HomogeneousOperator):
    """An operator given by its finitely many nonzero entries"""

    family = 'finite'

    def __init__(self, table: Mapping[int, Union[Number, str]]) -> None:
        entries: Dict[int, Scalar] = {}
        for index, value in table.items():
            scalar = _parameter(value, f'f({index})')
            if scalar != 0:
                entries[int(index)] = scalar
        self._table = entries

    @property
    def support(self) -> Tuple[int, ...]:
        """The support in order"""
        return tuple(sorted(self._table))

    @property
    def table(self) -> Dict[int, Scalar]:
        """A copy of the nonzero entries"""
        return dict(self._table)

    def f(self, m: int) -> Scalar:
        return self._table.get(m, ZERO)

    def finite_table(self) -> Optional[Dict[int, Scalar]]:
        return dict(self._table)

    @property
    def symbolic(self) -> bool:
        return any(isinstance(value, RatFun) for value in self._table.values())

    def to_spec(self) -> Dict[str, Any]:
        return {
            'support': {
                str(index): format_scalar(value)
                for index, value in sorted_items(self._table)
            }
        }

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FiniteSupport):
            return NotImplemented
        return self._table == other._table

    def __hash__(self) -> int:
        return hash(tuple(sorted_items(self._table)))

    def __repr__(self) -> str:
        entries = ', '.join(
            f'{index}: {format_scalar(value)}'
            for index, value in sorted_items(self._table)
        )
        return f'FiniteSupport({{{entries}}})'


@dataclass(frozen=True)
class FamilyR01(HomogeneousOperator):
    """``f(0) = 1``, ``f(1) = b``, zero elsewhere"""

    b: Scalar
    family = 'r01'

    def __post_init__(self) -> None:
        object.__setattr__(self, 'b', _parameter(self.b, 'b'))

    def f(self, m: int) -> Scalar:
        if m == 0:
            return ONE
        if m == 1:
            return self.b
        return ZERO

    def finite_table(self) -> Optional[Dict[int, Scalar]]:
        return {m: value for m, value in ((0, ONE), (1, self.b)) if value != 0}

    def to_spec(self) -> Dict[str, Any]:
        return {'family': self.family, 'b': format_scalar(self.b)}


@dataclass(frozen=True)
class FamilyR02(HomogeneousOperator):
    """``f(2 m0 k) = -f(1 - 2 m0 k) = 1/(k a - (k - 1))``, zero elsewhere.

    ``f(0) = -f(1) = 1`` is the ``k = 0`` case.
    """

    m0: int
    a: Scalar
    family = 'r02'

    def __post_init__(self) -> None:
        if not isinstance(self.m0, int) or self.m0 < 1:
            raise InvalidParameter(f'm0 must be a positive integer, got {self.m0}')
        object.__setattr__(self, 'a', _parameter(self.a, 'a'))

    @property
    def supporter(self) -> Supporter:
        """The supporter ``W_{m0}``"""
        return Supporter.even(self.m0)

    @property
    def symbolic(self) -> bool:
        return isinstance(self.a, RatFun)

    def f(self, m: int) -> Scalar:
        location = self.supporter.locate(m)
        if location is None:
            return ZERO
        k, sign = location
        value = _inverse_lambda(self.a, k)
        return value if sign > 0 else -value

    def to_spec(self) -> Dict[str, Any]:
        return {'family': self.family, 'm0': self.m0, 'a': _render_parameter(self.a)}


@dataclass(frozen=True)
class FamilyR03(HomogeneousOperator):
    """``f(2 m0 k + 2 s0) = -f(1 - 2 m0 k - 2 s0) = 1/(k a - (k - 1))``, zero elsewhere"""

    m0: int
    s0: int
    a: Scalar
    family = 'r03'

    def __post_init__(self) -> None:
        if not isinstance(self.m0, int) or not isinstance(self.s0, int):
            raise InvalidParameter('m0 and s0 must be integers')
        if not 1 <= self.s0 < self.m0:
            raise InvalidParameter(
                f'Expected 1 <= s0 < m0, got s0={self.s0}, m0={self.m0}'
            )
        object.__setattr__(self, 'a', _parameter(self.a, 'a'))

    @property
    def supporter(self) -> Supporter:
        """The supporter ``W_{m0,s0}``"""
        return Supporter.shifted(self.m0, self.s0)

    @property
    def symbolic(self) -> bool:
        return isinstance(self.a, RatFun)

    def f(self, m: int) -> Scalar:
        location = self.supporter.locate(m)
        if location is None:
            return ZERO
        k, sign = location
        value = _inverse_lambda(self.a, k)
        return value if sign > 0 else -value

    def to_spec(self) -> Dict[str, Any]:
        return {
            'family': self.family,
            'm0': self.m0,
            's0': self.s0,
            'a': _render_parameter(self.a)
        }


def _check_m1(m1: Any) -> None:
    if not isinstance(m1, int) or m1 in (0, 1):
        raise InvalidParameter(f'm1 must be an integer other than 0 and 1, got {m1}')


@dataclass(frozen=True)
class FamilyR04(HomogeneousOperator):
    """``f(m1) = 1``, zero elsewhere"""

    m1: int
    family = 'r04'

    def __post_init__(self) -> None:
        _check_m1(self.m1)

    def f(self, m: int) -> Scalar:
        return ONE if m == self.m1 else ZERO

    def finite_table(self) -> Optional[Dict[int, Scalar]]:
        return {self.m1: ONE}

    def to_spec(self) -> Dict[str, Any]:
        return {'family': self.family, 'm1': self.m1}


@dataclass(frozen=True)
class FamilyR05(HomogeneousOperator):
    """``f(m1) = 1``, ``f(1 - m1) = b``, zero elsewhere"""

    m1: int
    b: Scalar
    family = 'r05'

    def __post_init__(self) -> None:
        _check_m1(self.m1)
        b = _parameter(self.b, 'b')
        if b == 0:
            raise InvalidParameter('b must be nonzero')
        object.__setattr__(self, 'b', b)

    def f(self, m: int) -> Scalar:
        if m == self.m1:
            return ONE
        if m == 1 - self.m1:
            return self.b
        return ZERO

    def finite_table(self) -> Optional[Dict[int, Scalar]]:
        return {self.m1: ONE, 1 - self.m1: self.b}

    def to_spec(self) -> Dict[str, Any]:
        return {'family': self.family, 'm1': self.m1, 'b': format_scalar(self.b)}


@dataclass(frozen=True)
class ScaledOperator(HomogeneousOperator):
    """``c R`` for an operator with infinite support"""

    base: HomogeneousOperator
    factor: Scalar
    family = 'scaled'

    @property
    def symbolic(self) -> bool:
        return self.base.symbolic or isinstance(self.factor, RatFun)

    def f(self, m: int) -> Scalar:
        value = self.base.f(m)
        return value * self.factor if value else ZERO

    def to_spec(self) -> Dict[str, Any]:
        return {'scale': format_scalar(self.factor), 'operator': self.base.to_spec()}


FAMILIES = ('r01', 'r02', 'r03', 'r04', 'r05')


def _spec_int(spec: Mapping[str, Any], key: str) -> int:
    if key not in spec:
        raise OperatorSpecError(f'Missing "{key}"')
    value = spec[key]
    if isinstance(value, bool):
        raise OperatorSpecError(f'"{key}" must be an integer')
    try:
        return int(value)
    except (TypeError, ValueError) as error:
        raise OperatorSpecError(f'"{key}" must be an integer, got {value!r}') from error


def _spec_scalar(spec: Mapping[str, Any], key: str) -> Scalar:
    if key not in spec:
        raise OperatorSpecError(f'Missing "{key}"')
    try:
        return as_scalar(spec[key])
    except ScalarError as error:
        raise OperatorSpecError(f'Invalid "{key}": {error}') from error


def operator_from_spec(spec: Mapping[str, Any]) -> HomogeneousOperator:
    """Build an operator from its JSON specification.

    Accepted forms are ``{"family": "r02", "m0": 1, "a": "3"}`` (and the
    other families with their parameters), ``{"support": {"3": "1"}}`` and
    ``{"scale": "2", "operator": {...}}``. ``"a": "sym"`` selects the
    symbolic parameter.

    Args:
        spec (Mapping[str, Any]): The specification.

    Raises:
        OperatorSpecError: If the specification is malformed.

    Returns:
        HomogeneousOperator: The operator.
    """
    try:
        if 'support' in spec:
            support = spec['support']
            if not isinstance(support, Mapping):
                raise OperatorSpecError('"support" must be an object')
            return FiniteSupport({
                int(index): _spec_scalar(support, index) for index in support
            })
        if 'scale' in spec:
            return scale(
                operator_from_spec(spec.get('operator') or {}),
                _spec_scalar(spec, 'scale')
            )
        family = spec.get('family')
        if family == 'r01':
            return FamilyR01(_spec_scalar(spec, 'b'))
        if family == 'r02':
            return FamilyR02(_spec_int(spec, 'm0'), _spec_scalar(spec, 'a'))
        if family == 'r03':
            return FamilyR03(
                _spec_int(spec, 'm0'),
                _spec_int(spec, 's0'),
                _spec_scalar(spec, 'a')
            )
        if family == 'r04':
            return FamilyR04(_spec_int(spec, 'm1'))
        if family == 'r05':
            return FamilyR05(_spec_int(spec, 'm1'), _spec_scalar(spec, 'b'))
    except (InvalidParameter, ZeroScalar, ValueError) as error:
        if isinstance(error, OperatorSpecError):
            raise
        raise OperatorSpecError(str(error)) from error
    raise OperatorSpecError(f'Unknown operator specification {dict(spec)!r}')


def check_rb_weight0(
        operator: HomogeneousOperator,
        window: Window,
        *,
        skip_degenerate: bool = False,
        max_counterexamples: Optional[int] = DEFAULT_MAX_COUNTEREXAMPLES,
        workers: int = 1
) -> Report:
    """Check the homogeneous weight-zero criterion on all triples of a window.

    ``f(l) f(m) f(n) D = (f(l) f(m) + f(l) f(n) + f(m) f(n)) f(l+m+n-1) D``.
    Triples where ``D`` vanishes pass without evaluating ``f``.

    Args:
        operator (HomogeneousOperator): The operator.
        window (Window): The window for ``l``, ``m`` and ``n``.
        skip_degenerate (bool, optional): If True count triples touching a
            degenerate parameter as skipped instead of raising. Defaults to
            False.
        max_counterexamples (Optional[int], optional): The counterexample
            cap. Defaults to 32.
        workers (int, optional): The number of workers. Defaults to 1.

    Raises:
        DegenerateParameter: When a triple needs a vanishing ``lambda_k`` and
            ``skip_degenerate`` is False.

    Returns:
        Report: The outcome.
    """
    f = lru_cache(maxsize=None)(operator.f)
    skip_errors = (DegenerateParameter,) if skip_degenerate else ()
    indices = list(window)

    def task(firsts: Sequence[int]) -> Report:
        builder = ReportBuilder('rota-baxter-weight-0', max_counterexamples)
        for l in firsts:
            for m in indices:
                for n in indices:
                    if d_zero_predicate(l, m, n):
                        builder.count()
                        continue
                    try:
                        x, y, z = f(l), f(m), f(n)
                        lhs_value = x * y * z
                        factor = x * y + x * z + y * z
                        rhs_value = factor * f(l + m + n - 1)
                    except skip_errors:
                        builder.skip()
                        continue
                    det = det_d(l, m, n)
                    builder.compare((l, m, n), lhs_value * det, rhs_value * det)
        return builder.build()

    report = merge_reports(
        run_partitioned(task, indices, workers),
        max_counterexamples,
        'rota-baxter-weight-0'
    )
    LOGGER.debug(
        'Weight-zero criterion for %s on %s: %d triples, %d failures, %d skipped',
        operator.to_spec(), window,
        report.tuples_checked, report.failures, report.tuples_skipped
    )
    return report


def global_candidate_triples(support: Iterable[int]) -> List[Tuple[int, int, int]]:
    """Every sorted triple at which a finitely supported operator can fail.

    A nonzero left side needs all three indices in the support; a nonzero
    right side needs two of them, ``p`` and ``q``, and the output index
    ``s`` in the support, which fixes the third as ``1 + s - p - q``.
    """
    points = sorted(set(support))
    candidates = set()
    for triple in product(points, repeat=3):
        if len(set(triple)) == 3:
            candidates.add(tuple(sorted(triple)))
    for p, q in permutations(points, 2):
        for s in points:
            triple = (p, q, 1 + s - p - q)
            if len(set(triple)) == 3:
                candidates.add(tuple(sorted(triple)))
    return sorted(candidates)


def check_rb_global_finite(
        operator: HomogeneousOperator,
        *,
        max_counterexamples: Optional[int] = DEFAULT_MAX_COUNTEREXAMPLES
) -> Report:
    """Decide the weight-zero criterion on all of ``Z^3`` for finite support.

    Args:
        operator (HomogeneousOperator): An operator with finite support.
        max_counterexamples (Optional[int], optional): The counterexample
            cap. Defaults to 32.

    Raises:
        InvalidParameter: If the operator does not have finite support.

    Returns:
        Report: The outcome; passing means the operator is Rota-Baxter.
    """
    table = operator.finite_table()
    if table is None:
        raise InvalidParameter(
            f'{operator.to_spec()} does not have finite support'
        )

    def f(m: int) -> Scalar:
        return table.get(m, ZERO)

    builder = ReportBuilder('rota-baxter-global', max_counterexamples)
    for l, m, n in global_candidate_triples(table):
        det = det_d(l, m, n)
        if not det:
            builder.count()
            continue
        x, y, z = f(l), f(m), f(n)
        lhs = x * y * z * det
        rhs = (x * y + x * z + y * z) * f(l + m + n - 1) * det
        builder.compare((l, m, n), lhs, rhs)
    report = builder.build()
    LOGGER.debug(
        'Global decision for support %s: %d candidate triples, %d failures',
        sorted(table), report.tuples_checked, report.failures
    )
    return report


def scale(operator: HomogeneousOperator, factor: Union[Number, str]) -> HomogeneousOperator:
    """The operator ``c R``.

    Args:
        operator (HomogeneousOperator): The operator.
        factor (Union[Number, str]): The nonzero scalar ``c``.

    Raises:
        ZeroScalar: If ``c`` is zero.

    Returns:
        HomogeneousOperator: A ``FiniteSupport`` when the support is finite,
            otherwise a ``ScaledOperator``.
    """
    c = _parameter(factor, 'scale factor')
    if c == 0:
        raise ZeroScalar('Cannot scale an operator by zero')
    table = operator.finite_table()
    if table is not None:
        return FiniteSupport({m: value * c for m, value in table.items()})
    if c == 1:
        return operator
    if isinstance(operator, ScaledOperator):
        return scale(operator.base, operator.factor * c)
    return ScaledOperator(operator, c)


class InverseOnWindow:
    """The diagonal of ``R^-1``: ``m -> 1/f(m)``.

    Verified nonzero on the window it was built for; points outside it are
    inverted on demand.
    """

    def __init__(self, operator: HomogeneousOperator, window: Window) -> None:
        self.operator = operator
        self.window = window

    def __call__(self, m: int) -> Scalar:
        value = self.operator.f(m)
        if not value:
            raise NotInvertibleOnWindow([m])
        return 1 / value


def inverse_on_window(operator: HomogeneousOperator, window: Window) -> InverseOnWindow:
    """The inverse diagonal of an operator that is nonzero on a window.

    Args:
        operator (HomogeneousOperator): The operator.
        window (Window): The window.

    Raises:
        NotInvertibleOnWindow: Lists the indices of the window where ``f``
            vanishes.

    Returns:
        InverseOnWindow: The map ``m -> 1/f(m)``.
    """
    zeros = [m for m in window if not operator.f(m)]
    if zeros:
        raise NotInvertibleOnWindow(zeros)
    return InverseOnWindow(operator, window)


IdentityCheck = Callable[[HomogeneousOperator, Lookup, Window, ReportBuilder], None]


def _reciprocals(operator: HomogeneousOperator, lookup: Lookup) -> Reciprocals:
    supporter: Supporter = getattr(operator, 'supporter')
    return Reciprocals(lookup, supporter.m0, supporter.s0)


_EVEN_SUPPORTER_IDENTITIES: Dict[str, IdentityCheck] = {
    'odd-odd-even': lambda R, f, w, b: relations.odd_odd_even(f, w, b, eager=True),
    'odd-even-even': lambda R, f, w, b: relations.odd_even_even(f, w, b, eager=True),
    'antisymmetry': lambda R, f, w, b: relations.antisymmetry(f, w, b),
    'pinned-endpoint': lambda R, f, w, b: relations.pinned_endpoint(
        f, w, b, R.f(0), eager=True),
    'mirror-reciprocal': lambda R, f, w, b: _reciprocals(R, f).mirror(w, b),
    'shift-reciprocal': lambda R, f, w, b: _reciprocals(R, f).shift(w, b),
    'reciprocal-exchange': lambda R, f, w, b: _reciprocals(R, f).exchange(w, b),
    'not-half': lambda R, f, w, b: _reciprocals(R, f).not_half([1], b),
    'nonvanishing-propagation': lambda R, f, w, b: relations.nonvanishing_propagation(f, w, b),
    'mirror-support': lambda R, f, w, b: relations.mirror_support(f, w, b),
}

_SHIFTED_SUPPORTER_IDENTITIES: Dict[str, IdentityCheck] = {
    'odd-odd-even': lambda R, f, w, b: relations.odd_odd_even(f, w, b, eager=True),
    'odd-even-even': lambda R, f, w, b: relations.odd_even_even(f, w, b, eager=True),
    'antisymmetry': lambda R, f, w, b: relations.antisymmetry(f, w, b),
    'support-pairing': lambda R, f, w, b: relations.support_pairing(f, w, b),
    'vanishing-products': lambda R, f, w, b: relations.vanishing_products(f, w, b),
    'vanishing-propagation': lambda R, f, w, b: relations.vanishing_propagation(f, w, b),
    'three-term-reciprocal': lambda R, f, w, b: _reciprocals(R, f).three_term(w, b),
    'mirror-reciprocal': lambda R, f, w, b: _reciprocals(R, f).mirror(w, b),
    'not-half': lambda R, f, w, b: _reciprocals(R, f).not_half(list(w), b),
}


def identity_names(operator: HomogeneousOperator) -> Tuple[str, ...]:
    """The names of the identities that apply to an operator"""
    return tuple(_identity_catalogue(operator))


def _identity_catalogue(operator: HomogeneousOperator) -> Dict[str, IdentityCheck]:
    if isinstance(operator, FamilyR02):
        return _EVEN_SUPPORTER_IDENTITIES
    if isinstance(operator, FamilyR03):
        return _SHIFTED_SUPPORTER_IDENTITIES
    raise InvalidParameter(
        f'Derived identities apply to the r02 and r03 families, not {operator.to_spec()}'
    )


def identity_reports(
        operator: HomogeneousOperator,
        window: Window,
        *,
        identities: Optional[Sequence[str]] = None,
        skip_degenerate: bool = True,
        max_counterexamples: Optional[int] = DEFAULT_MAX_COUNTEREXAMPLES
) -> Dict[str, Report]:
    """Check each derived identity separately.

    Args:
        operator (HomogeneousOperator): A ``FamilyR02`` or ``FamilyR03``.
        window (Window): The window for the identity variables.
        identities (Optional[Sequence[str]], optional): The identities to
            check, all applicable ones when None. Defaults to None.
        skip_degenerate (bool, optional): If True instances touching a
            degenerate parameter are skipped. Defaults to True.
        max_counterexamples (Optional[int], optional): The counterexample
            cap per identity. Defaults to 32.

    Raises:
        InvalidParameter: For other operators or unknown identity names.
        DegenerateParameter: When ``skip_degenerate`` is False and an
            instance touches a degenerate parameter.

    Returns:
        Dict[str, Report]: The report of each identity.
    """
    catalogue = _identity_catalogue(operator)
    names = list(catalogue) if identities is None else list(identities)
    unknown = [name for name in names if name not in catalogue]
    if unknown:
        raise InvalidParameter(
            f'Unknown identities {unknown} for {operator.family}; '
            f'expected some of {sorted(catalogue)}'
        )

    @lru_cache(maxsize=None)
    def lookup(m: int) -> Optional[Scalar]:
        try:
            return operator.f(m)
        except DegenerateParameter:
            if skip_degenerate:
                return None
            raise

    reports: Dict[str, Report] = {}
    for name in names:
        builder = ReportBuilder(name, max_counterexamples)
        catalogue[name](operator, lookup, window, builder)
        reports[name] = builder.build()
        LOGGER.debug(
            'Identity %s on %s: %d instances, %d failures, %d skipped',
            name, window, reports[name].tuples_checked,
            reports[name].failures, reports[name].tuples_skipped
        )
    return reports


def identity_suite(
        operator: HomogeneousOperator,
        window: Window,
        *,
        identities: Optional[Sequence[str]] = None,
        skip_degenerate: bool = True,
        max_counterexamples: Optional[int] = DEFAULT_MAX_COUNTEREXAMPLES
) -> Report:
    """Check the derived identities of the r02 and r03 families.

    Counterexamples carry the name of the failing identity.
    """
    reports = identity_reports(
        operator,
        window,
        identities=identities,
        skip_degenerate=skip_degenerate,
        max_counterexamples=max_counterexamples
    )
    return merge_reports(list(reports.values()), max_counterexamples, 'identity-suite')

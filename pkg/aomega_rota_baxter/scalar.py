"""
Exact scalars.

A scalar is either a rational number (``fractions.Fraction``) or a
rational function in the single parameter ``a`` with rational coefficients
(``RatFun``). Polynomials are held dense, highest degree first, as tuples of
``QQ`` domain elements and are manipulated with the dense univariate routines
of ``sympy.polys``.
"""

from fractions import Fraction
import logging
import re
from typing import Any, Iterable, List, Sequence, Tuple, Union

from sympy.polys.densearith import (
    dup_add,
    dup_mul,
    dup_mul_ground,
    dup_neg,
    dup_quo_ground,
    dup_sub
)
from sympy.polys.densebasic import dup_LC, dup_strip
from sympy.polys.densetools import dup_eval, dup_monic
from sympy.polys.domains import QQ
from sympy.polys.euclidtools import dup_inner_gcd

LOGGER = logging.getLogger(__name__)

Dense = Tuple[Any, ...]

_RATIONAL_PATTERN = re.compile(r'^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$')
SYMBOLIC_TOKEN = 'sym'


class ScalarError(Exception):
    """Base class for scalar errors"""


class DivisionByZero(ScalarError, ZeroDivisionError):
    """Raised when dividing by a zero scalar"""


class PoleAtPoint(ScalarError):
    """Raised when a rational function is evaluated at a root of its denominator"""


class ZeroDenominator(ScalarError):
    """Raised when a rational function is built with a zero denominator"""


class ScalarParseError(ScalarError, ValueError):
    """Raised when a scalar cannot be parsed"""


def _to_qq(value: Any) -> Any:
    if isinstance(value, Fraction):
        return QQ(value.numerator, value.denominator)
    if isinstance(value, int):
        return QQ(value)
    return value


def _from_qq(value: Any) -> Fraction:
    return Fraction(int(value.numerator), int(value.denominator))


def _strip(coefficients: Iterable[Any]) -> List[Any]:
    return dup_strip([_to_qq(c) for c in coefficients])


def _is_constant(poly: Sequence[Any]) -> bool:
    return len(poly) <= 1


_ONE: Dense = (QQ.one,)


class RatFun:
    """A rational function in ``a`` held in canonical form.

    The numerator and denominator are coprime, the denominator is monic and
    zero is ``0/1``. Instances are immutable; equality compares canonical
    forms.
    """

    __slots__ = ('_num', '_den')

    def __init__(self, num: Dense, den: Dense) -> None:
        # Callers must pass canonical tuples; use ratfun_normalize otherwise.
        self._num = num
        self._den = den

    @classmethod
    def lift(cls, value: Union[int, Fraction, 'RatFun']) -> 'RatFun':
        """Lift a rational to a constant rational function.

        Args:
            value (Union[int, Fraction, RatFun]): The value to lift.

        Returns:
            RatFun: The constant rational function.
        """
        if isinstance(value, RatFun):
            return value
        if value == 0:
            return cls((), _ONE)
        return cls((_to_qq(value),), _ONE)

    @classmethod
    def variable(cls) -> 'RatFun':
        """The parameter ``a`` itself"""
        return cls((QQ.one, QQ.zero), _ONE)

    @classmethod
    def _from_dense(cls, num: List[Any], den: List[Any]) -> 'RatFun':
        if not den:
            raise ZeroDenominator('The denominator is the zero polynomial')
        if not num:
            return cls((), _ONE)
        if not (_is_constant(num) or _is_constant(den)):
            _, num, den = dup_inner_gcd(num, den, QQ)
        lc = dup_LC(den, QQ)
        if lc != QQ.one:
            num = dup_quo_ground(num, lc, QQ)
            den = dup_monic(den, QQ)
        return cls(tuple(num), tuple(den))

    @property
    def numerator(self) -> Tuple[Fraction, ...]:
        """The numerator coefficients, highest degree first"""
        return tuple(_from_qq(c) for c in self._num)

    @property
    def denominator(self) -> Tuple[Fraction, ...]:
        """The denominator coefficients, highest degree first"""
        return tuple(_from_qq(c) for c in self._den)

    @property
    def degree(self) -> Tuple[int, int]:
        """The degrees of the numerator and denominator (zero has degree -1)"""
        return len(self._num) - 1, len(self._den) - 1

    def is_constant(self) -> bool:
        """True if the function does not depend on ``a``"""
        return _is_constant(self._num) and len(self._den) == 1

    def constant_value(self) -> Fraction:
        """The value of a constant function.

        Raises:
            ValueError: If the function depends on ``a``.

        Returns:
            Fraction: The constant.
        """
        if not self.is_constant():
            raise ValueError(f'{self} is not constant')
        return _from_qq(self._num[0]) if self._num else Fraction(0)

    def evaluate(self, point: Union[int, Fraction]) -> Fraction:
        """Evaluate at a rational point.

        Args:
            point (Union[int, Fraction]): The value of ``a``.

        Raises:
            PoleAtPoint: If the denominator vanishes at the point.

        Returns:
            Fraction: The exact value.
        """
        at = _to_qq(point)
        den = dup_eval(list(self._den), at, QQ)
        if not den:
            raise PoleAtPoint(f'{self} has a pole at a={point}')
        return _from_qq(dup_eval(list(self._num), at, QQ)) / _from_qq(den)

    def reciprocal(self) -> 'RatFun':
        """The multiplicative inverse.

        Raises:
            DivisionByZero: If the function is zero.

        Returns:
            RatFun: The inverse.
        """
        if not self._num:
            raise DivisionByZero('Cannot invert the zero rational function')
        num, den = list(self._den), list(self._num)
        lc = dup_LC(den, QQ)
        if lc != QQ.one:
            num = dup_quo_ground(num, lc, QQ)
            den = dup_monic(den, QQ)
        return RatFun(tuple(num), tuple(den))

    def __bool__(self) -> bool:
        return bool(self._num)

    def __neg__(self) -> 'RatFun':
        return RatFun(tuple(dup_neg(list(self._num), QQ)), self._den)

    def __pos__(self) -> 'RatFun':
        return self

    def __add__(self, other: Any) -> 'RatFun':
        if isinstance(other, (int, Fraction)):
            other = RatFun.lift(other)
        elif not isinstance(other, RatFun):
            return NotImplemented
        if not other._num:
            return self
        if not self._num:
            return other
        if self._den == other._den:
            num = dup_add(list(self._num), list(other._num), QQ)
            if self._den == _ONE:
                return RatFun(tuple(num), _ONE) if num else RatFun((), _ONE)
            return RatFun._from_dense(num, list(self._den))
        num = dup_add(
            dup_mul(list(self._num), list(other._den), QQ),
            dup_mul(list(other._num), list(self._den), QQ),
            QQ
        )
        den = dup_mul(list(self._den), list(other._den), QQ)
        return RatFun._from_dense(num, den)

    __radd__ = __add__

    def __sub__(self, other: Any) -> 'RatFun':
        if isinstance(other, (int, Fraction)):
            other = RatFun.lift(other)
        elif not isinstance(other, RatFun):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Any) -> 'RatFun':
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        return RatFun.lift(other) + (-self)

    def __mul__(self, other: Any) -> 'RatFun':
        if isinstance(other, (int, Fraction)):
            if other == 0 or not self._num:
                return RatFun((), _ONE)
            return RatFun(
                tuple(dup_mul_ground(list(self._num), _to_qq(other), QQ)),
                self._den
            )
        if not isinstance(other, RatFun):
            return NotImplemented
        if not (self._num and other._num):
            return RatFun((), _ONE)
        # Cross-cancel so the product is already coprime.
        n1, d2 = list(self._num), list(other._den)
        if not (_is_constant(n1) or _is_constant(d2)):
            _, n1, d2 = dup_inner_gcd(n1, d2, QQ)
        n2, d1 = list(other._num), list(self._den)
        if not (_is_constant(n2) or _is_constant(d1)):
            _, n2, d1 = dup_inner_gcd(n2, d1, QQ)
        num = dup_mul(n1, n2, QQ)
        den = dup_mul(d1, d2, QQ)
        lc = dup_LC(den, QQ)
        if lc != QQ.one:
            num = dup_quo_ground(num, lc, QQ)
            den = dup_monic(den, QQ)
        return RatFun(tuple(num), tuple(den))

    __rmul__ = __mul__

    def __truediv__(self, other: Any) -> 'RatFun':
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise DivisionByZero(f'Cannot divide {self} by zero')
            return self * (1 / Fraction(other))
        if not isinstance(other, RatFun):
            return NotImplemented
        return self * other.reciprocal()

    def __rtruediv__(self, other: Any) -> 'RatFun':
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        return RatFun.lift(other) * self.reciprocal()

    def __pow__(self, exponent: int) -> 'RatFun':
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.reciprocal() ** -exponent
        result = RatFun.lift(1)
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other: Any) -> bool:
        if isinstance(other, (int, Fraction)):
            other = RatFun.lift(other)
        elif not isinstance(other, RatFun):
            return NotImplemented
        return self._num == other._num and self._den == other._den

    def __hash__(self) -> int:
        if self.is_constant():
            return hash(self.constant_value())
        return hash((self._num, self._den))

    def __str__(self) -> str:
        return f'({_format_poly(self._num)})/({_format_poly(self._den)})'

    def __repr__(self) -> str:
        return f"RatFun('{self}')"


Scalar = Union[Fraction, RatFun]
Number = Union[int, Fraction, RatFun]

ZERO = Fraction(0)
ONE = Fraction(1)


def _format_poly(poly: Dense) -> str:
    if not poly:
        return '0'
    degree = len(poly) - 1
    text = ''
    for index, coeff in enumerate(poly):
        if not coeff:
            continue
        power = degree - index
        value = _from_qq(coeff)
        sign = '-' if value < 0 else '+'
        magnitude = str(abs(value))
        term = f'{magnitude}*a^{power}' if power else magnitude
        if not text:
            text = term if sign == '+' else f'-{term}'
        else:
            text += f'{sign}{term}'
    return text


def ratfun_normalize(
        numerator: Iterable[Union[int, Fraction]],
        denominator: Iterable[Union[int, Fraction]]
) -> RatFun:
    """Build a rational function in canonical form.

    Args:
        numerator (Iterable[Union[int, Fraction]]): Numerator coefficients,
            highest degree first.
        denominator (Iterable[Union[int, Fraction]]): Denominator
            coefficients, highest degree first.

    Raises:
        ZeroDenominator: If the denominator is the zero polynomial.

    Returns:
        RatFun: The coprime, monic-denominator form.
    """
    return RatFun._from_dense(_strip(numerator), _strip(denominator))


def ratfun_eval(value: RatFun, point: Union[int, Fraction]) -> Fraction:
    """Evaluate a rational function at a rational point.

    Args:
        value (RatFun): The rational function.
        point (Union[int, Fraction]): The value substituted for ``a``.

    Raises:
        PoleAtPoint: If the denominator vanishes at the point.

    Returns:
        Fraction: The exact value.
    """
    return value.evaluate(point)


def lift(value: Number) -> RatFun:
    """Lift any scalar to a rational function"""
    return RatFun.lift(value)


def is_symbolic(value: Any) -> bool:
    """True if the value is a rational function"""
    return isinstance(value, RatFun)


def as_scalar(value: Union[Number, str]) -> Scalar:
    """Coerce ints and strings to a scalar.

    Args:
        value (Union[Number, str]): An int, Fraction, RatFun or a string in
            the grammar accepted by ``parse_scalar``.

    Returns:
        Scalar: The scalar.
    """
    if isinstance(value, RatFun):
        return value
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ScalarParseError(f'Not a scalar: {value!r}')
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_scalar(value, allow_symbolic=True)
    raise ScalarParseError(f'Not an exact scalar: {value!r}')


def field_arith(x: Number, y: Number, op: str) -> Scalar:
    """Exact field arithmetic.

    A rational meeting a rational function is lifted explicitly before the
    operation; two rationals stay rational.

    Args:
        x (Number): The left operand.
        y (Number): The right operand.
        op (str): One of 'add', 'sub', 'mul' or 'div'.

    Raises:
        DivisionByZero: When dividing by zero.
        ValueError: For an unknown operation.

    Returns:
        Scalar: The canonical result.
    """
    if isinstance(x, RatFun) or isinstance(y, RatFun):
        left: Any = lift(x)
        right: Any = lift(y)
    else:
        left, right = Fraction(x), Fraction(y)

    if op == 'add':
        return left + right
    if op == 'sub':
        return left - right
    if op == 'mul':
        return left * right
    if op == 'div':
        if right == 0:
            raise DivisionByZero(f'Cannot divide {format_scalar(x)} by zero')
        return left / right
    raise ValueError(f'Unknown operation "{op}"')


def format_scalar(value: Number) -> str:
    """Render a scalar in its canonical string form.

    Rationals render as ``p/q`` (or ``p`` when integral), rational functions
    as ``(<poly>)/(<poly>)`` with ``<c>*a^<k>`` monomials.
    """
    if isinstance(value, RatFun):
        return str(value)
    return str(Fraction(value))


def parse_scalar(text: str, allow_symbolic: bool = False) -> Scalar:
    """Parse an exact scalar.

    Args:
        text (str): An integer, ``p/q``, or ``sym`` for the parameter ``a``.
        allow_symbolic (bool, optional): If True accept ``sym``. Defaults to
            False.

    Raises:
        ScalarParseError: If the text is not an exact rational.

    Returns:
        Scalar: The parsed scalar.
    """
    if text.strip() == SYMBOLIC_TOKEN:
        if not allow_symbolic:
            raise ScalarParseError('A symbolic parameter is not allowed here')
        return RatFun.variable()
    match = _RATIONAL_PATTERN.match(text)
    if match is None:
        raise ScalarParseError(f'Expected an exact rational "p/q", got "{text}"')
    numerator, denominator = match.groups()
    if denominator is not None and int(denominator) == 0:
        raise ScalarParseError(f'Zero denominator in "{text}"')
    return Fraction(int(numerator), int(denominator or 1))


def power(value: Number, exponent: int) -> Number:
    """Raise a scalar to a non-negative integer power (``0**0 == 1``)"""
    result: Number = ONE
    for _ in range(exponent):
        result = result * value
    return result

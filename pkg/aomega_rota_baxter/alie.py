"""
The 3-Lie algebra A_omega.

Basis vectors ``L_m`` are indexed by the integers and the bracket of three
basis vectors is ``[L_l, L_m, L_n] = g(l, m, n) L_{l+m+n-1}`` for a graded
coefficient ``g``; for A_omega itself ``g`` is the determinant ``D``. The
checkers here work for any graded coefficient so induced algebras reuse them.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
import logging
from typing import (
    Any,
    Callable,
    Dict,
    Iterator,
    List,
    Mapping,
    Optional,
    Sequence,
    Tuple,
    Type,
    Union
)

from .scalar import ZERO, Number, format_scalar
from .utils import dumps as default_dumps, parse_window, run_partitioned

LOGGER = logging.getLogger(__name__)

DEFAULT_MAX_COUNTEREXAMPLES = 32

Indices = Tuple[int, ...]
Coefficient = Callable[[int], Number]
SkipErrors = Tuple[Type[Exception], ...]


@dataclass(frozen=True)
class Window:
    """An inclusive range of integer indices"""

    lo: int
    hi: int

    def __post_init__(self) -> None:
        if self.lo > self.hi:
            raise ValueError(f'Window {self.lo}..{self.hi} has lo > hi')

    @classmethod
    def parse(cls, text: str) -> Window:
        """Parse "LO..HI"."""
        lo, hi = parse_window(text)
        return cls(lo, hi)

    @property
    def indices(self) -> range:
        """The indices in order"""
        return range(self.lo, self.hi + 1)

    def __iter__(self) -> Iterator[int]:
        return iter(self.indices)

    def __len__(self) -> int:
        return self.hi - self.lo + 1

    def __contains__(self, index: object) -> bool:
        return isinstance(index, int) and self.lo <= index <= self.hi

    def __str__(self) -> str:
        return f'{self.lo}..{self.hi}'


@dataclass(frozen=True)
class GradedCoeff:
    """A homogeneous trilinear bracket ``[L_l, L_m, L_n] = g(l, m, n) L_{l+m+n-1}``"""

    fn: Callable[[int, int, int], Number]
    label: str = ''

    def __call__(self, l: int, m: int, n: int) -> Number:
        return self.fn(l, m, n)

    @staticmethod
    def out_index(l: int, m: int, n: int) -> int:
        """The index of the bracket of three basis vectors"""
        return l + m + n - 1


@dataclass(frozen=True)
class Counterexample:
    """A tuple where the two sides of a checked identity differ"""

    indices: Indices
    lhs: Union[Number, str]
    rhs: Union[Number, str]
    check: str = ''

    def to_dict(self) -> Dict[str, Any]:
        """The JSON representation"""
        result: Dict[str, Any] = {
            'tuple': list(self.indices),
            'lhs': _render(self.lhs),
            'rhs': _render(self.rhs)
        }
        if self.check:
            result['check'] = self.check
        return result


def _render(value: Union[Number, str]) -> str:
    return value if isinstance(value, str) else format_scalar(value)


def _cap(
        counterexamples: Sequence[Counterexample],
        max_counterexamples: Optional[int]
) -> Tuple[Counterexample, ...]:
    if max_counterexamples is None:
        return tuple(counterexamples)
    return tuple(counterexamples[:max_counterexamples])


@dataclass(frozen=True)
class Report:
    """The outcome of an exhaustive check.

    ``tuples_checked`` counts every tuple enumerated, including the ones
    skipped because evaluating them touched a degenerate parameter (those
    are also counted in ``tuples_skipped``). ``failures`` is the uncapped
    number of failing tuples.
    """

    tuples_checked: int = 0
    failures: int = 0
    counterexamples: Tuple[Counterexample, ...] = ()
    tuples_skipped: int = 0
    label: str = ''

    @property
    def passed(self) -> bool:
        """True when no tuple failed"""
        return self.failures == 0

    def merge(
            self,
            other: Report,
            max_counterexamples: Optional[int] = DEFAULT_MAX_COUNTEREXAMPLES
    ) -> Report:
        """Combine two reports; merging is associative"""
        return Report(
            tuples_checked=self.tuples_checked + other.tuples_checked,
            failures=self.failures + other.failures,
            counterexamples=_cap(
                self.counterexamples + other.counterexamples,
                max_counterexamples
            ),
            tuples_skipped=self.tuples_skipped + other.tuples_skipped,
            label=self.label or other.label
        )

    def with_label(self, label: str) -> Report:
        """A copy of the report with a new label"""
        return Report(
            self.tuples_checked,
            self.failures,
            self.counterexamples,
            self.tuples_skipped,
            label
        )

    def to_dict(self) -> Dict[str, Any]:
        """The JSON representation"""
        result: Dict[str, Any] = {
            'passed': self.passed,
            'tuples_checked': self.tuples_checked,
            'tuples_skipped': self.tuples_skipped,
            'failures': self.failures,
            'counterexamples': [item.to_dict() for item in self.counterexamples]
        }
        if self.label:
            result['check'] = self.label
        return result

    def to_json(self, dumps: Callable[[Any], str] = default_dumps) -> str:
        """Serialize the report"""
        return dumps(self.to_dict())


def merge_reports(
        reports: Sequence[Report],
        max_counterexamples: Optional[int] = DEFAULT_MAX_COUNTEREXAMPLES,
        label: str = ''
) -> Report:
    """Merge reports in order"""
    merged = Report(label=label)
    for report in reports:
        merged = merged.merge(report, max_counterexamples)
    return merged.with_label(label) if label else merged


class ReportBuilder:
    """Accumulates the outcome of a check"""

    def __init__(
            self,
            label: str = '',
            max_counterexamples: Optional[int] = DEFAULT_MAX_COUNTEREXAMPLES
    ) -> None:
        if max_counterexamples is not None and max_counterexamples < 1:
            raise ValueError('max_counterexamples must be positive or None')
        self.label = label
        self.max_counterexamples = max_counterexamples
        self.tuples_checked = 0
        self.tuples_skipped = 0
        self.failures = 0
        self.counterexamples: List[Counterexample] = []

    def count(self, tuples: int = 1) -> None:
        """Count enumerated tuples"""
        self.tuples_checked += tuples

    def skip(self, tuples: int = 1) -> None:
        """Count tuples that were enumerated but could not be evaluated"""
        self.tuples_checked += tuples
        self.tuples_skipped += tuples

    def record(
            self,
            indices: Indices,
            lhs: Union[Number, str],
            rhs: Union[Number, str],
            check: str = ''
    ) -> None:
        """Record a failing tuple that has already been counted"""
        self.failures += 1
        if (
                self.max_counterexamples is None or
                len(self.counterexamples) < self.max_counterexamples
        ):
            self.counterexamples.append(
                Counterexample(indices, lhs, rhs, check)
            )

    def compare(
            self,
            indices: Indices,
            lhs: Number,
            rhs: Number,
            check: str = ''
    ) -> bool:
        """Count a tuple and record it if the sides differ"""
        self.count()
        if lhs == rhs:
            return True
        self.record(indices, lhs, rhs, check)
        return False

    def build(self) -> Report:
        """The immutable report"""
        return Report(
            tuples_checked=self.tuples_checked,
            failures=self.failures,
            counterexamples=tuple(self.counterexamples),
            tuples_skipped=self.tuples_skipped,
            label=self.label
        )


def _sign(index: int) -> int:
    return -1 if index % 2 else 1


def _det(l: int, m: int, n: int) -> int:
    # Cofactor expansion along the parity row.
    return _sign(l) * (n - m) - _sign(m) * (n - l) + _sign(n) * (m - l)


def det_d(l: int, m: int, n: int) -> int:
    """The determinant with rows ((-1)^l, (-1)^m, (-1)^n), (1, 1, 1), (l, m, n).

    Args:
        l (int): The first index.
        m (int): The second index.
        n (int): The third index.

    Returns:
        int: The exact value.
    """
    return _det(l, m, n)


def d_zero_predicate(l: int, m: int, n: int) -> bool:
    """True iff two indices coincide or all three share a parity"""
    if (l - m) * (l - n) * (m - n) == 0:
        return True
    return l % 2 == m % 2 == n % 2


A_OMEGA = GradedCoeff(_det, 'D')
ZERO_BRACKET = GradedCoeff(lambda l, m, n: 0, 'zero')


class Element:
    """A finitely supported vector ``sum c_m L_m``"""

    __slots__ = ('_coefficients',)

    def __init__(self, coefficients: Optional[Mapping[int, Number]] = None) -> None:
        self._coefficients: Dict[int, Number] = {
            index: value
            for index, value in (coefficients or {}).items()
            if value
        }

    @classmethod
    def basis(cls, index: int, coefficient: Number = 1) -> Element:
        """The vector ``c L_m``"""
        return cls({index: coefficient})

    @property
    def support(self) -> Tuple[int, ...]:
        """The indices with nonzero coefficients, in order"""
        return tuple(sorted(self._coefficients))

    def coefficient(self, index: int) -> Number:
        """The coefficient of ``L_index``"""
        return self._coefficients.get(index, ZERO)

    def items(self) -> List[Tuple[int, Number]]:
        """The nonzero coefficients in index order"""
        return [(index, self._coefficients[index]) for index in self.support]

    def scaled(self, factor: Number) -> Element:
        """The vector multiplied by a scalar"""
        return Element({
            index: value * factor
            for index, value in self._coefficients.items()
        })

    def map_diagonal(self, coefficient: Coefficient) -> Element:
        """Apply the diagonal map ``L_m -> f(m) L_m``"""
        return Element({
            index: value * coefficient(index)
            for index, value in self._coefficients.items()
        })

    def __add__(self, other: Element) -> Element:
        result = dict(self._coefficients)
        for index, value in other._coefficients.items():
            result[index] = result.get(index, ZERO) + value
        return Element(result)

    def __neg__(self) -> Element:
        return self.scaled(-1)

    def __sub__(self, other: Element) -> Element:
        return self + (-other)

    def __bool__(self) -> bool:
        return bool(self._coefficients)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Element):
            return NotImplemented
        return self.items() == other.items()

    def __repr__(self) -> str:
        terms = ', '.join(
            f'{index}: {format_scalar(value)}' for index, value in self.items()
        )
        return f'Element({{{terms}}})'


def bracket(x: Element, y: Element, z: Element, g: GradedCoeff = A_OMEGA) -> Element:
    """The trilinear extension of a homogeneous bracket.

    Args:
        x (Element): The first argument.
        y (Element): The second argument.
        z (Element): The third argument.
        g (GradedCoeff, optional): The structure constants. Defaults to
            A_OMEGA.

    Returns:
        Element: The bracket.
    """
    result: Dict[int, Number] = {}
    for l, cl in x.items():
        for m, cm in y.items():
            for n, cn in z.items():
                value = g(l, m, n)
                if not value:
                    continue
                out = l + m + n - 1
                result[out] = result.get(out, ZERO) + value * cl * cm * cn
    return Element(result)


def _memoize(fn: Callable[..., Number]) -> Callable[..., Number]:
    return lru_cache(maxsize=None)(fn)


def _triples(
        firsts: Sequence[int],
        window: Window,
        strict: bool
) -> Iterator[Tuple[Indices, bool]]:
    """Ordered triples with first index in ``firsts``; flags repeated indices"""
    for l in firsts:
        for m in window:
            for n in window:
                repeated = not strict and (l == m or l == n or m == n)
                yield (l, m, n), repeated


def _fundamental_sides(
        g: Callable[[int, int, int], Number],
        x1: int, x2: int, x3: int, y2: int, y3: int
) -> Tuple[Number, Number]:
    # Every constant is evaluated so a degenerate one is seen even beside a zero.
    lhs: Number = g(x1, x2, x3) * g(x1 + x2 + x3 - 1, y2, y3)
    rhs: Number = (
        g(x1, y2, y3) * g(x1 + y2 + y3 - 1, x2, x3) +
        g(x2, y2, y3) * g(x1, x2 + y2 + y3 - 1, x3) +
        g(x3, y2, y3) * g(x1, x2, x3 + y2 + y3 - 1)
    )
    return lhs, rhs


def check_fundamental_identity(
        g: GradedCoeff,
        window: Window,
        *,
        strict: bool = False,
        max_counterexamples: Optional[int] = DEFAULT_MAX_COUNTEREXAMPLES,
        workers: int = 1,
        skip_errors: SkipErrors = ()
) -> Report:
    """Check the fundamental identity on basis 5-tuples.

    ``[[x1, x2, x3], y2, y3] = [[x1, y2, y3], x2, x3] + [x1, [x2, y2, y3], x3]
    + [x1, x2, [x3, y2, y3]]``. Both sides are multiples of one basis vector
    so each tuple is a single scalar equality.

    Args:
        g (GradedCoeff): The structure constants.
        window (Window): The index window.
        strict (bool, optional): If True enumerate every 5-tuple, otherwise
            only ``x1 < x2 < x3`` and ``y2 < y3``, which covers the same
            identities for an alternating bracket. Defaults to False.
        max_counterexamples (Optional[int], optional): The counterexample
            cap, None for no cap. Defaults to 32.
        workers (int, optional): The number of concurrent workers. Defaults
            to 1.
        skip_errors (Tuple[Type[Exception], ...], optional): Errors which
            mark a tuple as skipped rather than aborting. Defaults to ().

    Returns:
        Report: The outcome.
    """
    coeff = _memoize(g)
    indices = list(window)

    if strict:
        xs = [(x1, x2, x3) for x1 in indices for x2 in indices for x3 in indices]
        ys = [(y2, y3) for y2 in indices for y3 in indices]
    else:
        xs = list(combinations(indices, 3))
        ys = list(combinations(indices, 2))

    def task(chunk: Sequence[Tuple[int, int, int]]) -> Report:
        builder = ReportBuilder('fundamental-identity', max_counterexamples)
        for x1, x2, x3 in chunk:
            for y2, y3 in ys:
                try:
                    lhs, rhs = _fundamental_sides(coeff, x1, x2, x3, y2, y3)
                except skip_errors:
                    builder.skip()
                    continue
                builder.compare((x1, x2, x3, y2, y3), lhs, rhs)
        return builder.build()

    report = merge_reports(
        run_partitioned(task, xs, workers),
        max_counterexamples,
        'fundamental-identity'
    )
    LOGGER.debug(
        'Fundamental identity of %s on %s: %d tuples, %d failures',
        g.label or 'g', window, report.tuples_checked, report.failures
    )
    return report


def _symmetric(a: Number, b: Number, c: Number) -> Tuple[Number, Number, Number]:
    return a + b + c, a * b + a * c + b * c, a * b * c


def check_derivation(
        dcoef: Coefficient,
        g: GradedCoeff,
        weight: Number,
        window: Window,
        *,
        strict: bool = False,
        max_counterexamples: Optional[int] = DEFAULT_MAX_COUNTEREXAMPLES,
        workers: int = 1,
        skip_errors: SkipErrors = ()
) -> Report:
    """Check that a diagonal map is a derivation of the given weight.

    On basis triples the identity reads ``d(l+m+n-1) g = (s1 + w s2 + w^2 s3) g``
    with ``s_i`` the elementary symmetric functions of ``d(l), d(m), d(n)``.

    Args:
        dcoef (Callable[[int], Scalar]): The diagonal of the map.
        g (GradedCoeff): The structure constants.
        weight (Scalar): The weight.
        window (Window): The index window.
        strict (bool, optional): If True do not skip repeated indices.
            Defaults to False.
        max_counterexamples (Optional[int], optional): The counterexample
            cap. Defaults to 32.
        workers (int, optional): The number of workers. Defaults to 1.
        skip_errors (Tuple[Type[Exception], ...], optional): Errors that
            mark a tuple skipped. Defaults to ().

    Returns:
        Report: The outcome.
    """
    d = _memoize(dcoef)

    def task(firsts: Sequence[int]) -> Report:
        builder = ReportBuilder('derivation', max_counterexamples)
        for (l, m, n), repeated in _triples(firsts, window, strict):
            if repeated:
                builder.count()
                continue
            try:
                value = g(l, m, n)
                if not value:
                    builder.count()
                    continue
                s1, s2, s3 = _symmetric(d(l), d(m), d(n))
                factor = s1 if not weight else s1 + weight * s2 + weight * weight * s3
                lhs = d(l + m + n - 1) * value
                rhs = factor * value
            except skip_errors:
                builder.skip()
                continue
            builder.compare((l, m, n), lhs, rhs)
        return builder.build()

    report = merge_reports(
        run_partitioned(task, list(window), workers),
        max_counterexamples,
        'derivation'
    )
    LOGGER.debug(
        'Derivation check on %s: %d tuples, %d failures',
        window, report.tuples_checked, report.failures
    )
    return report


def check_rota_baxter(
        fcoef: Coefficient,
        g: GradedCoeff,
        weight: Number,
        window: Window,
        *,
        strict: bool = False,
        max_counterexamples: Optional[int] = DEFAULT_MAX_COUNTEREXAMPLES,
        workers: int = 1,
        skip_errors: SkipErrors = ()
) -> Report:
    """Check that a diagonal map is a Rota-Baxter operator of the given weight.

    On basis triples the identity reads
    ``s3 g = (s2 + w s1 + w^2) f(l+m+n-1) g``. Triples where ``g`` vanishes
    pass without evaluating ``f``. Elsewhere ``f`` is evaluated at all four
    indices, the output included even when its factor vanishes, so a
    degenerate output raises or is skipped.

    Args:
        fcoef (Callable[[int], Scalar]): The diagonal of the operator.
        g (GradedCoeff): The structure constants.
        weight (Scalar): The weight.
        window (Window): The index window.
        strict (bool, optional): If True do not skip repeated indices.
            Defaults to False.
        max_counterexamples (Optional[int], optional): The counterexample
            cap. Defaults to 32.
        workers (int, optional): The number of workers. Defaults to 1.
        skip_errors (Tuple[Type[Exception], ...], optional): Errors that
            mark a tuple skipped. Defaults to ().

    Returns:
        Report: The outcome.
    """
    f = _memoize(fcoef)

    def task(firsts: Sequence[int]) -> Report:
        builder = ReportBuilder('rota-baxter', max_counterexamples)
        for (l, m, n), repeated in _triples(firsts, window, strict):
            if repeated:
                builder.count()
                continue
            try:
                value = g(l, m, n)
                if not value:
                    builder.count()
                    continue
                s1, s2, s3 = _symmetric(f(l), f(m), f(n))
                factor = s2 if not weight else s2 + weight * s1 + weight * weight
                lhs = s3 * value
                rhs = factor * f(l + m + n - 1) * value
            except skip_errors:
                builder.skip()
                continue
            builder.compare((l, m, n), lhs, rhs)
        return builder.build()

    report = merge_reports(
        run_partitioned(task, list(window), workers),
        max_counterexamples,
        'rota-baxter'
    )
    LOGGER.debug(
        'Rota-Baxter check (weight %s) on %s: %d tuples, %d failures',
        format_scalar(weight), window, report.tuples_checked, report.failures
    )
    return report

"""
Classification of homogeneous weight-zero Rota-Baxter operators.

Exhaustive search over finite support candidates, necessary condition
pruning, and a recognizer that maps a verified operator to its family.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
import logging
from math import comb
from typing import (
    Any,
    Dict,
    Iterator,
    List,
    Mapping,
    Optional,
    Sequence,
    Set,
    Tuple,
    Union
)

from .alie import Report, ReportBuilder, Window
from . import relations
from .operators import (
    DegenerateParameter,
    FamilyR01,
    FamilyR02,
    FamilyR03,
    FamilyR04,
    FamilyR05,
    FiniteSupport,
    HomogeneousOperator,
    InvalidParameter,
    check_rb_global_finite
)
from .scalar import ONE, ZERO, Number, Scalar, as_scalar, format_scalar, parse_scalar
from .utils import run_partitioned, sorted_items

LOGGER = logging.getLogger(__name__)

DEFAULT_BUDGET = 1_000_000

LABELS = ('r01', 'r02', 'r03', 'r04', 'r05', 'endpoint', 'zero', 'none')

PinnedValues = Union[Mapping[int, Number], Sequence[Tuple[int, Number]]]


class ClassifyError(Exception):
    """Base class for classification errors"""


class SearchSpaceTooLarge(ClassifyError):
    """Raised when a search would enumerate more candidates than its budget"""

    def __init__(self, count: int, budget: int) -> None:
        super().__init__(
            f'The search has {count} candidates, more than the budget of {budget}'
        )
        self.count = count
        self.budget = budget


class NoMatch(ClassifyError):
    """Raised by ``FamilyMatch.require`` when no family matched"""


@dataclass(frozen=True)
class SearchSpec:
    """An exhaustive search over finite support assignments.

    ``max_support_size`` bounds the number of nonzero values at the unpinned
    indices of ``index_range``; pinned values (which may be zero) are fixed.
    """

    index_range: Window
    max_support_size: int
    value_set: Tuple[Scalar, ...]
    pinned: PinnedValues = ()
    min_support_size: int = 0
    budget: int = DEFAULT_BUDGET
    prune: bool = True

    def __post_init__(self) -> None:
        values: List[Scalar] = []
        for value in self.value_set:
            scalar = as_scalar(value)
            if scalar == 0:
                raise ValueError('The value set must not contain zero')
            if scalar not in values:
                values.append(scalar)
        object.__setattr__(self, 'value_set', tuple(values))
        pinned = self.pinned.items() if isinstance(self.pinned, Mapping) else self.pinned
        object.__setattr__(
            self,
            'pinned',
            tuple(sorted((int(m), as_scalar(v)) for m, v in pinned))
        )
        if self.max_support_size < 0 or self.min_support_size < 0:
            raise ValueError('Support sizes must be non-negative')
        if self.min_support_size > self.max_support_size:
            raise ValueError('min_support_size exceeds max_support_size')

    @property
    def pinned_values(self) -> Dict[int, Scalar]:
        """The pinned values as a mapping"""
        return dict(self.pinned)

    @property
    def free_indices(self) -> List[int]:
        """The unpinned indices of the range"""
        pinned = self.pinned_values
        return [m for m in self.index_range if m not in pinned]

    def candidate_count(self) -> int:
        """The number of complete assignments the search could visit"""
        free = len(self.free_indices)
        return sum(
            comb(free, size) * len(self.value_set) ** size
            for size in range(self.min_support_size, min(self.max_support_size, free) + 1)
        )


class PartialAssignment(Mapping[int, Scalar]):
    """A candidate ``f`` under construction.

    Explicit values are known, ``unknown`` indices are not yet assigned and
    every other index is known to be zero.
    """

    def __init__(self, values: Mapping[int, Scalar], unknown: Sequence[int]) -> None:
        self._values = dict(values)
        self._unknown: Set[int] = set(unknown)

    def assign(self, index: int, value: Scalar) -> None:
        """Assign a value to an unknown index"""
        self._unknown.discard(index)
        self._values[index] = value

    def unassign(self, index: int) -> None:
        """Make an index unknown again"""
        self._values.pop(index, None)
        self._unknown.add(index)

    def __getitem__(self, index: int) -> Scalar:
        if index in self._values:
            return self._values[index]
        if index in self._unknown:
            raise KeyError(index)
        return ZERO

    def __contains__(self, index: object) -> bool:
        return index in self._values or index not in self._unknown

    def __iter__(self) -> Iterator[int]:
        return iter(self._values)

    def __len__(self) -> int:
        return len(self._values)


@dataclass(frozen=True)
class PruneReport:
    """Necessary conditions a partial assignment already violates"""

    report: Report

    @property
    def violated(self) -> bool:
        """True if some rule instance failed"""
        return not self.report.passed

    @property
    def relations(self) -> Tuple[str, ...]:
        """The names of the violated relations among the recorded counterexamples"""
        return tuple(sorted({item.check for item in self.report.counterexamples}))


def prune_necessary(
        f: Mapping[int, Number],
        window: Window,
        *,
        max_counterexamples: Optional[int] = 32
) -> PruneReport:
    """Report which necessary conditions a partial assignment violates.

    An index is assigned when it is ``in`` the mapping. Every rule instance
    is an identity all homogeneous weight-zero Rota-Baxter operators satisfy,
    evaluated only on assigned indices, so a true solution is never pruned.
    Rules conditional on ``f(0) = -f(1) != 0`` or ``f(0) = f(1) = 0`` run only
    when both endpoints are assigned and the condition holds.

    Args:
        f (Mapping[int, Number]): The partial assignment.
        window (Window): The range of the rule variables.
        max_counterexamples (Optional[int], optional): The cap on recorded
            violations. Defaults to 32.

    Returns:
        PruneReport: The violations.
    """
    def lookup(m: int) -> Optional[Number]:
        return f[m] if m in f else None

    builder = ReportBuilder('prune', max_counterexamples)
    relations.weight_zero_criterion(lookup, window, builder)
    relations.endpoint_sum(lookup, window, builder)

    f0, f1 = lookup(0), lookup(1)
    if f0 is not None and f1 is not None:
        if f0 and f0 + f1 == 0:
            relations.antisymmetry(lookup, window, builder)
            relations.half_reciprocal(lookup, window, builder, f0)
            relations.pinned_endpoint(lookup, window, builder, f0)
            relations.mirror_support(lookup, window, builder)
            relations.nonvanishing_propagation(lookup, window, builder)
        elif not f0 and not f1:
            relations.vanishing_products(lookup, window, builder)
            relations.vanishing_propagation(lookup, window, builder)

    return PruneReport(builder.build())


def _violates(assignment: PartialAssignment, window: Window) -> bool:
    return prune_necessary(assignment, window, max_counterexamples=1).violated


def _search_pattern(
        spec: SearchSpec,
        pattern: Sequence[int]
) -> Tuple[List[FiniteSupport], int, int]:
    """Solutions with nonzero values exactly at ``pattern``; also node and prune counts"""
    assignment = PartialAssignment(spec.pinned_values, pattern)
    solutions: List[FiniteSupport] = []
    nodes = 0
    pruned = 0

    if spec.prune and _violates(assignment, spec.index_range):
        return solutions, 1, 1

    def descend(position: int) -> None:
        nonlocal nodes, pruned
        nodes += 1
        if position == len(pattern):
            candidate = FiniteSupport({
                m: assignment[m] for m in list(spec.pinned_values) + list(pattern)
            })
            if check_rb_global_finite(candidate, max_counterexamples=1).passed:
                solutions.append(candidate)
            return
        index = pattern[position]
        for value in spec.value_set:
            assignment.assign(index, value)
            if spec.prune and _violates(assignment, spec.index_range):
                pruned += 1
            else:
                descend(position + 1)
            assignment.unassign(index)

    descend(0)
    return solutions, nodes, pruned


def enumerate_rb_finite(spec: SearchSpec, *, workers: int = 1) -> List[FiniteSupport]:
    """Every finite support assignment that is globally Rota-Baxter.

    Args:
        spec (SearchSpec): The search.
        workers (int, optional): Support patterns are searched concurrently
            by this many workers. Defaults to 1.

    Raises:
        SearchSpaceTooLarge: If the candidate count exceeds the budget.

    Returns:
        List[FiniteSupport]: The solutions, ordered by support pattern and
            then by the order of the value set.
    """
    count = spec.candidate_count()
    if count > spec.budget:
        raise SearchSpaceTooLarge(count, spec.budget)

    free = spec.free_indices
    patterns = [
        pattern
        for size in range(spec.min_support_size, min(spec.max_support_size, len(free)) + 1)
        for pattern in combinations(free, size)
    ]
    LOGGER.debug(
        'Searching %d candidates over %d support patterns in %s',
        count, len(patterns), spec.index_range
    )

    def task(chunk: Sequence[Tuple[int, ...]]) -> List[Tuple[List[FiniteSupport], int, int]]:
        return [_search_pattern(spec, pattern) for pattern in chunk]

    solutions: List[FiniteSupport] = []
    nodes = pruned = 0
    for chunk_results in run_partitioned(task, patterns, workers):
        for found, visited, cut in chunk_results:
            solutions.extend(found)
            nodes += visited
            pruned += cut
    LOGGER.debug(
        'Search finished: %d solutions, %d nodes visited, %d pruned',
        len(solutions), nodes, pruned
    )
    return solutions


@dataclass(frozen=True)
class FamilyMatch:
    """The family an operator belongs to.

    ``scale`` is the factor that normalizes the operator: ``scale * R``
    equals the reconstructed family on the evidence.
    """

    label: str
    params: Dict[str, Any] = field(default_factory=dict)
    scale: Scalar = ONE
    evidence: Optional[Window] = None
    notes: str = ''
    skipped: Tuple[int, ...] = ()

    @property
    def matched(self) -> bool:
        """True unless the label is 'none'"""
        return self.label != 'none'

    def family(self) -> Optional[HomogeneousOperator]:
        """Reconstruct the normalized family operator"""
        return _construct(self.label, self.params)

    def require(self) -> FamilyMatch:
        """The match itself.

        Raises:
            NoMatch: If no family matched.
        """
        if not self.matched:
            raise NoMatch(self.notes or 'No family matched')
        return self

    def to_dict(self) -> Dict[str, Any]:
        """The JSON representation"""
        return {
            'label': self.label,
            'params': {
                key: value if isinstance(value, int) else format_scalar(value)
                for key, value in self.params.items()
            },
            'scale': format_scalar(self.scale),
            'evidence': str(self.evidence) if self.evidence else None,
            'notes': self.notes,
            'skipped': list(self.skipped)
        }


def _construct(label: str, params: Mapping[str, Any]) -> Optional[HomogeneousOperator]:
    if label == 'r01':
        return FamilyR01(params['b'])
    if label == 'r02':
        return FamilyR02(params['m0'], params['a'])
    if label == 'r03':
        return FamilyR03(params['m0'], params['s0'], params['a'])
    if label == 'r04':
        return FamilyR04(params['m1'])
    if label == 'r05':
        return FamilyR05(params['m1'], params['b'])
    if label == 'endpoint':
        return FiniteSupport({1: ONE})
    if label == 'zero':
        return FiniteSupport({})
    return None


def _sample(
        operator: HomogeneousOperator,
        points: Sequence[int],
        skip_degenerate: bool
) -> Tuple[Dict[int, Scalar], List[int]]:
    values: Dict[int, Scalar] = {}
    skipped: List[int] = []
    for m in points:
        try:
            values[m] = operator.f(m)
        except DegenerateParameter:
            if not skip_degenerate:
                raise
            skipped.append(m)
    return values, skipped


def _min_gap(points: Sequence[int]) -> Optional[int]:
    ordered = sorted(points)
    gaps = [b - a for a, b in zip(ordered, ordered[1:])]
    return min(gaps) if gaps else None


def _recover_a(
        values: Mapping[int, Scalar],
        scale: Scalar,
        point: Any
) -> Optional[Scalar]:
    """Fit ``1/(scale f) = k a - (k - 1)`` at ``k = 0`` and the nearest other ``k``"""
    for distance in range(1, len(values) + 1):
        for k in (distance, -distance):
            value = values.get(point(k))
            if value:
                inverse = 1 / (value * scale)
                return 1 + (inverse - 1) / k
    return None


def _propose(
        values: Dict[int, Scalar],
        support: List[int]
) -> Tuple[str, Dict[str, Any], Scalar, str]:
    f0 = values.get(0, ZERO)
    f1 = values.get(1, ZERO)
    if not support:
        return 'zero', {}, ONE, ''
    if set(support) <= {0, 1}:
        if f0:
            note = 'f(1) = -f(0), the finite branch of f(0) = -f(1)' if f0 + f1 == 0 else ''
            return 'r01', {'b': f1 / f0}, 1 / f0, note
        return 'endpoint', {}, 1 / f1, 'support {1} is outside the five families'
    if f0 and f0 + f1 == 0:
        evens = [m for m in support if m % 2 == 0]
        gap = _min_gap(evens)
        if gap is None:
            return 'none', {}, ONE, 'a single even support point cannot fix m0'
        m0 = gap // 2
        scale = 1 / f0
        a = _recover_a(values, scale, lambda k: 2 * m0 * k)
        if a is None:
            return 'none', {}, ONE, 'no second support point to fit a'
        return 'r02', {'m0': m0, 'a': a}, scale, ''
    if not f0 and not f1:
        if len(support) == 1:
            m1 = support[0]
            return 'r04', {'m1': m1}, 1 / values[m1], ''
        if len(support) == 2 and sum(support) == 1:
            ones = [m for m in support if values[m] == 1]
            m1 = ones[0] if len(ones) == 1 else max(support)
            scale = 1 / values[m1]
            return 'r05', {'m1': m1, 'b': values[1 - m1] * scale}, scale, ''
        evens = [m for m in support if m % 2 == 0]
        positive = [m for m in evens if m > 0]
        gap = _min_gap(evens)
        if not positive or gap is None:
            return 'none', {}, ONE, 'too few even support points to fit a supporter'
        s0, m0 = min(positive) // 2, gap // 2
        if not 1 <= s0 < m0:
            return 'none', {}, ONE, f'no shifted supporter with s0={s0}, m0={m0}'
        scale = 1 / values[2 * s0]
        a = _recover_a(values, scale, lambda k: 2 * m0 * k + 2 * s0)
        if a is None:
            return 'none', {}, ONE, 'no second support point to fit a'
        return 'r03', {'m0': m0, 's0': s0, 'a': a}, scale, ''
    return 'none', {}, ONE, 'the support pattern matches no family'


def _agrees(
        family: HomogeneousOperator,
        values: Mapping[int, Scalar],
        skipped: Sequence[int],
        scale: Scalar
) -> bool:
    for m, value in values.items():
        try:
            expected = family.f(m)
        except DegenerateParameter:
            return False
        if expected != value * scale:
            return False
    for m in skipped:
        try:
            family.f(m)
        except DegenerateParameter:
            continue
        return False
    return True


def recognize(
        operator: HomogeneousOperator,
        evidence: Window,
        *,
        skip_degenerate: bool = True
) -> FamilyMatch:
    """Identify the family of a verified operator.

    The operator is normalized at its anchor (``f(0)`` for r01 and r02,
    ``f(m1)`` for r04 and r05, ``f(2 s0)`` for r03), the parameters are fitted
    and the reconstructed family is compared with the operator on the
    evidence window, and on the whole support when it is finite.

    Parameters are reported in a canonical form. For r05 ``m1`` is the
    support point whose value is 1 when exactly one is, and the larger
    support point otherwise, so ``FamilyR05(-1, 1)`` is reported as
    ``m1 = 2, b = 1``.

    Args:
        operator (HomogeneousOperator): An operator that passed its
            Rota-Baxter check.
        evidence (Window): The sample window.
        skip_degenerate (bool, optional): If True points where the
            operator hits a degenerate parameter are left out of the
            evidence. Defaults to True.

    Returns:
        FamilyMatch: The match; the label is 'none' when nothing fits.
    """
    table = operator.finite_table()
    points = set(evidence)
    if table is not None:
        points |= set(table)
    values, skipped = _sample(operator, sorted(points), skip_degenerate)
    support = sorted(m for m, value in values.items() if value)

    try:
        label, params, scale, notes = _propose(values, support)
        family = _construct(label, params)
    except (InvalidParameter, ZeroDivisionError) as error:
        label, params, scale, notes, family = 'none', {}, ONE, str(error), None

    if label != 'none' and family is not None:
        if not _agrees(family, values, skipped, scale):
            notes = f'{label} fit {params} disagrees with the evidence'
            label, params, scale = 'none', {}, ONE

    match = FamilyMatch(
        label,
        params,
        scale,
        evidence,
        notes,
        tuple(skipped)
    )
    LOGGER.debug('Recognized %s as %s %s', operator.to_spec(), label, params)
    return match


def classify_finite(
        spec: SearchSpec,
        *,
        workers: int = 1
) -> List[Tuple[FiniteSupport, FamilyMatch]]:
    """Search and label every solution"""
    results: List[Tuple[FiniteSupport, FamilyMatch]] = []
    for solution in enumerate_rb_finite(spec, workers=workers):
        support = solution.support
        lo = min((spec.index_range.lo,) + support)
        hi = max((spec.index_range.hi,) + support)
        results.append((solution, recognize(solution, Window(lo, hi))))
    return results


def solution_to_dict(solution: FiniteSupport, match: FamilyMatch) -> Dict[str, Any]:
    """The JSON representation of a labelled solution"""
    return {
        'support': {
            str(m): format_scalar(value) for m, value in sorted_items(solution.table)
        },
        'match': match.to_dict()
    }


def parse_values(text: str) -> Tuple[Scalar, ...]:
    """Parse a comma separated value set"""
    return tuple(
        parse_scalar(item) for item in text.split(',') if item.strip()
    )


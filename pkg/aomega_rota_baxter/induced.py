"""
The induced 3-Lie algebras ``(A, [ , , ]_R)`` of a Rota-Baxter operator.

For a weight ``w`` operator ``R`` the induced bracket is the sum over the
nonempty subsets ``I`` of the argument positions of
``w^(|I|-1) [R^_I(x1), R^_I(x2), R^_I(x3)]``, where ``R^_I`` leaves the
arguments in ``I`` alone and applies ``R`` to the others. At weight zero
only the two-operator terms survive and the coefficient is
``(f(l) f(m) + f(l) f(n) + f(m) f(n)) D(l, m, n)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations
import logging
from typing import (
    Any,
    Dict,
    List,
    Mapping,
    Optional,
    Sequence,
    Tuple,
    Union
)

from .alie import (
    A_OMEGA,
    DEFAULT_MAX_COUNTEREXAMPLES,
    Element,
    GradedCoeff,
    Report,
    ReportBuilder,
    Window,
    bracket,
    check_fundamental_identity,
    check_rota_baxter,
    d_zero_predicate,
    det_d,
    merge_reports
)
from .closed_forms import FormParameters, closed_forms
from .operators import (
    DegenerateParameter,
    HomogeneousOperator,
    InvalidParameter,
    operator_from_spec
)
from .scalar import ZERO, Number, as_scalar, format_scalar
from .utils import run_partitioned

LOGGER = logging.getLogger(__name__)

Triple = Tuple[int, int, int]


def induced_coeff(
        operator: HomogeneousOperator,
        weight: Number,
        l: int,
        m: int,
        n: int
) -> Number:
    """The structure constant ``g_R(l, m, n)`` of the induced bracket.

    Weight zero uses the two-operator closed form; any other weight expands
    the subset sum.

    Args:
        operator (HomogeneousOperator): The operator ``R``.
        weight (Number): The weight.
        l (int): The first index.
        m (int): The second index.
        n (int): The third index.

    Raises:
        DegenerateParameter: If an entry of ``R`` needs a vanishing
            ``lambda_k``.

    Returns:
        Number: The coefficient of ``L_{l+m+n-1}``.
    """
    if weight:
        return induced_coeff_literal(operator, weight, l, m, n)
    if d_zero_predicate(l, m, n):
        return ZERO
    x, y, z = operator.f(l), operator.f(m), operator.f(n)
    factor = x * y + x * z + y * z
    return factor * det_d(l, m, n) if factor else ZERO


def induced_coeff_literal(
        operator: HomogeneousOperator,
        weight: Number,
        l: int,
        m: int,
        n: int
) -> Number:
    """The induced structure constant by expanding the subset sum on elements"""
    arguments = [Element.basis(index) for index in (l, m, n)]
    images = [operator.apply(argument) for argument in arguments]
    total = Element()
    for size in range(1, 4):
        for subset in combinations(range(3), size):
            x, y, z = (
                arguments[position] if position in subset else images[position]
                for position in range(3)
            )
            term = bracket(x, y, z, A_OMEGA)
            if term and size > 1:
                term = term.scaled(weight ** (size - 1))
            total = total + term
    return total.coefficient(l + m + n - 1)


def induced_coeff_expanded(
        operator: HomogeneousOperator,
        weight: Number,
        l: int,
        m: int,
        n: int
) -> Number:
    """``(s2 + w s1 + w^2) D`` with ``s_i`` the symmetric functions of ``f``"""
    det = det_d(l, m, n)
    if not det:
        return ZERO
    x, y, z = operator.f(l), operator.f(m), operator.f(n)
    s1 = x + y + z
    s2 = x * y + x * z + y * z
    return (s2 + weight * s1 + weight * weight) * det


def induced_graded_coeff(operator: HomogeneousOperator, weight: Number = 0) -> GradedCoeff:
    """The induced bracket as a memoized graded coefficient"""

    @lru_cache(maxsize=None)
    def coeff(l: int, m: int, n: int) -> Number:
        return induced_coeff(operator, weight, l, m, n)

    label = f'induced[{operator.family or "R"}, weight {format_scalar(as_scalar(weight))}]'
    return GradedCoeff(coeff, label)


def _permutation_sign(indices: Sequence[int]) -> int:
    sign = 1
    for i, j in combinations(range(len(indices)), 2):
        if indices[i] > indices[j]:
            sign = -sign
    return sign


class InducedAlgebra:
    """An induced bracket, optionally materialized on a window.

    The table holds the nonzero constants on increasing triples ``l < m < n``;
    other orders follow from alternation.
    """

    def __init__(
            self,
            operator: HomogeneousOperator,
            weight: Number,
            table: Optional[Mapping[Triple, Number]] = None,
            window: Optional[Window] = None
    ) -> None:
        self.operator = operator
        self.weight = weight
        self.coeff = induced_graded_coeff(operator, weight)
        self.table: Dict[Triple, Number] = dict(table or {})
        self.window = window

    def lookup(self, l: int, m: int, n: int) -> Number:
        """The constant at any ordering of a triple.

        Triples with an index outside the materialized window are computed.
        """
        if self.window is None or not all(i in self.window for i in (l, m, n)):
            return self.coeff(l, m, n)
        if len({l, m, n}) < 3:
            return ZERO
        first, second, third = sorted((l, m, n))
        value = self.table.get((first, second, third))
        if value is None:
            return ZERO
        return value if _permutation_sign((l, m, n)) > 0 else -value

    def triples(self) -> List[Tuple[Triple, Number]]:
        """The nonzero constants in order"""
        return sorted(self.table.items())

    def to_dict(self) -> Dict[str, Any]:
        """The JSON representation of the materialized table"""
        return {
            'triples': [
                {
                    'l': l,
                    'm': m,
                    'n': n,
                    'coeff': format_scalar(value),
                    'out_index': GradedCoeff.out_index(l, m, n)
                }
                for (l, m, n), value in self.triples()
            ]
        }


def build_table(
        operator: HomogeneousOperator,
        weight: Number,
        window: Window,
        *,
        workers: int = 1
) -> InducedAlgebra:
    """Materialize the induced bracket on a window.

    Args:
        operator (HomogeneousOperator): The operator.
        weight (Number): The weight.
        window (Window): The window.
        workers (int, optional): The number of workers. Defaults to 1.

    Raises:
        DegenerateParameter: If an entry needs a vanishing ``lambda_k``.

    Returns:
        InducedAlgebra: The algebra with its nonzero constants on the window.
    """
    algebra = InducedAlgebra(operator, weight, window=window)
    indices = list(window)

    def task(firsts: Sequence[int]) -> List[Tuple[Triple, Number]]:
        entries = []
        for l in firsts:
            for m, n in combinations(indices[indices.index(l) + 1:], 2):
                value = algebra.coeff(l, m, n)
                if value:
                    entries.append(((l, m, n), value))
        return entries

    for chunk in run_partitioned(task, indices, workers):
        algebra.table.update(chunk)
    LOGGER.debug(
        'Induced table of %s on %s: %d nonzero constants',
        operator.to_spec(), window, len(algebra.table)
    )
    return algebra


@dataclass(frozen=True)
class InducedVerification:
    """The two checks behind an induced algebra"""

    fundamental: Report
    rota_baxter: Report

    @property
    def passed(self) -> bool:
        """True if both checks passed"""
        return self.fundamental.passed and self.rota_baxter.passed

    @property
    def report(self) -> Report:
        """Both checks as one report"""
        return merge_reports(
            [self.fundamental, self.rota_baxter],
            None,
            'induced-algebra'
        )

    def to_dict(self) -> Dict[str, Any]:
        """The JSON representation"""
        return {
            'fundamental': self.fundamental.passed,
            'rota_baxter': self.rota_baxter.passed
        }


def verify_induced(
        operator: HomogeneousOperator,
        weight: Number,
        window: Window,
        *,
        skip_degenerate: bool = False,
        max_counterexamples: Optional[int] = DEFAULT_MAX_COUNTEREXAMPLES,
        workers: int = 1
) -> InducedVerification:
    """Check that the induced bracket is 3-Lie and ``R`` is Rota-Baxter for it.

    Args:
        operator (HomogeneousOperator): A Rota-Baxter operator of the weight.
        weight (Number): The weight.
        window (Window): The index window.
        skip_degenerate (bool, optional): If True tuples touching a
            degenerate parameter are skipped. Defaults to False.
        max_counterexamples (Optional[int], optional): The counterexample
            cap. Defaults to 32.
        workers (int, optional): The number of workers. Defaults to 1.

    Returns:
        InducedVerification: The fundamental identity of ``g_R`` and the
            Rota-Baxter identity of ``f`` against ``g_R``.
    """
    g = induced_graded_coeff(operator, weight)
    skip_errors = (DegenerateParameter,) if skip_degenerate else ()
    fundamental = check_fundamental_identity(
        g,
        window,
        max_counterexamples=max_counterexamples,
        workers=workers,
        skip_errors=skip_errors
    )
    rota_baxter = check_rota_baxter(
        operator.f,
        g,
        weight,
        window,
        max_counterexamples=max_counterexamples,
        workers=workers,
        skip_errors=skip_errors
    )
    LOGGER.debug(
        'Induced algebra of %s on %s: fundamental %s, rota-baxter %s',
        operator.to_spec(), window, fundamental.passed, rota_baxter.passed
    )
    return InducedVerification(fundamental, rota_baxter)


def crosscheck_closed_forms(
        family: int,
        params: Union[Mapping[str, Any], HomogeneousOperator],
        window: Window,
        *,
        apply_errata: bool = True,
        max_counterexamples: Optional[int] = DEFAULT_MAX_COUNTEREXAMPLES
) -> Report:
    """Compare the closed form structure constants with the induced bracket.

    Every ordered triple of distinct indices in the window is matched
    against the role patterns of the family; a match compares the closed
    form coefficient and output index with ``induced_coeff`` at weight zero.

    Args:
        family (int): The family number, 1 to 5.
        params (Union[Mapping[str, Any], HomogeneousOperator]): The family
            parameters, e.g. ``{"m0": 7, "s0": 2, "a": 2}``, or the operator.
        window (Window): The index window.
        apply_errata (bool, optional): If False use the coefficients as
            tabulated, including the one with the wrong sign. Defaults to True.
        max_counterexamples (Optional[int], optional): The counterexample
            cap. Defaults to 32.

    Raises:
        InvalidParameter: If the family is unknown or the operator does not
            belong to it.

    Returns:
        Report: One tuple per matched instance; instances touching a
            degenerate parameter are skipped.
    """
    if family not in (1, 2, 3, 4, 5):
        raise InvalidParameter(f'Unknown family {family}')
    if isinstance(params, HomogeneousOperator):
        operator = params
    else:
        operator = operator_from_spec({'family': f'r0{family}', **params})
    if operator.family != f'r0{family}':
        raise InvalidParameter(f'{operator.to_spec()} is not in family {family}')

    form_parameters = FormParameters.of(operator)
    builder = ReportBuilder(f'closed-forms-{family}', max_counterexamples)
    for triple in permutations(window, 3):
        for form in closed_forms(family):
            bindings = form.match(form_parameters, triple)
            if bindings is None:
                continue
            try:
                actual = induced_coeff(operator, 0, *triple)
                expected = form.expected(form_parameters, bindings, apply_errata)
            except (DegenerateParameter, ZeroDivisionError):
                builder.skip()
                continue
            out_index = GradedCoeff.out_index(*triple)
            if form.out_index(form_parameters, bindings) != out_index:
                builder.count()
                builder.record(
                    triple,
                    f'L_{out_index}',
                    f'L_{form.out_index(form_parameters, bindings)}',
                    form.name
                )
                continue
            builder.compare(triple, actual, expected, form.name)
    report = builder.build()
    LOGGER.debug(
        'Closed forms of family %d on %s: %d instances, %d disagreements',
        family, window, report.tuples_checked, report.failures
    )
    return report


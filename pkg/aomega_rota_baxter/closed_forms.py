"""
Closed form structure constants of the induced algebras.

Each entry is a pattern of three index roles (``0``, ``1``, a supporter point
with its progression index, an index off the supporter, ...) with the tabulated
formula for the coefficient and the output index. Entries are keyed by the
family number 1 to 5.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, Mapping, Optional, Sequence, Tuple

from .operators import (
    FamilyR01,
    FamilyR02,
    FamilyR05,
    HomogeneousOperator,
    Supporter,
    lambda_k
)
from .alie import det_d
from .scalar import Number, Scalar

Bindings = Dict[str, int]

ZERO_INDEX = 'zero'
ONE_INDEX = 'one'
SUPPORTED_EVEN = 'w-even'
SUPPORTED_ODD = 'w-odd'
UNSUPPORTED_EVEN = 'n-even'
UNSUPPORTED_ODD = 'n-odd'
ANCHOR = 'm1'
PARTNER = 'm1-partner'
OTHER = 'other'


@dataclass(frozen=True)
class Role:
    """The role of one bracket argument and the variable it binds"""

    kind: str
    var: str = ''


@dataclass
class FormParameters:
    """The family parameters a closed form refers to"""

    operator: HomogeneousOperator
    m0: int = 0
    s0: int = 0
    m1: int = 0
    b: Number = 0
    a: Number = 0

    @property
    def supporter(self) -> Optional[Supporter]:
        """The supporter of an infinite family"""
        return getattr(self.operator, 'supporter', None)

    def lam(self, k: int) -> Scalar:
        """``lambda_k = k a - (k - 1)``"""
        return lambda_k(self.a, k)

    @classmethod
    def of(cls, operator: HomogeneousOperator) -> FormParameters:
        """Collect the parameters of a family operator"""
        return cls(
            operator,
            m0=getattr(operator, 'm0', 0),
            s0=getattr(operator, 's0', 0),
            m1=getattr(operator, 'm1', 0),
            b=getattr(operator, 'b', 0),
            a=getattr(operator, 'a', 0)
        )


Formula = Callable[[FormParameters, Bindings], Number]
OutIndex = Callable[[FormParameters, Bindings], int]


@dataclass(frozen=True)
class ClosedForm:
    """One tabulated structure constant.

    When ``transcribed`` is set the tabulated coefficient disagrees with the
    bracket expansion; ``coefficient`` holds the corrected form.
    """

    name: str
    roles: Tuple[Role, Role, Role]
    coefficient: Formula
    out_index: OutIndex
    transcribed: Optional[Formula] = None

    @property
    def erratum(self) -> bool:
        """True if the tabulated coefficient needed correcting"""
        return self.transcribed is not None

    def expected(self, params: FormParameters, bindings: Bindings, apply_errata: bool) -> Number:
        """The coefficient, corrected unless ``apply_errata`` is False"""
        if self.transcribed is not None and not apply_errata:
            return self.transcribed(params, bindings)
        return self.coefficient(params, bindings)

    def match(self, params: FormParameters, indices: Sequence[int]) -> Optional[Bindings]:
        """Bind the variables if the ordered indices fit the role pattern"""
        bindings: Bindings = {}
        for role, index in zip(self.roles, indices):
            value = _bind(role.kind, params, index)
            if value is None:
                return None
            if role.var:
                bindings[role.var] = value
        return bindings


def _bind(kind: str, params: FormParameters, index: int) -> Optional[int]:
    # Returns the bound variable, 0 for roles without one, None on mismatch.
    supporter = params.supporter
    if kind == ZERO_INDEX:
        return 0 if index == 0 else None
    if kind == ONE_INDEX:
        return 0 if index == 1 else None
    if kind in (SUPPORTED_EVEN, SUPPORTED_ODD):
        if supporter is None or index in (0, 1):
            return None
        location = supporter.locate(index)
        if location is None:
            return None
        k, sign = location
        return k if (sign > 0) == (kind == SUPPORTED_EVEN) else None
    if kind in (UNSUPPORTED_EVEN, UNSUPPORTED_ODD):
        if supporter is None or supporter.contains(index):
            return None
        if isinstance(params.operator, FamilyR02) and index in (0, 1):
            return None
        if kind == UNSUPPORTED_EVEN:
            return index // 2 if index % 2 == 0 else None
        return (index - 1) // 2 if index % 2 else None
    if kind == ANCHOR:
        return 0 if index == params.m1 else None
    if kind == PARTNER:
        return 0 if index == 1 - params.m1 else None
    if kind == OTHER:
        if isinstance(params.operator, FamilyR05):
            excluded: Tuple[int, ...] = (params.m1, 1 - params.m1)
        elif isinstance(params.operator, FamilyR01):
            excluded = (0, 1)
        else:
            excluded = ()
        return None if index in excluded else index
    raise ValueError(f'Unknown role "{kind}"')


def _roles(*specs: str) -> Tuple[Role, Role, Role]:
    roles = []
    for spec in specs:
        kind, _, var = spec.partition(':')
        roles.append(Role(kind, var))
    return roles[0], roles[1], roles[2]


def _lams(p: FormParameters, v: Bindings, *names: str) -> Scalar:
    product: Number = 1
    for name in names:
        product = product * p.lam(v[name])
    return product


_FAMILY_1 = (
    ClosedForm(
        '[L0,L1,Lm]',
        _roles('zero', 'one', 'other:m'),
        lambda p, v: p.b * (2 * v['m'] - 1 + (-1) ** (v['m'] % 2)),
        lambda p, v: v['m']
    ),
)

_FAMILY_2 = (
    ClosedForm(
        '[L0,L1,L2m]',
        _roles('zero', 'one', 'n-even:m'),
        lambda p, v: -4 * v['m'],
        lambda p, v: 2 * v['m']
    ),
    ClosedForm(
        '[L0,L1,L2m+1]',
        _roles('zero', 'one', 'n-odd:m'),
        lambda p, v: -4 * v['m'],
        lambda p, v: 2 * v['m'] + 1
    ),
    ClosedForm(
        '[L0,L1-2m0k1,L2m]',
        _roles('zero', 'w-odd:k1', 'n-even:m'),
        lambda p, v: -4 * v['m'] / p.lam(v['k1']),
        lambda p, v: 2 * v['m'] - 2 * p.m0 * v['k1']
    ),
    ClosedForm(
        '[L0,L2m0k1,L2m+1]',
        _roles('zero', 'w-even:k1', 'n-odd:m'),
        lambda p, v: -4 * p.m0 * v['k1'] / p.lam(v['k1']),
        lambda p, v: 2 * v['m'] + 2 * p.m0 * v['k1']
    ),
    ClosedForm(
        '[L1,L2m0k1,L2m]',
        _roles('one', 'w-even:k1', 'n-even:m'),
        lambda p, v: -(4 * p.m0 * v['k1'] - 4 * v['m']) / p.lam(v['k1']),
        lambda p, v: 2 * v['m'] + 2 * p.m0 * v['k1']
    ),
    ClosedForm(
        '[L1,L2m0k1,L2m+1]',
        _roles('one', 'w-even:k1', 'n-odd:m'),
        lambda p, v: 4 * v['m'] / p.lam(v['k1']),
        lambda p, v: 2 * v['m'] + 2 * p.m0 * v['k1'] + 1
    ),
    ClosedForm(
        '[L1,L1-2m0k1,L2m]',
        _roles('one', 'w-odd:k1', 'n-even:m'),
        lambda p, v: -4 * p.m0 * v['k1'] / p.lam(v['k1']),
        lambda p, v: 2 * v['m'] - 2 * p.m0 * v['k1'] + 1
    ),
    ClosedForm(
        '[L0,L2m0k1,L1-2m0k2]',
        _roles('zero', 'w-even:k1', 'w-odd:k2'),
        lambda p, v: (
            -4 * p.m0 * v['k1'] * (p.lam(v['k2']) - p.lam(v['k1']) - 1)
            / _lams(p, v, 'k1', 'k2')
        ),
        lambda p, v: 2 * p.m0 * (v['k1'] - v['k2'])
    ),
    ClosedForm(
        '[L0,L1-2m0k1,L1-2m0k2]',
        _roles('zero', 'w-odd:k1', 'w-odd:k2'),
        lambda p, v: (
            4 * p.m0 * (v['k1'] - v['k2']) * (1 - p.lam(v['k2']) - p.lam(v['k1']))
            / _lams(p, v, 'k1', 'k2')
        ),
        lambda p, v: -2 * p.m0 * (v['k1'] + v['k2']) + 1
    ),
    ClosedForm(
        '[L0,L1-2m0k1,L2m+1]',
        _roles('zero', 'w-odd:k1', 'n-odd:m'),
        lambda p, v: -(4 * v['m'] + 4 * p.m0 * v['k1']) / p.lam(v['k1']),
        lambda p, v: 2 * v['m'] - 2 * p.m0 * v['k1'] + 1
    ),
    ClosedForm(
        '[L1,L2m0k1,L1-2m0k2]',
        _roles('one', 'w-even:k1', 'w-odd:k2'),
        lambda p, v: (
            4 * p.m0 * v['k2'] * (p.lam(v['k1']) - p.lam(v['k2']) - 1)
            / _lams(p, v, 'k1', 'k2')
        ),
        lambda p, v: 2 * p.m0 * (v['k1'] - v['k2']) + 1
    ),
    ClosedForm(
        '[L1,L2m0k1,L2m0k2]',
        _roles('one', 'w-even:k1', 'w-even:k2'),
        lambda p, v: (
            4 * p.m0 * (v['k1'] - v['k2']) * (1 - p.lam(v['k2']) - p.lam(v['k1']))
            / _lams(p, v, 'k1', 'k2')
        ),
        lambda p, v: 2 * p.m0 * (v['k1'] + v['k2'])
    ),
    ClosedForm(
        '[L2m0k1,L1-2m0k2,L2m]',
        _roles('w-even:k1', 'w-odd:k2', 'n-even:m'),
        lambda p, v: -(4 * v['m'] - 4 * p.m0 * v['k1']) / _lams(p, v, 'k1', 'k2'),
        lambda p, v: 2 * v['m'] + 2 * p.m0 * (v['k1'] - v['k2'])
    ),
    ClosedForm(
        '[L2m0k1,L1-2m0k2,L2m+1]',
        _roles('w-even:k1', 'w-odd:k2', 'n-odd:m'),
        lambda p, v: -(4 * v['m'] + 4 * p.m0 * v['k2']) / _lams(p, v, 'k1', 'k2'),
        lambda p, v: 2 * v['m'] + 2 * p.m0 * (v['k1'] - v['k2']) + 1
    ),
    ClosedForm(
        '[L2m0k1,L2m0k2,L1-2m0k3]',
        _roles('w-even:k1', 'w-even:k2', 'w-odd:k3'),
        lambda p, v: (
            4 * p.m0 * (v['k1'] - v['k2'])
            * (p.lam(v['k3']) - p.lam(v['k2']) - p.lam(v['k1']))
            / _lams(p, v, 'k1', 'k2', 'k3')
        ),
        lambda p, v: 2 * p.m0 * (v['k1'] + v['k2'] - v['k3'])
    ),
    ClosedForm(
        '[L2m0k1,L1-2m0k2,L1-2m0k3]',
        _roles('w-even:k1', 'w-odd:k2', 'w-odd:k3'),
        lambda p, v: (
            4 * p.m0 * (v['k2'] - v['k3'])
            * (p.lam(v['k1']) - p.lam(v['k2']) - p.lam(v['k3']))
            / _lams(p, v, 'k1', 'k2', 'k3')
        ),
        lambda p, v: 2 * p.m0 * (v['k1'] - v['k2'] - v['k3']) + 1
    ),
    ClosedForm(
        '[L2m0k1,L2m0k2,L2m+1]',
        _roles('w-even:k1', 'w-even:k2', 'n-odd:m'),
        lambda p, v: 4 * p.m0 * (v['k1'] - v['k2']) / _lams(p, v, 'k1', 'k2'),
        lambda p, v: 2 * v['m'] + 2 * p.m0 * (v['k1'] + v['k2'])
    ),
    ClosedForm(
        '[L1-2m0k1,L1-2m0k2,L2m]',
        _roles('w-odd:k1', 'w-odd:k2', 'n-even:m'),
        lambda p, v: 4 * p.m0 * (v['k1'] - v['k2']) / _lams(p, v, 'k1', 'k2'),
        lambda p, v: 2 * v['m'] - 2 * p.m0 * (v['k1'] + v['k2']) + 1
    ),
)

_FAMILY_3 = (
    ClosedForm(
        '[L2m0k1+2s0,L2m0k2+2s0,L1-2m0k3-2s0]',
        _roles('w-even:k1', 'w-even:k2', 'w-odd:k3'),
        lambda p, v: (
            4 * p.m0 * (v['k1'] - v['k2'])
            * (p.lam(v['k3']) - p.lam(v['k2']) - p.lam(v['k1']))
            / _lams(p, v, 'k1', 'k2', 'k3')
        ),
        lambda p, v: 2 * p.m0 * (v['k1'] + v['k2'] - v['k3']) + 2 * p.s0
    ),
    ClosedForm(
        '[L2m0k1+2s0,L1-2m0k2-2s0,L1-2m0k3-2s0]',
        _roles('w-even:k1', 'w-odd:k2', 'w-odd:k3'),
        lambda p, v: (
            4 * p.m0 * (v['k2'] - v['k3'])
            * (p.lam(v['k1']) - p.lam(v['k2']) - p.lam(v['k3']))
            / _lams(p, v, 'k1', 'k2', 'k3')
        ),
        lambda p, v: 2 * p.m0 * (v['k1'] - v['k2'] - v['k3']) - 2 * p.s0 + 1
    ),
    ClosedForm(
        '[L2m0k1+2s0,L1-2m0k2-2s0,L2m+1]',
        _roles('w-even:k1', 'w-odd:k2', 'n-odd:m'),
        lambda p, v: (
            -4 * (v['m'] + p.m0 * v['k2'] + p.s0) / _lams(p, v, 'k1', 'k2')
        ),
        lambda p, v: 2 * v['m'] + 2 * p.m0 * (v['k1'] - v['k2']) + 1
    ),
    ClosedForm(
        '[L2m0k1+2s0,L1-2m0k2-2s0,L2m]',
        _roles('w-even:k1', 'w-odd:k2', 'n-even:m'),
        lambda p, v: (
            -4 * (v['m'] - p.m0 * v['k1'] - p.s0) / _lams(p, v, 'k1', 'k2')
        ),
        lambda p, v: 2 * v['m'] + 2 * p.m0 * (v['k1'] - v['k2']),
        transcribed=lambda p, v: (
            4 * (v['m'] - p.m0 * v['k1'] - p.s0) / _lams(p, v, 'k1', 'k2')
        )
    ),
    ClosedForm(
        '[L2m0k1+2s0,L2m0k2+2s0,L2m+1]',
        _roles('w-even:k1', 'w-even:k2', 'n-odd:m'),
        lambda p, v: 4 * p.m0 * (v['k1'] - v['k2']) / _lams(p, v, 'k1', 'k2'),
        lambda p, v: 2 * v['m'] + 2 * p.m0 * (v['k1'] + v['k2']) + 4 * p.s0
    ),
    ClosedForm(
        '[L1-2m0k1-2s0,L1-2m0k2-2s0,L2m]',
        _roles('w-odd:k1', 'w-odd:k2', 'n-even:m'),
        lambda p, v: 4 * p.m0 * (v['k1'] - v['k2']) / _lams(p, v, 'k1', 'k2'),
        lambda p, v: 2 * v['m'] - 2 * p.m0 * (v['k1'] + v['k2']) - 4 * p.s0 + 1
    ),
)

_FAMILY_4 = (
    ClosedForm(
        '[Ll,Lm,Ln]',
        _roles('other:l', 'other:m', 'other:n'),
        lambda p, v: 0,
        lambda p, v: v['l'] + v['m'] + v['n'] - 1
    ),
)

_FAMILY_5 = (
    ClosedForm(
        '[Lm1,L1-m1,Lm]',
        _roles('m1', 'm1-partner', 'other:m'),
        lambda p, v: p.b * det_d(p.m1, 1 - p.m1, v['m']),
        lambda p, v: v['m']
    ),
)

CLOSED_FORMS: Mapping[int, Tuple[ClosedForm, ...]] = {
    1: _FAMILY_1,
    2: _FAMILY_2,
    3: _FAMILY_3,
    4: _FAMILY_4,
    5: _FAMILY_5,
}


def closed_forms(family: int) -> Tuple[ClosedForm, ...]:
    """The closed forms of an induced algebra.

    Raises:
        KeyError: If the family is not 1 to 5.
    """
    return CLOSED_FORMS[family]

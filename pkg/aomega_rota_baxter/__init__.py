"""aomega-rota-baxter"""

import logging

from .alie import (
    A_OMEGA,
    Element,
    GradedCoeff,
    Report,
    Window,
    bracket,
    check_derivation,
    check_fundamental_identity,
    check_rota_baxter,
    d_zero_predicate,
    det_d
)
from .classify import (
    FamilyMatch,
    SearchSpec,
    SearchSpaceTooLarge,
    classify_finite,
    enumerate_rb_finite,
    recognize
)
from .induced import (
    InducedAlgebra,
    build_table,
    crosscheck_closed_forms,
    induced_coeff,
    verify_induced
)
from .operators import (
    DegenerateParameter,
    FamilyR01,
    FamilyR02,
    FamilyR03,
    FamilyR04,
    FamilyR05,
    FiniteSupport,
    HomogeneousOperator,
    NotInvertibleOnWindow,
    Supporter,
    check_rb_global_finite,
    check_rb_weight0,
    eval_f,
    identity_suite,
    inverse_on_window,
    lambda_k,
    operator_from_spec,
    scale
)
from .scalar import RatFun, field_arith, format_scalar, parse_scalar

__all__ = [
    'A_OMEGA',
    'Element',
    'GradedCoeff',
    'Report',
    'Window',
    'bracket',
    'check_derivation',
    'check_fundamental_identity',
    'check_rota_baxter',
    'd_zero_predicate',
    'det_d',
    'FamilyMatch',
    'SearchSpec',
    'SearchSpaceTooLarge',
    'classify_finite',
    'enumerate_rb_finite',
    'recognize',
    'InducedAlgebra',
    'build_table',
    'crosscheck_closed_forms',
    'induced_coeff',
    'verify_induced',
    'DegenerateParameter',
    'FamilyR01',
    'FamilyR02',
    'FamilyR03',
    'FamilyR04',
    'FamilyR05',
    'FiniteSupport',
    'HomogeneousOperator',
    'NotInvertibleOnWindow',
    'Supporter',
    'check_rb_global_finite',
    'check_rb_weight0',
    'eval_f',
    'identity_suite',
    'inverse_on_window',
    'lambda_k',
    'operator_from_spec',
    'scale',
    'RatFun',
    'field_arith',
    'format_scalar',
    'parse_scalar'
]

logging.getLogger("aomega_rota_baxter").addHandler(logging.NullHandler())

"""
The ``aomega-rb`` command line.

Subcommands:

* ``verify`` runs the Rota-Baxter checks on an operator.
* ``classify finite`` searches finitely supported operators.
* ``induce`` builds and verifies the induced bracket of an operator.
* ``report`` runs the reproduction catalogue.

Exit codes are 0 when everything passed, 1 when a check failed, 2 for
configuration and unexpected errors and 3 when a family parameter is
degenerate.
"""

import argparse
from dataclasses import dataclass, field
import json
import logging
import logging.config
import os
import sys
from typing import Any, Callable, Dict, List, Mapping, Optional, Sequence, Tuple

from .alie import (
    A_OMEGA,
    DEFAULT_MAX_COUNTEREXAMPLES,
    Report,
    ReportBuilder,
    Window,
    check_derivation,
    check_fundamental_identity
)
from .classify import (
    ClassifyError,
    SearchSpec,
    classify_finite,
    parse_values,
    solution_to_dict
)
from .induced import build_table, crosscheck_closed_forms, verify_induced
from .operators import (
    DegenerateParameter,
    FamilyR01,
    FamilyR02,
    FamilyR03,
    FamilyR04,
    FamilyR05,
    HomogeneousOperator,
    NotInvertibleOnWindow,
    OperatorError,
    check_rb_global_finite,
    check_rb_weight0,
    identity_suite,
    inverse_on_window,
    operator_from_spec,
    scale
)
from .scalar import (
    SYMBOLIC_TOKEN,
    ZERO,
    RatFun,
    Scalar,
    ScalarError,
    format_scalar,
    parse_scalar
)
from .utils import dumps, parse_assignments

LOGGER = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_CONFIG = 2
EXIT_DEGENERATE = 3

CHECKS = ('rb', 'global', 'derivation-of-inverse', 'identities')
WORKERS_ENV = 'AOMEGA_RB_WORKERS'
LOG_LEVELS = ('DEBUG', 'INFO', 'WARNING', 'ERROR')
# Options whose values may start with "-" but are not plain negative numbers.
VALUE_OPTIONS = frozenset((
    '--window', '--range', '--values', '--pin', '--support',
    '--a', '--b', '--scale', '--weight'
))


class ConfigError(Exception):
    """Raised for invalid command line configuration"""


@dataclass(frozen=True)
class RunConfig:
    """The parsed configuration of one run"""

    command: str
    window: Window
    operator: Optional[HomogeneousOperator] = None
    checks: Tuple[str, ...] = ('rb',)
    output_format: str = 'json'
    output: Optional[str] = None
    max_counterexamples: Optional[int] = DEFAULT_MAX_COUNTEREXAMPLES
    workers: int = 1
    skip_degenerate: bool = False
    weight: Scalar = ZERO
    search: Optional[SearchSpec] = None
    log_level: str = 'WARNING'

    @property
    def scalar_mode(self) -> str:
        """Either 'symbolic-a' or 'rational'"""
        if self.operator is not None and self.operator.symbolic:
            return 'symbolic-a'
        return 'rational'


@dataclass
class Outcome:
    """The result of a command: exit code, JSON document and text lines"""

    exit_code: int
    document: Dict[str, Any]
    lines: List[str] = field(default_factory=list)


def initialise_logging(level: str) -> None:
    """Initialise logging"""
    logging.config.dictConfig({
        'version': 1,
        'disable_existing_loggers': False,
        'formatters': {
            'simple': {
                'format': "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
            }
        },
        'handlers': {
            'stderr': {
                'class': 'logging.StreamHandler',
                'formatter': 'simple',
                'stream': 'ext://sys.stderr'
            }
        },
        'loggers': {
            'aomega_rota_baxter': {
                'level': level,
                'handlers': ['stderr'],
                'propagate': False
            }
        }
    })


def _default_workers() -> int:
    text = os.environ.get(WORKERS_ENV)
    if not text:
        return 1
    try:
        workers = int(text)
    except ValueError as error:
        raise ConfigError(f'{WORKERS_ENV} must be an integer, got "{text}"') from error
    if workers < 1:
        raise ConfigError(f'{WORKERS_ENV} must be positive')
    return workers


def _add_global_options(parser: argparse.ArgumentParser, defaults: bool) -> None:
    # The subcommand copies leave the values parsed before the subcommand alone.
    def default(value: Any) -> Any:
        return value if defaults else argparse.SUPPRESS

    parser.add_argument(
        '--format', dest='output_format', choices=('json', 'text'),
        default=default('json'), help='Output format')
    parser.add_argument(
        '--max-counterexamples', type=int,
        default=default(DEFAULT_MAX_COUNTEREXAMPLES),
        help='Counterexample cap per check, 0 for no cap')
    parser.add_argument(
        '--workers', type=int, default=default(None),
        help=f'Work partitions, run on threads (default ${WORKERS_ENV} or 1)')
    parser.add_argument(
        '--log-level', choices=LOG_LEVELS, default=default('WARNING'),
        help='Log level')
    parser.add_argument(
        '--output', default=default(None), help='Write the output to a file')


def _add_operator_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--family', choices=('r01', 'r02', 'r03', 'r04', 'r05'))
    parser.add_argument('--m0', type=int)
    parser.add_argument('--s0', type=int)
    parser.add_argument('--a', help='A rational "p/q" or "sym"')
    parser.add_argument('--b', help='A rational "p/q"')
    parser.add_argument('--m1', type=int)
    parser.add_argument('--support', help='Finite support "m=v,m=v"')
    parser.add_argument('--spec', help='A JSON operator specification')
    parser.add_argument('--scale', help='Scale the operator by a nonzero rational')


def make_parser() -> argparse.ArgumentParser:
    """The argument parser"""
    parser = argparse.ArgumentParser(
        prog='aomega-rb',
        description='Homogeneous Rota-Baxter operators on the 3-Lie algebra A_omega'
    )
    _add_global_options(parser, True)
    commands = parser.add_subparsers(dest='command')
    commands.required = True

    verify = commands.add_parser('verify', help='Check an operator')
    _add_global_options(verify, False)
    _add_operator_options(verify)
    verify.add_argument('--window', default='-10..10')
    verify.add_argument(
        '--checks', default='rb',
        help=f'Comma separated checks from {", ".join(CHECKS)}')
    verify.add_argument(
        '--global', dest='global_check', action='store_true',
        help='Add the global decision for finite support')
    verify.add_argument(
        '--skip-degenerate', action='store_true',
        help='Skip tuples that touch a degenerate parameter')

    classify = commands.add_parser('classify', help='Search for operators')
    _add_global_options(classify, False)
    classify.add_argument('mode', choices=('finite',))
    classify.add_argument('--range', dest='index_range', required=True)
    classify.add_argument('--max-size', type=int, required=True)
    classify.add_argument('--min-size', type=int, default=0)
    classify.add_argument('--values', default='1,-1')
    classify.add_argument('--pin', default='')
    classify.add_argument('--budget', type=int)
    classify.add_argument('--no-prune', action='store_true')

    induce = commands.add_parser('induce', help='Build an induced algebra')
    _add_global_options(induce, False)
    _add_operator_options(induce)
    induce.add_argument('--window', default='-5..5')
    induce.add_argument('--weight', default='0')
    induce.add_argument('--skip-degenerate', action='store_true')

    report = commands.add_parser('report', help='Run the reproduction catalogue')
    _add_global_options(report, False)

    return parser


def _operator_spec(args: argparse.Namespace) -> Dict[str, Any]:
    if args.spec:
        try:
            spec = json.loads(args.spec)
        except json.JSONDecodeError as error:
            raise ConfigError(f'Invalid --spec: {error}') from error
        if not isinstance(spec, dict):
            raise ConfigError('--spec must be a JSON object')
        return spec
    if args.support is not None:
        return {'support': {str(m): value for m, value in parse_assignments(args.support)}}
    if args.family:
        spec = {'family': args.family}
        for key in ('m0', 's0', 'a', 'b', 'm1'):
            value = getattr(args, key)
            if value is not None:
                spec[key] = value
        return spec
    raise ConfigError('An operator is required: use --family, --support or --spec')


def _is_symbolic(value: Any) -> bool:
    return isinstance(value, str) and value.strip() == SYMBOLIC_TOKEN


def _check_symbolic(spec: Mapping[str, Any]) -> None:
    nested = spec.get('operator')
    if isinstance(nested, Mapping):
        _check_symbolic(nested)
    support = spec.get('support')
    values = list(support.values()) if isinstance(support, Mapping) else []
    values += [spec.get('scale'), spec.get('b')]
    if spec.get('family') not in ('r02', 'r03'):
        values.append(spec.get('a'))
    if any(_is_symbolic(value) for value in values):
        raise ConfigError('A symbolic parameter is only available as "a" of r02 and r03')


def _operator(args: argparse.Namespace) -> HomogeneousOperator:
    spec = _operator_spec(args)
    _check_symbolic(spec)
    operator = operator_from_spec(spec)
    if args.scale is not None:
        operator = scale(operator, parse_scalar(args.scale))
    return operator


def _window(text: str) -> Window:
    try:
        return Window.parse(text)
    except ValueError as error:
        raise ConfigError(str(error)) from error


def _checks(args: argparse.Namespace) -> Tuple[str, ...]:
    checks = [name.strip() for name in args.checks.split(',') if name.strip()]
    if args.global_check and 'global' not in checks:
        checks.append('global')
    unknown = [name for name in checks if name not in CHECKS]
    if unknown or not checks:
        raise ConfigError(f'Unknown checks {unknown}; expected some of {list(CHECKS)}')
    return tuple(checks)


def _search(args: argparse.Namespace) -> SearchSpec:
    pinned = [
        (m, parse_scalar(value)) for m, value in parse_assignments(args.pin)
    ]
    options: Dict[str, Any] = {}
    if args.budget is not None:
        options['budget'] = args.budget
    return SearchSpec(
        _window(args.index_range),
        args.max_size,
        parse_values(args.values),
        pinned=pinned,
        min_support_size=args.min_size,
        prune=not args.no_prune,
        **options
    )


def join_option_values(argv: Sequence[str]) -> List[str]:
    """Attach values such as "-10..10" to their option as "--window=-10..10"."""
    joined: List[str] = []
    index = 0
    while index < len(argv):
        arg = argv[index]
        if arg in VALUE_OPTIONS and index + 1 < len(argv):
            joined.append(f'{arg}={argv[index + 1]}')
            index += 2
        else:
            joined.append(arg)
            index += 1
    return joined


def parse_config(argv: Optional[Sequence[str]] = None) -> RunConfig:
    """Parse the command line into a run configuration.

    Raises:
        ConfigError: For invalid values.
        SystemExit: For malformed arguments, from argparse.
    """
    arguments = sys.argv[1:] if argv is None else argv
    args = make_parser().parse_args(join_option_values(arguments))
    if args.max_counterexamples < 0:
        raise ConfigError('--max-counterexamples must not be negative')
    workers = args.workers if args.workers is not None else _default_workers()
    if workers < 1:
        raise ConfigError('--workers must be positive')
    options: Dict[str, Any] = {
        'output_format': args.output_format,
        'output': args.output,
        'max_counterexamples': args.max_counterexamples or None,
        'workers': workers,
        'log_level': args.log_level
    }
    if args.command == 'verify':
        return RunConfig(
            'verify',
            _window(args.window),
            operator=_operator(args),
            checks=_checks(args),
            skip_degenerate=args.skip_degenerate,
            **options
        )
    if args.command == 'classify':
        search = _search(args)
        return RunConfig('classify', search.index_range, search=search, **options)
    if args.command == 'induce':
        return RunConfig(
            'induce',
            _window(args.window),
            operator=_operator(args),
            weight=parse_scalar(args.weight),
            skip_degenerate=args.skip_degenerate,
            **options
        )
    return RunConfig('report', Window(-5, 5), **options)


def _report_line(name: str, report: Report) -> str:
    status = 'PASSED' if report.passed else 'FAILED'
    line = (
        f'{name}: {status} ({report.tuples_checked} tuples, '
        f'{report.failures} failures, {report.tuples_skipped} skipped)'
    )
    if report.counterexamples:
        first = report.counterexamples[0]
        line += f'; first counterexample {list(first.indices)}'
    return line


def _derivation_of_inverse(config: RunConfig, operator: HomogeneousOperator) -> Report:
    inverse = inverse_on_window(operator, config.window)
    skip_errors: Tuple[type, ...] = (NotInvertibleOnWindow,)
    if config.skip_degenerate:
        skip_errors += (DegenerateParameter,)
    return check_derivation(
        inverse,
        A_OMEGA,
        0,
        config.window,
        max_counterexamples=config.max_counterexamples,
        workers=config.workers,
        skip_errors=skip_errors
    ).with_label('derivation-of-inverse')


def run_check(config: RunConfig, operator: HomogeneousOperator, name: str) -> Report:
    """Run one named verification check"""
    if name == 'rb':
        return check_rb_weight0(
            operator,
            config.window,
            skip_degenerate=config.skip_degenerate,
            max_counterexamples=config.max_counterexamples,
            workers=config.workers
        )
    if name == 'global':
        return check_rb_global_finite(
            operator, max_counterexamples=config.max_counterexamples
        )
    if name == 'derivation-of-inverse':
        return _derivation_of_inverse(config, operator)
    return identity_suite(
        operator,
        config.window,
        max_counterexamples=config.max_counterexamples
    )


def cmd_verify(config: RunConfig) -> Outcome:
    """Run the requested checks on an operator"""
    operator = config.operator
    if operator is None:
        raise ConfigError('verify needs an operator')
    reports = {name: run_check(config, operator, name) for name in config.checks}
    passed = all(report.passed for report in reports.values())
    document = {
        'operator': operator.to_spec(),
        'window': str(config.window),
        'scalar_mode': config.scalar_mode,
        'checks': {name: report.to_dict() for name, report in reports.items()},
        'passed': passed
    }
    lines = [_report_line(name, report) for name, report in reports.items()]
    return Outcome(EXIT_OK if passed else EXIT_FAILED, document, lines)


def cmd_classify(config: RunConfig) -> Outcome:
    """Search finitely supported operators and label the solutions"""
    search = config.search
    if search is None:
        raise ConfigError('classify needs a search specification')
    results = classify_finite(search, workers=config.workers)
    document = {
        'range': str(search.index_range),
        'max_size': search.max_support_size,
        'values': [format_scalar(value) for value in search.value_set],
        'pinned': {str(m): format_scalar(value) for m, value in search.pinned},
        'count': len(results),
        'solutions': [solution_to_dict(solution, match) for solution, match in results]
    }
    lines = [
        f'{match.label}: {solution!r}' for solution, match in results
    ] + [f'{len(results)} solutions']
    return Outcome(EXIT_OK, document, lines)


def cmd_induce(config: RunConfig) -> Outcome:
    """Build and verify the induced bracket of an operator"""
    operator = config.operator
    if operator is None:
        raise ConfigError('induce needs an operator')
    algebra = build_table(operator, config.weight, config.window, workers=config.workers)
    verification = verify_induced(
        operator,
        config.weight,
        config.window,
        skip_degenerate=config.skip_degenerate,
        max_counterexamples=config.max_counterexamples,
        workers=config.workers
    )
    document = algebra.to_dict()
    document.update({
        'operator': operator.to_spec(),
        'window': str(config.window),
        'weight': format_scalar(config.weight),
        'verified': verification.to_dict()
    })
    lines = [
        f'[L_{l}, L_{m}, L_{n}] = {format_scalar(value)} L_{l + m + n - 1}'
        for (l, m, n), value in algebra.triples()
    ] + [
        _report_line('fundamental-identity', verification.fundamental),
        _report_line('rota-baxter', verification.rota_baxter)
    ]
    return Outcome(EXIT_OK if verification.passed else EXIT_FAILED, document, lines)


CatalogueEntry = Tuple[str, Callable[[RunConfig], Report]]


def _rb(
        operator: HomogeneousOperator,
        window: Window,
        skip_degenerate: bool = False
) -> Callable[[RunConfig], Report]:
    return lambda config: check_rb_weight0(
        operator,
        window,
        skip_degenerate=skip_degenerate,
        max_counterexamples=config.max_counterexamples,
        workers=config.workers
    )


def _global(operator: HomogeneousOperator) -> Callable[[RunConfig], Report]:
    return lambda config: check_rb_global_finite(
        operator, max_counterexamples=config.max_counterexamples
    )


def _classification(config: RunConfig) -> Report:
    search = SearchSpec(
        Window(-4, 5),
        2,
        tuple(parse_values('1,-1,1/2,-1/2')),
        pinned={0: 0, 1: 0},
        min_support_size=1
    )
    builder = ReportBuilder('finite-classification', config.max_counterexamples)
    results = classify_finite(search, workers=config.workers)
    for solution, match in results:
        support = solution.support
        expected = len(support) == 1 or (len(support) == 2 and sum(support) == 1)
        builder.count()
        if not expected or match.label not in ('r04', 'r05'):
            builder.record(support, match.label, 'r04 or r05', 'finite-classification')
    if not results:
        builder.record((), 'no solutions', 'r04 and r05 supports', 'finite-classification')
    return builder.build()


def _induced(operator: HomogeneousOperator) -> Callable[[RunConfig], Report]:
    return lambda config: verify_induced(
        operator,
        0,
        Window(-5, 5),
        skip_degenerate=True,
        max_counterexamples=config.max_counterexamples,
        workers=config.workers
    ).report


def _closed_forms(family: int, params: Mapping[str, Any]) -> Callable[[RunConfig], Report]:
    return lambda config: crosscheck_closed_forms(
        family, params, Window(-5, 5), max_counterexamples=config.max_counterexamples
    )


def _reproduction_catalogue() -> List[CatalogueEntry]:
    r02 = FamilyR02(1, parse_scalar('3'))
    r03 = FamilyR03(7, 2, parse_scalar('2'))
    return [
        ('a-omega-fundamental-identity', lambda config: check_fundamental_identity(
            A_OMEGA, Window(-6, 6),
            max_counterexamples=config.max_counterexamples, workers=config.workers)),
        ('r01-global', _global(FamilyR01(parse_scalar('7')))),
        ('r02-window', _rb(r02, Window(-10, 10))),
        ('r02-symbolic-window', _rb(FamilyR02(2, RatFun.variable()), Window(-6, 6))),
        ('r03-window', _rb(r03, Window(-16, 16), skip_degenerate=True)),
        ('r03-second-window', _rb(FamilyR03(4, 3, parse_scalar('3/5')), Window(-16, 16))),
        ('r04-global', _global(FamilyR04(3))),
        ('r05-global', _global(FamilyR05(2, parse_scalar('1')))),
        ('r02-derivation-of-inverse', lambda config: _derivation_of_inverse(
            RunConfig(
                'report', Window(-8, 8),
                max_counterexamples=config.max_counterexamples
            ),
            r02)),
        ('r02-identities', lambda config: identity_suite(
            r02, Window(-20, 20), max_counterexamples=config.max_counterexamples)),
        ('r03-identities', lambda config: identity_suite(
            r03, Window(-20, 20), max_counterexamples=config.max_counterexamples)),
        ('finite-classification', _classification),
        ('r01-induced', _induced(FamilyR01(parse_scalar('5')))),
        ('r02-induced', _induced(r02)),
        ('r03-induced', _induced(r03)),
        ('r04-induced', _induced(FamilyR04(3))),
        ('r05-induced', _induced(FamilyR05(2, parse_scalar('1')))),
        ('r01-closed-forms', _closed_forms(1, {'b': '5'})),
        ('r02-closed-forms', _closed_forms(2, {'m0': 2, 'a': '3'})),
        ('r03-closed-forms', _closed_forms(3, {'m0': 7, 's0': 2, 'a': '2'})),
        ('r04-closed-forms', _closed_forms(4, {'m1': 3})),
        ('r05-closed-forms', _closed_forms(5, {'m1': 2, 'b': '1'})),
    ]


def cmd_report(config: RunConfig) -> Outcome:
    """Run the reproduction catalogue"""
    entries: Dict[str, Any] = {}
    lines: List[str] = []
    passed = True
    for name, run in _reproduction_catalogue():
        LOGGER.info('Running %s', name)
        report = run(config)
        entries[name] = report.to_dict()
        lines.append(_report_line(name, report))
        passed = passed and report.passed
    document = {'entries': entries, 'passed': passed}
    return Outcome(EXIT_OK if passed else EXIT_FAILED, document, lines)


COMMANDS: Dict[str, Callable[[RunConfig], Outcome]] = {
    'verify': cmd_verify,
    'classify': cmd_classify,
    'induce': cmd_induce,
    'report': cmd_report,
}


def _emit(config: RunConfig, outcome: Outcome) -> None:
    if config.output_format == 'json':
        text = dumps(outcome.document)
    else:
        text = '\n'.join(outcome.lines)
    if config.output:
        with open(config.output, 'w', encoding='utf-8') as file_ptr:
            file_ptr.write(text + '\n')
    else:
        print(text)


def _error(code: int, message: str) -> int:
    print(f'aomega-rb: error: {message}', file=sys.stderr)
    return code


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run the command line.

    Args:
        argv (Optional[Sequence[str]], optional): The arguments, defaulting
            to ``sys.argv[1:]``.

    Returns:
        int: The exit code.
    """
    try:
        config = parse_config(argv)
    except SystemExit as error:
        return error.code if isinstance(error.code, int) else EXIT_CONFIG
    except DegenerateParameter as error:
        return _error(EXIT_DEGENERATE, str(error))
    except (ConfigError, OperatorError, ScalarError, ValueError) as error:
        return _error(EXIT_CONFIG, str(error))

    initialise_logging(config.log_level)
    LOGGER.info(
        'Running %s on %s with %d workers (%s)',
        config.command, config.window, config.workers, config.scalar_mode
    )
    try:
        outcome = COMMANDS[config.command](config)
    except DegenerateParameter as error:
        return _error(EXIT_DEGENERATE, str(error))
    except (ConfigError, OperatorError, ClassifyError, ScalarError, ValueError) as error:
        return _error(EXIT_CONFIG, str(error))
    except Exception as error:  # pylint: disable=broad-except
        LOGGER.exception('Unexpected failure')
        return _error(EXIT_CONFIG, f'unexpected failure: {error}')

    _emit(config, outcome)
    return outcome.exit_code

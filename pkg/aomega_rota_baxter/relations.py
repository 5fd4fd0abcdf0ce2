"""
Relations every homogeneous weight-zero Rota-Baxter operator satisfies.

Each relation walks its variables over a window and records failing
instances on a ``ReportBuilder``. Values come from a lookup returning
``None`` when a value is not available (an unassigned index during a
search, or a degenerate parameter); instances touching such a value are
counted as skipped. Relations with hypotheses on ``f(0)`` and ``f(1)`` leave
checking those hypotheses to the caller.

The criterion relations take ``eager``: when set the output value is looked
up even if its factor vanishes, so an unavailable output skips the instance.
A pole at the output can sit behind a zero factor; an unassigned search value
cannot.
"""

from fractions import Fraction
from itertools import combinations
from typing import Callable, List, Optional, Sequence

from .alie import ReportBuilder, Window, det_d
from .scalar import ZERO, Number

Lookup = Callable[[int], Optional[Number]]

NONZERO = 'nonzero'
VANISHING = 'zero'


def _values(lookup: Lookup, *indices: int) -> Optional[List[Number]]:
    values: List[Number] = []
    for index in indices:
        value = lookup(index)
        if value is None:
            return None
        values.append(value)
    return values


def _criterion(
        builder: ReportBuilder,
        lookup: Lookup,
        check: str,
        indices: Sequence[int],
        out: int,
        record_as: Sequence[int],
        eager: bool
) -> None:
    """One instance of ``f(x)f(y)f(z) = s2 f(out)`` with ``D`` cancelled"""
    values = _values(lookup, *indices)
    if values is None:
        builder.skip()
        return
    x, y, z = values
    lhs = x * y * z
    factor = x * y + x * z + y * z
    if factor or eager:
        value = lookup(out)
        if value is None:
            builder.skip()
            return
        rhs = factor * value
    else:
        rhs = ZERO
    builder.compare(tuple(record_as), lhs, rhs, check)


def weight_zero_criterion(
        lookup: Lookup,
        window: Window,
        builder: ReportBuilder,
        eager: bool = False
) -> None:
    """The homogeneous criterion on triples ``l < m < n`` with ``D != 0``."""
    for l, m, n in combinations(window, 3):
        det = det_d(l, m, n)
        if not det:
            builder.count()
            continue
        values = _values(lookup, l, m, n)
        if values is None:
            builder.skip()
            continue
        x, y, z = values
        lhs = x * y * z * det
        factor = x * y + x * z + y * z
        if factor or eager:
            out = lookup(l + m + n - 1)
            if out is None:
                builder.skip()
                continue
            rhs = factor * out * det
        else:
            rhs = ZERO
        builder.compare((l, m, n), lhs, rhs, 'weight-zero-criterion')


def odd_odd_even(
        lookup: Lookup,
        window: Window,
        builder: ReportBuilder,
        eager: bool = False
) -> None:
    """``f(2l+1)f(2m+1)f(2n) = s2 f(2l+2m+2n+1)`` for ``l != m``"""
    for l in window:
        for m in window:
            if l == m:
                continue
            for n in window:
                _criterion(
                    builder, lookup, 'odd-odd-even',
                    (2 * l + 1, 2 * m + 1, 2 * n), 2 * l + 2 * m + 2 * n + 1,
                    (l, m, n), eager
                )


def odd_even_even(
        lookup: Lookup,
        window: Window,
        builder: ReportBuilder,
        eager: bool = False
) -> None:
    """``f(2l+1)f(2m)f(2n) = s2 f(2l+2m+2n)`` for ``m != n``"""
    for l in window:
        for m in window:
            for n in window:
                if m == n:
                    continue
                _criterion(
                    builder, lookup, 'odd-even-even',
                    (2 * l + 1, 2 * m, 2 * n), 2 * l + 2 * m + 2 * n,
                    (l, m, n), eager
                )


def endpoint_sum(lookup: Lookup, window: Window, builder: ReportBuilder) -> None:
    """When ``f(0) + f(1) != 0`` every other value vanishes."""
    ends = _values(lookup, 0, 1)
    if ends is None or ends[0] + ends[1] == 0:
        return
    for m in window:
        if m in (0, 1):
            continue
        value = lookup(m)
        if value is None:
            builder.skip()
        elif value:
            builder.count()
            builder.record((m,), value, VANISHING, 'endpoint-sum')
        else:
            builder.count()


def antisymmetry(lookup: Lookup, window: Window, builder: ReportBuilder) -> None:
    """``f(m) + f(1-m) = 0``"""
    for m in window:
        values = _values(lookup, m, 1 - m)
        if values is None:
            builder.skip()
            continue
        builder.compare((m,), values[0] + values[1], ZERO, 'antisymmetry')


def support_pairing(lookup: Lookup, window: Window, builder: ReportBuilder) -> None:
    """``f(m) != 0`` implies ``f(1-m) = -f(m)``"""
    for m in window:
        value = lookup(m)
        if value is None:
            builder.skip()
            continue
        if not value:
            builder.count()
            continue
        mirror = lookup(1 - m)
        if mirror is None:
            builder.skip()
            continue
        builder.compare((m,), value + mirror, ZERO, 'support-pairing')


def pinned_endpoint(
        lookup: Lookup,
        window: Window,
        builder: ReportBuilder,
        c: Number,
        eager: bool = False
) -> None:
    """The criterion with one index pinned to 0 or 1, given ``f(0) = -f(1) = c``."""
    def instance(indices: Sequence[int], out: int, sign: int, item: int) -> None:
        values = _values(lookup, *indices)
        if values is None:
            builder.skip()
            return
        x, y = values
        factor = c * x + c * y + sign * x * y
        if factor or eager:
            value = lookup(out)
            if value is None:
                builder.skip()
                return
            rhs = factor * value
        else:
            rhs = ZERO
        builder.compare(
            tuple(indices), c * x * y, rhs, f'pinned-endpoint-{item}'
        )

    for l in window:
        for m in window:
            if l != m:
                instance((2 * l + 1, 2 * m + 1), 2 * l + 2 * m + 1, 1, 1)
            if m != 0:
                instance((2 * l + 1, 2 * m), 2 * l + 2 * m, 1, 2)
            if l != 0:
                instance((2 * l + 1, 2 * m), 2 * l + 2 * m + 1, -1, 3)
            if l != m:
                instance((2 * l, 2 * m), 2 * l + 2 * m, -1, 4)


def half_reciprocal(
        lookup: Lookup,
        window: Window,
        builder: ReportBuilder,
        c: Number
) -> None:
    """``c (f(2k) + f(-2k)) = 2 f(2k) f(-2k)`` given ``f(0) = -f(1) = c``.

    This is the mirror reciprocal relation with its denominators cleared, so
    it also holds where ``f`` vanishes.
    """
    for k in window:
        if k == 0:
            continue
        values = _values(lookup, 2 * k, -2 * k)
        if values is None:
            builder.skip()
            continue
        x, y = values
        builder.compare((2 * k, -2 * k), c * (x + y), 2 * x * y, 'half-reciprocal')


def mirror_support(lookup: Lookup, window: Window, builder: ReportBuilder) -> None:
    """``f(2k) != 0`` implies ``f(-2k) != 0`` and ``f(1+2k) != 0``"""
    for k in window:
        value = lookup(2 * k)
        if value is None:
            builder.skip()
            continue
        if not value:
            builder.count()
            continue
        for index in (-2 * k, 1 + 2 * k):
            image = lookup(index)
            if image is None:
                builder.skip()
            elif image:
                builder.count()
            else:
                builder.count()
                builder.record((2 * k, index), image, NONZERO, 'mirror-support')


def _supported(lookup: Lookup, window: Window, index: Callable[[int], int]) -> List[int]:
    found: List[int] = []
    for k in window:
        if k == 0:
            continue
        value = lookup(index(k))
        if value is not None and value:
            found.append(k)
    return found


def _assert(
        builder: ReportBuilder,
        lookup: Lookup,
        check: str,
        index: int,
        nonzero: bool,
        variables: Sequence[int]
) -> None:
    value = lookup(index)
    if value is None:
        builder.skip()
        return
    builder.count()
    if bool(value) != nonzero:
        builder.record(
            tuple(variables), value, NONZERO if nonzero else VANISHING, check
        )


def _propagation(
        lookup: Lookup,
        window: Window,
        builder: ReportBuilder,
        name: str,
        items: Sequence[tuple]
) -> None:
    evens = _supported(lookup, window, lambda k: 2 * k)
    odds = _supported(lookup, window, lambda m: 2 * m + 1)
    if len(evens) < 2 or len(odds) < 2:
        return

    for item, shape, index, nonzero in items:
        check = f'{name}-{item}'
        if shape == 'kl':
            for k in evens:
                for l in evens:
                    if k != l:
                        _assert(builder, lookup, check, index(k, l), nonzero, (k, l))
        elif shape == 'km':
            for k in evens:
                for m in odds:
                    if index(k, m) is not None:
                        _assert(builder, lookup, check, index(k, m), nonzero, (k, m))
        elif shape == 'mn':
            for m in odds:
                for n in odds:
                    if m != n:
                        _assert(builder, lookup, check, index(m, n), nonzero, (m, n))
        elif shape == 'k':
            for k in evens:
                _assert(builder, lookup, check, index(k), nonzero, (k,))
        elif shape == 'mnk':
            for m in odds:
                for n in odds:
                    if m == n:
                        continue
                    for k in evens:
                        _assert(builder, lookup, check, index(m, n, k), nonzero, (m, n, k))
        elif shape == 'mkl':
            for m in odds:
                for k in evens:
                    for l in evens:
                        if k != l:
                            _assert(builder, lookup, check, index(m, k, l), nonzero, (m, k, l))


def _unless_opposite(index: Callable[[int, int], int]) -> Callable[[int, int], Optional[int]]:
    return lambda k, m: None if k == -m else index(k, m)


# Nonvanishing consequences for f(0) = -f(1) != 0, given f(2k), f(2l),
# f(2m+1), f(2n+1) nonzero with (k-l)(m-n)klmn != 0.
_NONVANISHING_ITEMS = (
    (1, 'kl', lambda k, l: 2 * k + 2 * l, True),
    (2, 'km', lambda k, m: 2 * k + 2 * m, True),
    (3, 'km', lambda k, m: 2 * k + 2 * m + 1, True),
    (4, 'mn', lambda m, n: 2 * m + 2 * n + 1, True),
    (5, 'km', _unless_opposite(lambda k, m: 1 - 2 * k + 2 * m), True),
    (6, 'k', lambda k: 4 * k, True),
    (7, 'mnk', lambda m, n, k: 2 * m + 2 * n + 2 * k + 1, True),
    (8, 'mkl', lambda m, k, l: 2 * m + 2 * k + 2 * l, True),
    (9, 'km', _unless_opposite(lambda k, m: 2 * k - 2 * m), True),
    (10, 'km', lambda k, m: 1 - 2 * k - 2 * m, True),
    (11, 'k', lambda k: 1 - 4 * k, True),
)

# The same shape of consequences for f(0) = f(1) = 0.
_VANISHING_ITEMS = (
    (1, 'kl', lambda k, l: 2 * k + 2 * l, False),
    (2, 'km', lambda k, m: 2 * k + 2 * m, False),
    (3, 'km', lambda k, m: 2 * k + 2 * m + 1, False),
    (4, 'mn', lambda m, n: 2 * m + 2 * n + 1, False),
    (5, 'mnk', lambda m, n, k: 2 * m + 2 * n + 2 * k + 1, True),
    (6, 'mkl', lambda m, k, l: 2 * m + 2 * k + 2 * l, True),
    (7, 'km', _unless_opposite(lambda k, m: 2 * k - 2 * m), False),
    (8, 'k', lambda k: 4 * k, False),
)


def nonvanishing_propagation(lookup: Lookup, window: Window, builder: ReportBuilder) -> None:
    """Indices forced into the support when ``f(0) = -f(1) != 0``"""
    _propagation(lookup, window, builder, 'nonvanishing-propagation', _NONVANISHING_ITEMS)


def vanishing_propagation(lookup: Lookup, window: Window, builder: ReportBuilder) -> None:
    """Indices forced in or out of the support when ``f(0) = f(1) = 0``"""
    _propagation(lookup, window, builder, 'vanishing-propagation', _VANISHING_ITEMS)


def vanishing_products(lookup: Lookup, window: Window, builder: ReportBuilder) -> None:
    """Triple products that vanish when ``f(0) = f(1) = 0``"""
    def instance(indices: Sequence[int], item: int, variables: Sequence[int]) -> None:
        values = _values(lookup, *indices)
        if values is None:
            builder.skip()
            return
        builder.count()
        if all(values):
            product = values[0] * values[1] * values[2]
            builder.record(tuple(variables), product, ZERO, f'vanishing-products-{item}')

    for l in window:
        for m in window:
            if l != m:
                instance((2 * l + 1, 2 * m + 1, 2 * l + 2 * m + 1), 1, (l, m))
                instance((2 * l, 2 * m, 2 * l + 2 * m), 4, (l, m))
            if l != 0:
                instance((2 * l + 1, 2 * m, 2 * l + 2 * m + 1), 2, (l, m))
            if m != 0:
                instance((2 * l + 1, 2 * m, 2 * l + 2 * m), 3, (l, m))


class Reciprocals:
    """Reciprocal relations on a supporter ``2 m0 k + 2 s0``, ``1 - 2 m0 k - 2 s0``.

    Values are looked up at supporter points only; a point whose value is
    unavailable or zero skips the instance. Each relation
    ``sum(s_i / x_i) = c`` is compared with its denominators cleared, as
    ``sum(s_i prod(x_j, j != i)) = c prod(x_j)``.
    """

    def __init__(self, lookup: Lookup, m0: int, s0: int = 0) -> None:
        self.lookup = lookup
        self.m0 = m0
        self.s0 = s0

    def even(self, k: int) -> int:
        """The even supporter point for ``k``"""
        return 2 * self.m0 * k + 2 * self.s0

    def _nonzero(self, *indices: int) -> Optional[List[Number]]:
        values = _values(self.lookup, *indices)
        if values is None or not all(values):
            return None
        return values

    def _compare(
            self,
            builder: ReportBuilder,
            instance: Sequence[int],
            indices: Sequence[int],
            signs: Sequence[int],
            constant: Number,
            check: str
    ) -> None:
        values = self._nonzero(*indices)
        if values is None:
            builder.skip()
            return
        lhs: Number = ZERO
        for i, sign in enumerate(signs):
            term: Number = sign
            for j, value in enumerate(values):
                if j != i:
                    term = term * value
            lhs = lhs + term
        rhs: Number = constant
        for value in values:
            rhs = rhs * value
        builder.compare(tuple(instance), lhs, rhs, check)

    def mirror(self, window: Window, builder: ReportBuilder) -> None:
        """``1/f(E(k)) + 1/f(E(-k)) = 2``"""
        for k in window:
            self._compare(
                builder, (k,), (self.even(k), self.even(-k)), (1, 1), 2, 'mirror-reciprocal'
            )

    def shift(self, window: Window, builder: ReportBuilder) -> None:
        """``1/f(E(k)) - 1/f(1 + E(k)) = 2``"""
        for k in window:
            self._compare(
                builder, (k,), (self.even(k), 1 + self.even(k)), (1, -1), 2, 'shift-reciprocal'
            )

    def exchange(self, window: Window, builder: ReportBuilder) -> None:
        """``1/f(E(k2)) + 1/f(E(k3)) = 1/f(E(k1)) + 1/f(E(k2+k3-k1))``, ``k2 != k3``"""
        for k1 in window:
            for k2 in window:
                for k3 in window:
                    if k2 == k3:
                        continue
                    self._compare(
                        builder,
                        (k1, k2, k3),
                        (
                            self.even(k2), self.even(k3),
                            self.even(k1), self.even(k2 + k3 - k1)
                        ),
                        (1, 1, -1, -1),
                        0,
                        'reciprocal-exchange'
                    )

    def three_term(self, window: Window, builder: ReportBuilder) -> None:
        """The three term reciprocal relation for pairwise distinct ``k``"""
        for k1, k2, k3 in combinations(window, 3):
            self._compare(
                builder,
                (k1, k2, k3),
                (
                    self.even(k1), self.even(k2), self.even(k3),
                    self.even(k1 + k2 - k3),
                    self.even(k1 - k2 + k3),
                    self.even(-k1 + k2 + k3)
                ),
                (1, 1, 1, -1, -1, -1),
                0,
                'three-term-reciprocal'
            )

    def not_half(self, ks: Sequence[int], builder: ReportBuilder) -> None:
        """``f(E(k)) != 1/2`` where the mirror point ``E(-k)`` is not a pole"""
        half = Fraction(1, 2)
        for k in ks:
            value = self.lookup(self.even(k))
            if value is None or self.lookup(self.even(-k)) is None:
                builder.skip()
                continue
            builder.count()
            if value == half:
                builder.record((k,), value, 'not 1/2', 'not-half')

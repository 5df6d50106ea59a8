"""Exact truncated power series in one variable over the rationals.

A series of order N is known modulo h^(N+1); it stores exactly N+1
coefficients. Every operation returns a new series and never claims
more precision than its inputs carry.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .errors import ZeroConstantTerm

logger = logging.getLogger(__name__)

Rational = Fraction


def rational(value) -> Fraction:
    """Coerce an int, a Fraction or a "p/q" string to a Fraction."""
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"cannot read {value!r} as an exact rational")


def format_rational(value: Fraction) -> str:
    return str(Fraction(value))


@dataclass(frozen=True)
class TruncatedSeries:
    order: int
    coeffs: tuple

    def __post_init__(self):
        if self.order < 0:
            raise ValueError(f"order must be non-negative, got {self.order}")
        coeffs = tuple(rational(c) for c in self.coeffs)
        if len(coeffs) != self.order + 1:
            raise ValueError(f"order {self.order} needs {self.order + 1} coefficients, got {len(coeffs)}")
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def from_coeffs(cls, coeffs, order=None) -> "TruncatedSeries":
        """Build a series from leading coefficients, zero-padding up to `order`."""
        coeffs = list(coeffs)
        if order is None:
            order = len(coeffs) - 1
        coeffs = (coeffs + [0] * (order + 1))[:order + 1]
        return cls(order, tuple(coeffs))

    @classmethod
    def constant(cls, value, order: int) -> "TruncatedSeries":
        return cls.from_coeffs([value], order)

    @classmethod
    def one(cls, order: int) -> "TruncatedSeries":
        return cls.constant(1, order)

    def coefficient(self, i: int) -> Fraction:
        if i < 0 or i > self.order:
            raise IndexError(f"coefficient {i} is outside the known range 0..{self.order}")
        return self.coeffs[i]

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise ValueError(f"cannot raise precision from {self.order} to {order}")
        return TruncatedSeries(order, self.coeffs[:order + 1])

    def __mul__(self, other):
        return mul(self, other)

    def __add__(self, other):
        return add(self, other)

    def __sub__(self, other):
        return sub(self, other)

    def __pow__(self, e):
        return int_pow(self, e)

    def __str__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            elif i == 1:
                terms.append(f"({c})h")
            else:
                terms.append(f"({c})h^{i}")
        body = " + ".join(terms) if terms else "0"
        return f"{body} + O(h^{self.order + 1})"


def add(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    order = min(a.order, b.order)
    return TruncatedSeries(order, tuple(a.coeffs[i] + b.coeffs[i] for i in range(order + 1)))


def sub(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    order = min(a.order, b.order)
    return TruncatedSeries(order, tuple(a.coeffs[i] - b.coeffs[i] for i in range(order + 1)))


def mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product, truncated at the smaller of the two orders."""
    order = min(a.order, b.order)
    out = []
    for k in range(order + 1):
        out.append(sum((a.coeffs[i] * b.coeffs[k - i] for i in range(k + 1)), Fraction(0)))
    return TruncatedSeries(order, tuple(out))


def inverse(a: TruncatedSeries) -> TruncatedSeries:
    a0 = a.coeffs[0]
    if a0 == 0:
        raise ZeroConstantTerm("cannot invert a series with zero constant term")
    inv0 = 1 / a0
    out = [inv0]
    for k in range(1, a.order + 1):
        acc = sum((a.coeffs[i] * out[k - i] for i in range(1, k + 1)), Fraction(0))
        out.append(-inv0 * acc)
    return TruncatedSeries(a.order, tuple(out))


def int_pow(a: TruncatedSeries, e: int) -> TruncatedSeries:
    if e < 0:
        return int_pow(inverse(a), -e)
    result = TruncatedSeries.one(a.order)
    base = a
    while e:
        if e & 1:
            result = mul(result, base)
        e >>= 1
        if e:
            base = mul(base, base)
    return result


def scale_variable(a: TruncatedSeries, d: int) -> TruncatedSeries:
    """Substitute h -> d*h."""
    return TruncatedSeries(a.order, tuple(c * Fraction(d) ** i for i, c in enumerate(a.coeffs)))


def exp_series(order: int, scale: int = 1) -> TruncatedSeries:
    """exp(scale * x) up to x^order."""
    return TruncatedSeries(order, tuple(Fraction(scale ** i, factorial(i)) for i in range(order + 1)))


def _tanh_parts(order: int):
    # tanh x = (e^2x - 1) / (e^2x + 1); divide the numerator by x so both parts
    # have nonzero constant term (2 each).
    e2 = exp_series(order + 1, 2)
    plus = TruncatedSeries(order, (e2.coeffs[0] + 1,) + e2.coeffs[1:order + 1])
    minus_over_x = TruncatedSeries(order, e2.coeffs[1:order + 2])
    return plus, minus_over_x


def x_over_tanh_x(order: int) -> TruncatedSeries:
    if order < 0:
        raise ValueError(f"order must be non-negative, got {order}")
    plus, minus_over_x = _tanh_parts(order)
    return mul(plus, inverse(minus_over_x))


def tanh_x_over_x(order: int) -> TruncatedSeries:
    if order < 0:
        raise ValueError(f"order must be non-negative, got {order}")
    plus, minus_over_x = _tanh_parts(order)
    return mul(minus_over_x, inverse(plus))

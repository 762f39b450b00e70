"""
Truncated exponential generating functions with exact coefficients.

A series of order N stands for sum c_n x^n / n! for n = 0..N. Coefficients
are kept n!-scaled, so a counting series holds the counts themselves and the
product of two series is the binomial convolution of their coefficients.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .exceptions import NonIntegralError, OrderMismatchError, TruncationError, ZeroConstantTermError
from .numeric import Exact, binomial, binomial_convolution, gen_factorial

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EgfSeries:
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("An EGF series needs at least the constant coefficient")
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))

    @classmethod
    def from_values(cls, values: Iterable[Exact]) -> "EgfSeries":
        return cls(tuple(values))

    @classmethod
    def one(cls, order: int) -> "EgfSeries":
        return cls((1,) + (0,) * order)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __len__(self) -> int:
        return len(self.coeffs)

    def _check_order(self, other: "EgfSeries"):
        if self.order != other.order:
            raise OrderMismatchError(f"Series orders differ: {self.order} vs {other.order}")

    def __add__(self, other: "EgfSeries") -> "EgfSeries":
        return egf_add(self, other)

    def __sub__(self, other: "EgfSeries") -> "EgfSeries":
        return egf_add(self, other, b_scale=-1)

    def __mul__(self, other):
        if isinstance(other, EgfSeries):
            return egf_mul(self, other)
        return EgfSeries(tuple(c * other for c in self.coeffs))

    __rmul__ = __mul__

    def __neg__(self) -> "EgfSeries":
        return self * -1

    def __pow__(self, exponent: int) -> "EgfSeries":
        return egf_power(self, exponent)

    def reciprocal(self) -> "EgfSeries":
        return egf_reciprocal(self)

    def coeff(self, n: int) -> Fraction:
        return egf_coeff(self, n)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def integers(self) -> tuple[int, ...]:
        if not self.is_integral():
            bad = next(n for n, c in enumerate(self.coeffs) if c.denominator != 1)
            raise NonIntegralError(f"Coefficient {bad} is not an integer: {self.coeffs[bad]}")
        return tuple(c.numerator for c in self.coeffs)


def egf_exp(c: Exact, order: int) -> EgfSeries:
    """e^(cx): coefficient n is c^n."""
    if order < 0:
        raise ValueError(f"order must be >= 0, got {order}")
    return EgfSeries(tuple(Fraction(c) ** n for n in range(order + 1)))


def egf_gen_power(c: Exact, alpha: int, order: int) -> EgfSeries:
    """(1 + alpha x)^(c / alpha): coefficient n is (c|alpha)_n; alpha == 0 gives e^(cx)."""
    if order < 0:
        raise ValueError(f"order must be >= 0, got {order}")
    return EgfSeries(tuple(gen_factorial(Fraction(c), alpha, n) for n in range(order + 1)))


def egf_add(a: EgfSeries, b: EgfSeries, a_scale: Exact = 1, b_scale: Exact = 1) -> EgfSeries:
    a._check_order(b)
    return EgfSeries(tuple(a_scale * x + b_scale * y for x, y in zip(a.coeffs, b.coeffs)))


def egf_mul(a: EgfSeries, b: EgfSeries) -> EgfSeries:
    a._check_order(b)
    return EgfSeries(tuple(binomial_convolution(a.coeffs, b.coeffs)))


def egf_reciprocal(a: EgfSeries) -> EgfSeries:
    """Solve a * b = 1 term by term: b_n = -(1/a_0) sum_(r>=1) C(n,r) a_r b_(n-r)."""
    a0 = a.coeffs[0]
    if a0 == 0:
        raise ZeroConstantTermError("Series with zero constant term has no reciprocal")
    out = [1 / a0]
    for n in range(1, a.order + 1):
        total = Fraction(0)
        for r in range(1, n + 1):
            if a.coeffs[r]:
                total += binomial(n, r) * a.coeffs[r] * out[n - r]
        out.append(-total / a0)
    return EgfSeries(tuple(out))


def egf_power(a: EgfSeries, exponent: int) -> EgfSeries:
    if exponent < 0:
        raise ValueError(f"exponent must be >= 0, got {exponent}")
    result = EgfSeries.one(a.order)
    base = a
    while exponent:
        if exponent & 1:
            result = egf_mul(result, base)
        exponent >>= 1
        if exponent:
            base = egf_mul(base, base)
    return result


def egf_coeff(a: EgfSeries, n: int) -> Fraction:
    if n < 0 or n > a.order:
        raise TruncationError(f"Coefficient {n} is outside the truncation order {a.order}")
    return a.coeffs[n]


def bpa_series(lambda_: int, beta: int, gamma: int, order: int) -> EgfSeries:
    """e^(gamma x) / (2 - e^(beta x))^lambda truncated at `order`."""
    denominator = 2 * EgfSeries.one(order) - egf_exp(beta, order)
    series = egf_exp(gamma, order) * egf_power(egf_reciprocal(denominator), lambda_)
    logger.debug("Built EGF e^(%sx)/(2-e^(%sx))^%s to order %s", gamma, beta, lambda_, order)
    return series


def bell_series(alpha: int, beta: int, gamma: int, order: int) -> EgfSeries:
    """(1 + alpha t)^(gamma/alpha) / (2 - (1 + alpha t)^(beta/alpha))."""
    denominator = 2 * EgfSeries.one(order) - egf_gen_power(beta, alpha, order)
    return egf_gen_power(gamma, alpha, order) * egf_reciprocal(denominator)

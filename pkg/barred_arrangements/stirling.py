"""
Generalized Stirling numbers S(n, i, alpha, beta, gamma) and generalized Bell
numbers B_n(alpha, beta, gamma).

Three independent routes to B: the finite sum over scaled Stirling numbers,
the Dobinski-type series 1/2 sum_k (beta k + gamma | alpha)_n / 2^k evaluated
with a certified tail bound, and the exponential generating function
(1 + alpha t)^(gamma/alpha) / (2 - (1 + alpha t)^(beta/alpha)).
"""
import itertools
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable

from django.conf import settings

from .exceptions import CertificationError, EnumerationCapError, InvalidParamsError
from .numeric import Exact, factorial, forward_difference, gen_factorial
from .series import bell_series

logger = logging.getLogger(__name__)

# Largest one-step term ratio accepted before a geometric tail bound is trusted.
MAX_TAIL_RATIO = Fraction(3, 4)
MAX_SERIES_TERMS = 1_000_000


@dataclass(frozen=True)
class GsnKey:
    n: int
    i: int
    alpha: int = 0
    beta: int = 1
    gamma: int = 0

    def __post_init__(self):
        for name in ('n', 'i', 'alpha', 'beta', 'gamma'):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int) or value < 0:
                raise InvalidParamsError(f"{name} must be a non-negative integer, got {value!r}")
        if self.beta < 1:
            raise InvalidParamsError("beta must be at least 1 for Stirling and Bell numbers")


@dataclass(frozen=True)
class TailBound:
    """Partial sum through `truncation_index` plus a proven bound on the rest."""
    truncation_index: int
    partial_sum: Fraction
    bound: Fraction

    def contains(self, value: Exact) -> bool:
        return self.partial_sum <= value <= self.partial_sum + self.bound

    def rounded(self) -> int:
        # the tail is non-negative, so the exact value is the first integer
        # at or above the partial sum
        value = math.ceil(self.partial_sum)
        if not self.contains(value):
            raise CertificationError(
                f"No integer within [{self.partial_sum}, {self.partial_sum} + {self.bound}]"
            )
        return value


def certified_series(
    term: Callable[[int], Exact],
    ratio_bound: Callable[[int], Fraction | None],
    threshold: Fraction = Fraction(1, 2),
) -> TailBound:
    """Sum term(0) + term(1) + ... until the omitted tail is provably below threshold.

    ratio_bound(k) must return either None or a number r such that, for
    every j >= k, term(j) >= 0 and term(j + 1) <= r * term(j). Once r <= 3/4
    the tail after k is at most term(k) * r / (1 - r).
    """
    partial = Fraction(0)
    for k in range(MAX_SERIES_TERMS):
        t = Fraction(term(k))
        partial += t
        r = ratio_bound(k)
        if r is None or r > MAX_TAIL_RATIO:
            continue
        bound = t * r / (1 - r)
        if bound < threshold:
            logger.debug("Certified truncation at k=%s, tail bound %s", k, float(bound))
            return TailBound(k, partial, bound)
    raise CertificationError(f"Series not certified within {MAX_SERIES_TERMS} terms")


def falling_ratio_bound(n: int, alpha: int, beta: int, gamma: int) -> Callable[[int], Fraction | None]:
    """Ratio bound for terms (beta k + gamma | alpha)_n / 2^k.

    Every factor beta k + gamma - j alpha is at least x = beta k + gamma - (n-1) alpha,
    so when x > 0 each factor grows by at most (x + beta) / x per step.
    """
    def bound(k: int) -> Fraction | None:
        if n == 0:
            return Fraction(1, 2)
        smallest = beta * k + gamma - (n - 1) * alpha
        if smallest <= 0:
            return None
        return Fraction(smallest + beta, smallest) ** n / 2
    return bound


@lru_cache(maxsize=65536)
def stirling_scaled(key: GsnKey) -> int:
    """beta^i i! S(n, i, alpha, beta, gamma) = Delta^i (beta s + gamma | alpha)_n at s = 0."""
    return forward_difference(
        lambda s: gen_factorial(key.beta * s + key.gamma, key.alpha, key.n), key.i
    )


def stirling(key: GsnKey) -> Fraction:
    return Fraction(stirling_scaled(key), key.beta ** key.i * factorial(key.i))


def stirling_row(n: int, alpha: int = 0, beta: int = 1, gamma: int = 0) -> list[tuple[int, int, Fraction]]:
    """(i, scaled, S) for i = 0..n."""
    row = []
    for i in range(n + 1):
        key = GsnKey(n, i, alpha, beta, gamma)
        row.append((i, stirling_scaled(key), stirling(key)))
    return row


def bell(n: int, alpha: int = 0, beta: int = 1, gamma: int = 0) -> int:
    """B_n(alpha, beta, gamma) = sum_i i! beta^i S(n, i, alpha, beta, gamma)."""
    return sum(stirling_scaled(GsnKey(n, i, alpha, beta, gamma)) for i in range(n + 1))


def dobinski_tail(n: int, alpha: int = 0, beta: int = 1, gamma: int = 0) -> TailBound:
    GsnKey(n, 0, alpha, beta, gamma)
    return certified_series(
        lambda k: Fraction(gen_factorial(beta * k + gamma, alpha, n), 2 ** (k + 1)),
        falling_ratio_bound(n, alpha, beta, gamma),
    )


def bell_dobinski(n: int, alpha: int = 0, beta: int = 1, gamma: int = 0) -> int:
    """B_n(alpha, beta, gamma) from 1/2 sum_k (beta k + gamma | alpha)_n / 2^k."""
    return dobinski_tail(n, alpha, beta, gamma).rounded()


def bell_egf(alpha: int, beta: int, gamma: int, n_max: int) -> tuple[int, ...]:
    """B_0..B_n_max from the generalized Bell exponential generating function."""
    GsnKey(n_max, 0, alpha, beta, gamma)
    return bell_series(alpha, beta, gamma, n_max).integers()


def cell_count_oracle(n: int, i: int, beta: int, gamma: int, cap: int | None = None) -> int:
    """Count maps of n elements into i beta-compartment blocks plus one gamma
    block, keeping those where none of the first i blocks is empty."""
    GsnKey(n, i, 0, beta, gamma)
    cap = settings.BPA_CELL_ORACLE_CAP if cap is None else cap
    if n > cap:
        raise EnumerationCapError(f"cell_count_oracle is capped at n={cap}, got n={n}")
    ordinary = i * beta
    count = 0
    for assignment in itertools.product(range(ordinary + gamma), repeat=n):
        hit = {c // beta for c in assignment if c < ordinary}
        if len(hit) == i:
            count += 1
    return count

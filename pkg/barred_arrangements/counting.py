"""
Engines for H_n(lambda, beta, gamma), the number of barred preferential
arrangements of {1..n} with lambda ordinary sections (beta-colored blocks)
and one special section (gamma colors).

Every engine returns a full HTable H_0..H_N. The recurrences are built only
from each other and from plain powers, never from the EGF, so agreement
between engines is a real cross-check.
"""
import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable

from .exceptions import InvalidParamsError, MethodNotApplicableError, NonExactDivisionError
from .numeric import binomial, binomial_convolution, multinomial, powers
from .params import HTable, Params
from .series import bpa_series
from .stirling import bell, certified_series

logger = logging.getLogger(__name__)


def _check_n(n_max: int):
    if isinstance(n_max, bool) or not isinstance(n_max, int) or n_max < 0:
        raise InvalidParamsError(f"n must be a non-negative integer, got {n_max!r}")


def _exact(value: Fraction, what: str) -> int:
    if value.denominator != 1:
        raise NonExactDivisionError(f"{what} is not an integer: {value}")
    return value.numerator


@lru_cache(maxsize=4096)
def h_egf(params: Params, n_max: int) -> HTable:
    """Coefficients of e^(gamma x) / (2 - e^(beta x))^lambda."""
    _check_n(n_max)
    series = bpa_series(params.lambda_, params.beta, params.gamma, n_max)
    return HTable(params, series.integers(), 'egf')


def bell_zero_sequence(beta: int, n_max: int) -> list[int]:
    """B_0..B_n_max(0, beta, 0): ordered partitions with beta colors per block."""
    return [bell(r, 0, beta, 0) for r in range(n_max + 1)]


def h_conv(params: Params, n_max: int) -> HTable:
    """gamma^n convolved binomially with lambda copies of B_n(0, beta, 0)."""
    _check_n(n_max)
    values = powers(params.gamma, n_max + 1)
    if params.lambda_:
        blocks = bell_zero_sequence(params.beta, n_max)
        for _ in range(params.lambda_):
            values = binomial_convolution(values, blocks)
    return HTable(params, values, 'conv')


def compositions(n: int, parts: int):
    """All tuples of `parts` non-negative integers summing to n."""
    if parts == 0:
        if n == 0:
            yield ()
        return
    for cuts in itertools.combinations_with_replacement(range(n + 1), parts - 1):
        bounds = (0,) + cuts + (n,)
        yield tuple(bounds[j + 1] - bounds[j] for j in range(parts))


MULTINOMIAL_MAX_N = 20


def h_multinomial(params: Params, n_max: int) -> HTable:
    """Sum over r_1 + ... + r_(lambda+1) = n of the multinomial coefficient
    times gamma^(r_1) and one B_(r_j)(0, beta, 0) per ordinary section."""
    _check_n(n_max)
    blocks = bell_zero_sequence(params.beta, n_max) if params.lambda_ else []
    values = []
    for n in range(n_max + 1):
        total = 0
        for parts in compositions(n, params.lambda_ + 1):
            term = multinomial(parts) * params.gamma ** parts[0]
            for r in parts[1:]:
                term *= blocks[r]
            total += term
        values.append(total)
    return HTable(params, values, 'multinomial')


def _one_bar(method: str, beta: int, gamma: int) -> Params:
    try:
        return Params(1, beta, gamma)
    except InvalidParamsError as e:
        raise MethodNotApplicableError(f"{method}: {e}") from e


def h_rec_one_bar(beta: int, gamma: int, n_max: int) -> HTable:
    """H_n = gamma^n + sum_(i<n) C(n,i) H_i beta^(n-i), one bar only."""
    params = _one_bar('rec3', beta, gamma)
    _check_n(n_max)
    values = [1]
    for n in range(1, n_max + 1):
        total = gamma ** n
        for i in range(n):
            total += binomial(n, i) * values[i] * beta ** (n - i)
        values.append(total)
    return HTable(params, values, 'rec3')


def h_rec_block_split(beta: int, gamma: int, n_max: int) -> HTable:
    """H_(n+1) = gamma H_n + beta sum_i C(n,i) H_i(beta, gamma) H_(n-i)(beta, beta)."""
    params = _one_bar('rec4', beta, gamma)
    _check_n(n_max)
    values = [1]
    aux = values if gamma == beta else h_rec_block_split(beta, beta, n_max).values
    for n in range(n_max):
        total = 0
        for i in range(n + 1):
            total += binomial(n, i) * values[i] * aux[n - i]
        values.append(gamma * values[n] + beta * total)
    return HTable(params, values, 'rec4')


def b_from_alternating(beta: int, gamma: int, n_max: int, table: HTable | None = None) -> tuple[int, ...]:
    """B_n(0, beta, 0) = sum_i C(n,i) H_i(beta, gamma) (-gamma)^(n-i), for any gamma."""
    _one_bar('alternating', beta, gamma)
    _check_n(n_max)
    table = table or h_egf(Params(1, beta, gamma), n_max)
    out = []
    for n in range(n_max + 1):
        out.append(sum(binomial(n, i) * table[i] * (-gamma) ** (n - i) for i in range(n + 1)))
    return tuple(out)


def _empty_special_lower(lambda_: int, beta: int, n_max: int) -> HTable:
    """H(lambda, beta, 0) from the recurrences alone."""
    if lambda_ == 1:
        return h_rec_one_bar(beta, 0, n_max)
    return h_rec_empty_special(lambda_, beta, n_max)


def _check_lambda_two(method: str, lambda_: int, beta: int):
    if lambda_ < 2:
        raise MethodNotApplicableError(f"{method} needs lambda >= 2, got {lambda_}")
    if beta < 1:
        raise MethodNotApplicableError(f"{method} needs beta >= 1, got {beta}")


def h_rec_marked_bar(lambda_: int, beta: int, n_max: int) -> HTable:
    """H_n(l, b, b) = H_n(l-1, b, b)/2 + sum_i C(n,i) H_(i+1)(l-1, b, 0) b^(n-i) / (2 b (l-1))."""
    _check_lambda_two('marked', lambda_, beta)
    _check_n(n_max)
    if lambda_ == 2:
        previous = h_rec_one_bar(beta, beta, n_max)
    else:
        previous = h_rec_marked_bar(lambda_ - 1, beta, n_max)
    empty = _empty_special_lower(lambda_ - 1, beta, n_max + 1)
    divisor = 2 * beta * (lambda_ - 1)
    values = []
    for n in range(n_max + 1):
        total = sum(binomial(n, i) * empty[i + 1] * beta ** (n - i) for i in range(n + 1))
        value = Fraction(previous[n], 2) + Fraction(total, divisor)
        values.append(_exact(value, f"H_{n}({lambda_},{beta},{beta}) by the marked-bar recurrence"))
    return HTable(Params(lambda_, beta, beta), values, 'marked')


def h_rec_empty_special(lambda_: int, beta: int, n_max: int) -> HTable:
    """H_n(l, b, 0) = H_(n+1)(l-1, b, 0) / (2 b (l-1)) + H_n(l-1, b, 0) / 2."""
    _check_lambda_two('empty-special', lambda_, beta)
    _check_n(n_max)
    previous = _empty_special_lower(lambda_ - 1, beta, n_max + 1)
    divisor = 2 * beta * (lambda_ - 1)
    values = []
    for n in range(n_max + 1):
        value = Fraction(previous[n + 1], divisor) + Fraction(previous[n], 2)
        values.append(_exact(value, f"H_{n}({lambda_},{beta},0) by the empty-special recurrence"))
    return HTable(Params(lambda_, beta, 0), values, 'empty-special')


def h_rec_insert(params: Params, n_max: int) -> HTable:
    """H_(n+1) = gamma H_n + lambda beta sum_i C(n,i) H_i(1, beta, beta) H_(n-i)."""
    _check_n(n_max)
    values = [1]
    aux = h_rec_block_split(params.beta, params.beta, n_max).values if params.lambda_ else ()
    for n in range(n_max):
        total = 0
        if params.lambda_:
            for i in range(n + 1):
                total += binomial(n, i) * aux[i] * values[n - i]
        values.append(params.gamma * values[n] + params.lambda_ * params.beta * total)
    return HTable(params, values, 'insert')


def h_rec_merge(params: Params, n: int) -> int:
    """Right side of H_(n+1)(l, b, g) = g H_n(l, b, g) + l b H_n(l+1, b, g+b)."""
    _check_n(n)
    value = params.gamma * h_egf(params, n)[n]
    if params.lambda_:
        merged = Params(params.lambda_ + 1, params.beta, params.gamma + params.beta)
        value += params.lambda_ * params.beta * h_egf(merged, n)[n]
    return value


@lru_cache(maxsize=1024)
def _gamma_ladder(lambda_: int, beta: int, gamma: int, n_max: int) -> tuple[int, ...]:
    if lambda_ == 0:
        return tuple(powers(gamma, n_max + 1))
    base_gamma, rungs = gamma % beta, gamma // beta
    current = h_rec_insert(Params(lambda_, beta, base_gamma), n_max).values
    for j in range(rungs):
        lower = _gamma_ladder(lambda_ - 1, beta, base_gamma + j * beta, n_max)
        current = tuple(2 * c - l for c, l in zip(current, lower))
    return current


def h_shift(params: Params, n_max: int) -> HTable:
    """Climb H(l, b, g) -> H(l, b, g+b) = 2 H(l, b, g) - H(l-1, b, g) from g mod b."""
    if params.lambda_ < 1:
        raise MethodNotApplicableError("shift needs lambda >= 1")
    _check_n(n_max)
    values = _gamma_ladder(params.lambda_, params.beta, params.gamma, n_max)
    return HTable(params, values, 'shift')


def negative_binomial_ratio_bound(n: int, lambda_: int, beta: int, gamma: int) -> Callable[[int], Fraction | None]:
    """Ratio bound for terms C(k+l-1, l-1) (beta k + gamma)^n / 2^(k+l)."""
    def bound(k: int) -> Fraction | None:
        growth = Fraction(k + lambda_, k + 1) / 2
        if n == 0:
            return growth
        base = beta * k + gamma
        if base == 0:
            return None
        return growth * Fraction(base + beta, base) ** n
    return bound


def h_dobinski_value(params: Params, n: int) -> int:
    """H_n = sum_k C(k+l-1, l-1) (beta k + gamma)^n / 2^(k+l), certified."""
    lam, beta, gamma = params.lambda_, params.beta, params.gamma
    if lam == 0:
        return gamma ** n
    tail = certified_series(
        lambda k: Fraction(binomial(k + lam - 1, lam - 1) * (beta * k + gamma) ** n, 2 ** (k + lam)),
        negative_binomial_ratio_bound(n, lam, beta, gamma),
    )
    return tail.rounded()


def h_dobinski(params: Params, n_max: int) -> HTable:
    _check_n(n_max)
    return HTable(params, [h_dobinski_value(params, n) for n in range(n_max + 1)], 'dobinski')


def h_gamma_shift_value(lambda_: int, beta: int, gamma: int, n: int) -> int:
    """H_n(l, b, g) = sum_r C(n,r) g^(n-r) H_r(l, b, 0); H(0, b, 0) is 0^n."""
    if lambda_ == 0:
        return gamma ** n
    base = h_egf(Params(lambda_, beta, 0), n)
    return sum(binomial(n, r) * gamma ** (n - r) * base[r] for r in range(n + 1))


@dataclass(frozen=True)
class Method:
    name: str
    build: Callable[[Params, int], HTable]
    applies: Callable[[Params], bool]
    requirement: str = ''
    max_n: int | None = None

    def covers(self, n_max: int) -> bool:
        return self.max_n is None or n_max <= self.max_n


METHODS: dict[str, Method] = {
    m.name: m for m in [
        Method('egf', h_egf, lambda p: True),
        Method('conv', h_conv, lambda p: True),
        Method('multinomial', h_multinomial, lambda p: True, max_n=MULTINOMIAL_MAX_N),
        Method('rec3', lambda p, n: h_rec_one_bar(p.beta, p.gamma, n),
               lambda p: p.lambda_ == 1, 'lambda = 1'),
        Method('rec4', lambda p, n: h_rec_block_split(p.beta, p.gamma, n),
               lambda p: p.lambda_ == 1, 'lambda = 1'),
        Method('insert', h_rec_insert, lambda p: True),
        Method('shift', h_shift, lambda p: p.lambda_ >= 1, 'lambda >= 1'),
        Method('marked', lambda p, n: h_rec_marked_bar(p.lambda_, p.beta, n),
               lambda p: p.lambda_ >= 2 and p.gamma == p.beta, 'lambda >= 2 and gamma = beta'),
        Method('empty-special', lambda p, n: h_rec_empty_special(p.lambda_, p.beta, n),
               lambda p: p.lambda_ >= 2 and p.gamma == 0, 'lambda >= 2 and gamma = 0'),
        Method('dobinski-backed', h_dobinski, lambda p: True),
    ]
}


def applicable_methods(params: Params, n_max: int | None = None) -> list[str]:
    """Methods valid at params; with n_max, only those that also reach H_(n_max)."""
    return [name for name, method in METHODS.items()
            if method.applies(params) and (n_max is None or method.covers(n_max))]


def compute(params: Params, n_max: int, method: str = 'egf') -> HTable:
    if method not in METHODS:
        raise MethodNotApplicableError(
            f"Unknown method {method!r}. Must be one of: {', '.join(METHODS)}"
        )
    entry = METHODS[method]
    if not entry.applies(params):
        raise MethodNotApplicableError(f"Method {method!r} needs {entry.requirement}; got {params}")
    if not entry.covers(n_max):
        raise MethodNotApplicableError(f"Method {method!r} is limited to n <= {entry.max_n}; got {n_max}")
    table = entry.build(params, n_max)
    logger.debug("Computed %s up to n=%s with %s", params, n_max, method)
    return table

"""
Growth diagnostics for H_n(lambda, beta, gamma) = O(n! (beta / log 2 + eps)^n).

The generating function e^(gamma z) / (2 - e^(beta z))^lambda is analytic on
|z| < log 2 / beta, so H_(n+1) / ((n+1) H_n) tends to beta / log 2. All
comparisons are exact; log 2 only enters through a rational bracket.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction

from .counting import h_egf
from .numeric import factorial
from .params import Params

logger = logging.getLogger(__name__)

LOG2_LOWER = Fraction(6931, 10000)
LOG2_UPPER = Fraction(6932, 10000)


@dataclass(frozen=True)
class GrowthDiagnostic:
    n: int
    value: int
    ratio: Fraction
    normalized_lo: Fraction
    normalized_hi: Fraction

    def within(self, tolerance: Fraction) -> bool:
        return 1 - tolerance <= self.normalized_lo and self.normalized_hi <= 1 + tolerance


@dataclass(frozen=True)
class BoundCheck:
    """H_n <= n! q^n for q = beta / LOG2_LOWER + epsilon, over n_lo..n_hi.

    `violations` lists the n where the inequality fails outright. Since the
    growth statement only holds beyond some unspecified N, the check passes
    when the term ratio H_(n+1) / ((n+1) H_n) stays below q from `decay_from`
    to the end of the window and `decay_from` lies in its first half: from
    there on H_n / (n! q^n) strictly decreases.
    """
    params: Params
    q: Fraction
    n_lo: int
    n_hi: int
    violations: tuple[int, ...]
    decay_from: int | None

    @property
    def first_violation(self) -> int | None:
        return self.violations[0] if self.violations else None

    @property
    def last_violation(self) -> int | None:
        return self.violations[-1] if self.violations else None

    @property
    def passed(self) -> bool:
        return self.decay_from is not None and self.decay_from <= (self.n_lo + self.n_hi) // 2


def growth_rate(params: Params, epsilon: Fraction) -> Fraction:
    """A rational q with q >= beta / log 2 + epsilon."""
    if epsilon <= 0:
        raise ValueError(f"epsilon must be positive, got {epsilon}")
    beta = params.beta if params.lambda_ else max(params.beta, 1)
    return beta / LOG2_LOWER + Fraction(epsilon)


def bound_check(params: Params, epsilon: Fraction, n_lo: int = 1, n_hi: int = 200) -> BoundCheck:
    if n_lo < 0 or n_hi < n_lo:
        raise ValueError(f"Invalid n range {n_lo}..{n_hi}")
    q = growth_rate(params, epsilon)
    table = h_egf(params, n_hi)
    violations = tuple(n for n in range(n_lo, n_hi + 1) if table[n] > factorial(n) * q ** n)

    decay_from = n_hi
    while decay_from > n_lo and table[decay_from] < decay_from * q * table[decay_from - 1]:
        decay_from -= 1
    check = BoundCheck(params, q, n_lo, n_hi, violations, decay_from if decay_from < n_hi else None)
    logger.debug("Bound check %s: q=%s, violations=%s, decay from %s",
                 params, q, len(violations), check.decay_from)
    return check


def ratio_table(params: Params, n_max: int) -> list[GrowthDiagnostic]:
    """H_(n+1) / ((n+1) H_n) with the normalized bracket ratio * log 2 / beta."""
    table = h_egf(params, n_max + 1)
    beta = params.beta if params.lambda_ else max(params.beta, 1)
    rows = []
    for n in range(n_max + 1):
        if table[n] == 0:
            continue
        ratio = Fraction(table[n + 1], (n + 1) * table[n])
        rows.append(GrowthDiagnostic(n, table[n], ratio, ratio * LOG2_LOWER / beta, ratio * LOG2_UPPER / beta))
    return rows

"""
Exact verification of the counting identities on parameter grids.

Every check returns IdentityReport values; a failed identity is data, never
an exception. Infinite series enter only through certified truncation, so
all comparisons are exact equalities.
"""
import itertools
import logging
from concurrent.futures import ProcessPoolExecutor, ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator

from django.conf import settings

from . import counting
from .counting import h_egf, h_gamma_shift_value
from .enumeration import EnumerationBudget, count_restricted_thm28, count_structures, sample_structures
from .exceptions import BpaError
from .numeric import Exact, binomial, forward_difference
from .params import HTable, Params
from .stirling import bell, bell_dobinski, bell_egf, certified_series
from .structures import BpaStructure, format_structure, parse_structure

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class IdentityReport:
    identity: str
    n: int
    lambda_: int | None
    beta: int | None
    gamma: Exact | None
    lhs: Exact
    rhs: Exact
    aux: tuple[tuple[str, int], ...] = ()

    @property
    def passed(self) -> bool:
        return self.lhs == self.rhs

    @property
    def sort_key(self) -> tuple:
        return (self.identity, self.lambda_ or 0, self.beta or 0, Fraction(self.gamma or 0), self.aux, self.n)

    def describe(self) -> str:
        point = f"n={self.n}, lambda={self.lambda_}, beta={self.beta}, gamma={self.gamma}"
        for name, value in self.aux:
            point += f", {name}={value}"
        return f"{self.identity} at ({point})"


def _report(identity: str, n: int, params: Params | None, lhs: Exact, rhs: Exact, **aux) -> IdentityReport:
    if params is None:
        return IdentityReport(identity, n, None, None, None, lhs, rhs, tuple(sorted(aux.items())))
    return IdentityReport(identity, n, params.lambda_, params.beta, params.gamma, lhs, rhs,
                          tuple(sorted(aux.items())))


def compare_tables(identity: str, lhs: HTable | Iterable[int], rhs: HTable | Iterable[int],
                   params: Params, **aux) -> list[IdentityReport]:
    return [_report(identity, n, params, a, b, **aux) for n, (a, b) in enumerate(zip(lhs, rhs))]


def section_expansion_sum(lambda_: int, beta: int, gamma: int, n: int) -> int:
    """sum_(k<=n) sum_(s<=k) C(k,s) (-1)^(k-s) H_n(lambda-1, beta, gamma + beta s)."""
    values = [h_gamma_shift_value(lambda_ - 1, beta, gamma + beta * s, n) for s in range(n + 1)]
    return sum(forward_difference(values, k) for k in range(n + 1))


def nested_series(lambda_: int, beta: int, gamma: int, n: int) -> int:
    """sum_(s>=0) H_n(lambda-1, beta, gamma + beta s) / 2^(s+1), certified."""
    def ratio(s: int) -> Fraction | None:
        if n == 0:
            return Fraction(1, 2)
        base = gamma + beta * s
        if base == 0:
            return None
        return Fraction(base + beta, base) ** n / 2

    tail = certified_series(
        lambda s: Fraction(h_gamma_shift_value(lambda_ - 1, beta, gamma + beta * s, n), 2 ** (s + 1)),
        ratio,
    )
    return tail.rounded()


def check_nelsen(gamma: Exact, n: int) -> IdentityReport:
    """sum_k sum_s C(k,s)(-1)^(k-s) (gamma+s)^n against 1/2 sum_s (gamma+s)^n / 2^s."""
    lhs = sum(forward_difference(lambda s: (gamma + s) ** n, k) for k in range(n + 1))
    if isinstance(gamma, int) and gamma >= 0:
        rhs = bell_dobinski(n, 0, 1, gamma)
    else:
        # expand (gamma + s)^n binomially; each inner series is an ordered-partition count
        rhs = sum(binomial(n, j) * Fraction(gamma) ** (n - j) * bell_dobinski(j) for j in range(n + 1))
        rhs = rhs.numerator if rhs.denominator == 1 else rhs
    return IdentityReport('nelsen', n, 1, 1, gamma, lhs, rhs)


def check_theorem30(lambda_: int, beta: int, gamma: int, n: int) -> IdentityReport:
    """Finite alternating double sum against the nested series with weights 2^-(s+1)."""
    params = Params(lambda_, beta, gamma)
    if lambda_ < 1:
        raise ValueError("The nested-series identity needs lambda >= 1")
    return _report('nested-series', n, params,
                   section_expansion_sum(lambda_, beta, gamma, n), nested_series(lambda_, beta, gamma, n))


def check_corollary1(lambda_: int, beta: int, gamma: int, n: int) -> IdentityReport:
    params = Params(lambda_, beta, gamma)
    return _report('section-expansion', n, params,
                   section_expansion_sum(lambda_, beta, gamma, n), h_egf(params, n)[n])


def check_theorem28(n: int, lambda_: int, beta: int, gamma: int,
                    budget: EnumerationBudget | None = None) -> IdentityReport:
    params = Params(lambda_, beta, gamma)
    return _report('restricted-count', n, params,
                   count_restricted_thm28(n, lambda_, beta, gamma, budget),
                   section_expansion_sum(lambda_, beta, gamma, n))


def check_gould_mays(n: int) -> IdentityReport:
    """Chains in the power set: sum_k sum_s C(k,s)(2+s)^n(-1)^(k-s) = H_n(1, 1, 2)."""
    lhs = sum(forward_difference(lambda s: (2 + s) ** n, k) for k in range(n + 1))
    return _report('power-set-chains', n, Params(1, 1, 2), lhs, counting.h_rec_one_bar(1, 2, n)[n])


def check_scaling(lambda_: int, beta: int, c: int, n: int) -> IdentityReport:
    """H_n(lambda, beta, c beta) = beta^n H_n(lambda, 1, c)."""
    params = Params(lambda_, beta, c * beta)
    return _report('scaling', n, params, h_egf(params, n)[n],
                   beta ** n * h_egf(Params(lambda_, 1, c), n)[n], c=c)


ENGINE_IDENTITIES = {
    'conv': 'convolution',
    'multinomial': 'multinomial-expansion',
    'rec3': 'one-bar-recurrence',
    'rec4': 'block-split-recurrence',
    'insert': 'insertion-recurrence',
    'shift': 'gamma-ladder',
    'marked': 'marked-bar-recurrence',
    'empty-special': 'empty-special-recurrence',
    'dobinski-backed': 'dobinski',
}


@dataclass(frozen=True)
class SuiteGrid:
    n_max: int = 25
    lambda_max: int = 3
    beta_max: int = 3
    gamma_max: int = 3
    alpha_max: int = 2
    series_n_max: int = 15
    restricted_n_max: int = 5
    restricted_lambdas: tuple[int, ...] = (1, 2)
    restricted_beta_max: int = 2
    restricted_gamma_max: int = 2
    workers: int = field(default_factory=lambda: settings.BPA_VERIFY_WORKERS)

    def points(self) -> Iterator[Params]:
        for lam in range(self.lambda_max + 1):
            for beta in range(1, (self.beta_max if lam else 1) + 1):
                for gamma in range(self.gamma_max + 1):
                    if lam or gamma:
                        yield Params(lam, beta, gamma)


def engine_reports(params: Params, n_max: int) -> list[IdentityReport]:
    reference = h_egf(params, n_max)
    reports = []
    for method in counting.applicable_methods(params):
        if method == 'egf':
            continue
        limit = counting.METHODS[method].max_n
        table = counting.compute(params, n_max if limit is None else min(n_max, limit), method)
        reports += compare_tables(ENGINE_IDENTITIES[method], table, reference, params)
    return reports


def point_reports(params: Params, grid: SuiteGrid) -> list[IdentityReport]:
    """Every identity anchored at one (lambda, beta, gamma) point."""
    lam, beta, gamma = params.lambda_, params.beta, params.gamma
    N = grid.n_max
    reference = h_egf(params, N)
    reports = engine_reports(params, N)

    for n in range(N):
        reports.append(_report('merge-recurrence', n + 1, params, reference[n + 1],
                               counting.h_rec_merge(params, n)))

    if lam >= 1:
        lifted = h_egf(params.with_(gamma=gamma + beta), N)
        lower = h_gamma_table(lam - 1, beta, gamma, N)
        name = 'gamma-shift' if gamma else 'gamma-shift-at-zero'
        reports += compare_tables(name, lifted, [2 * h - l for h, l in zip(reference, lower)], params)
        for n in range(N + 1):
            reports.append(check_corollary1(lam, beta, gamma, n))
        for n in range(min(N, grid.series_n_max) + 1):
            reports.append(check_theorem30(lam, beta, gamma, n))

    if lam == 1:
        bells = counting.bell_zero_sequence(beta, N)
        reports += compare_tables('alternating-bell', counting.b_from_alternating(beta, gamma, N, reference),
                                  bells, params)
        one_bar = [sum(binomial(n, r) * bells[r] * gamma ** (n - r) for r in range(n + 1)) for n in range(N + 1)]
        reports += compare_tables('one-bar-bell-convolution', one_bar, reference, params)
        if beta == 1:
            for n in range(min(N, grid.series_n_max) + 1):
                reports.append(check_nelsen(gamma, n))

    if (lam in grid.restricted_lambdas and beta <= grid.restricted_beta_max
            and gamma <= grid.restricted_gamma_max):
        for n in range(min(N, grid.restricted_n_max) + 1):
            reports.append(check_theorem28(n, lam, beta, gamma))

    for n in range(N + 1):
        reports.append(check_scaling(lam, beta, gamma, n))
    return reports


def h_gamma_table(lambda_: int, beta: int, gamma: int, n_max: int) -> list[int]:
    """H(lambda, beta, gamma) as a plain list; (0, beta, 0) is the sequence 0^n."""
    if lambda_ == 0:
        return [gamma ** n for n in range(n_max + 1)]
    return list(h_egf(Params(lambda_, beta, gamma), n_max))


def bell_reports(grid: SuiteGrid) -> list[IdentityReport]:
    reports = []
    for alpha, beta, gamma in itertools.product(range(grid.alpha_max + 1), range(1, grid.beta_max + 1),
                                                range(grid.gamma_max + 1)):
        series = bell_egf(alpha, beta, gamma, grid.n_max)
        for n in range(grid.n_max + 1):
            value = bell(n, alpha, beta, gamma)
            point = dict(lambda_=None, beta=beta, gamma=gamma, aux=(('alpha', alpha),))
            reports.append(IdentityReport('bell-dobinski', n, lhs=value, rhs=bell_dobinski(n, alpha, beta, gamma),
                                          **point))
            reports.append(IdentityReport('bell-egf', n, lhs=value, rhs=series[n], **point))
    return reports


def run_suite(grid: SuiteGrid | None = None) -> list[IdentityReport]:
    """All identities over the grid, in a deterministic order."""
    grid = grid or SuiteGrid()
    points = list(grid.points())
    logger.info("Running identity suite over %s parameter points up to n=%s", len(points), grid.n_max)
    with ThreadPoolExecutor(max_workers=max(1, grid.workers)) as pool:
        chunks = list(pool.map(lambda p: point_reports(p, grid), points))
    reports = [r for chunk in chunks for r in chunk]
    reports += [check_gould_mays(n) for n in range(grid.n_max + 1)]
    reports += bell_reports(grid)
    reports.sort(key=lambda r: r.sort_key)
    failed = [r for r in reports if not r.passed]
    for report in failed:
        logger.warning("Identity failed: %s (lhs=%s, rhs=%s)", report.describe(), report.lhs, report.rhs)
    logger.info("Identity suite: %s reports, %s failed", len(reports), len(failed))
    return reports


@dataclass(frozen=True)
class OracleGrid:
    """Points (n_max, lambda_max, beta_max, gamma_max) checked by exhaustive enumeration.

    Counts are exhaustive at every point. Round-trip and distinctness cover
    every structure of a point with at most round_trip_cap of them, and
    otherwise the first structures of every element routing.
    """
    boxes: tuple[tuple[int, int, int, int], ...] = ((6, 2, 3, 3), (8, 1, 1, 2))
    round_trip_cap: int = 20_000
    budget: int = field(default_factory=lambda: settings.BPA_ENUMERATION_BUDGET)
    workers: int = field(default_factory=lambda: settings.BPA_VERIFY_WORKERS)

    def points(self) -> list[tuple[int, Params]]:
        seen = set()
        for n_max, lambda_max, beta_max, gamma_max in self.boxes:
            for n, lam, beta, gamma in itertools.product(range(n_max + 1), range(lambda_max + 1),
                                                          range(1, beta_max + 1), range(gamma_max + 1)):
                if (lam or gamma) and (lam or beta == 1):
                    seen.add((n, Params(lam, beta, gamma)))
        return sorted(seen)


def _round_trips(structure: BpaStructure, text: str) -> bool:
    try:
        return parse_structure(text, structure.params, structure.n) == structure
    except BpaError as e:
        logger.warning("Round trip of %r failed: %s", text, e)
        return False


def oracle_reports(n: int, params: Params, grid: OracleGrid) -> list[IdentityReport]:
    budget = EnumerationBudget(grid.budget)
    count = count_structures(n, params, budget)
    checked = 0
    round_trips = 0
    distinct = set()
    for structure in sample_structures(n, params, grid.round_trip_cap, budget):
        text = format_structure(structure)
        checked += 1
        round_trips += _round_trips(structure, text)
        distinct.add(text)
    reports = [
        _report('round-trip', n, params, round_trips, checked),
        _report('distinct-structures', n, params, len(distinct), checked),
    ]
    for method in counting.applicable_methods(params, n):
        name = 'egf' if method == 'egf' else ENGINE_IDENTITIES[method]
        reports.append(_report(f"enumeration-{name}", n, params, count, counting.compute(params, n, method)[n]))
    return reports


def run_oracle(grid: OracleGrid | None = None) -> list[IdentityReport]:
    grid = grid or OracleGrid()
    points = grid.points()
    logger.info("Enumeration oracle over %s points with %s workers", len(points), grid.workers)
    ns = [n for n, _ in points]
    params = [p for _, p in points]
    if grid.workers > 1:
        with ProcessPoolExecutor(max_workers=grid.workers) as pool:
            chunks = list(pool.map(oracle_reports, ns, params, itertools.repeat(grid)))
    else:
        chunks = [oracle_reports(n, p, grid) for n, p in zip(ns, params)]
    reports = [r for chunk in chunks for r in chunk]
    reports.sort(key=lambda r: r.sort_key)
    return reports

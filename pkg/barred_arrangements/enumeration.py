"""
Exhaustive generation of colored barred preferential arrangements.

Each element is first routed to a location (the special section or one of
the lambda ordinary sections); every section then receives all ordered set
partitions of its elements with every beta-coloring. This mirrors the
multinomial factorization of H_n and never produces an invalid state.
"""
import itertools
import logging
from dataclasses import dataclass, field, replace
from functools import lru_cache
from typing import Iterator

from django.conf import settings

from .counting import h_egf, h_gamma_shift_value
from .exceptions import BudgetExceededError, MethodNotApplicableError
from .numeric import binomial
from .params import Params
from .structures import Assignment, BpaStructure, Section

logger = logging.getLogger(__name__)


def _default_budget() -> int:
    return settings.BPA_ENUMERATION_BUDGET


@dataclass(frozen=True)
class EnumerationBudget:
    max_count: int = field(default_factory=_default_budget)
    predicted: int | None = None

    def admit(self, predicted: int) -> "EnumerationBudget":
        if predicted > self.max_count:
            raise BudgetExceededError(predicted, self.max_count)
        return replace(self, predicted=predicted)


def ordered_set_partitions(items: tuple[int, ...]) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Every sequence of non-empty disjoint blocks covering `items`."""
    if not items:
        yield ()
        return
    for size in range(1, len(items) + 1):
        for first in itertools.combinations(items, size):
            rest = tuple(e for e in items if e not in first)
            for tail in ordered_set_partitions(rest):
                yield (first,) + tail


def _colorings(elements: tuple[int, ...], colors: int) -> Iterator[Assignment]:
    for choice in itertools.product(range(1, colors + 1), repeat=len(elements)):
        yield tuple(zip(elements, choice))


def _section_options(elements: tuple[int, ...], beta: int) -> Iterator[Section]:
    for blocks in ordered_set_partitions(elements):
        flat = tuple(e for block in blocks for e in block)
        for coloring in _colorings(flat, beta):
            color = dict(coloring)
            yield tuple(tuple((e, color[e]) for e in sorted(block)) for block in blocks)


def _fill_sections(groups: list[tuple[int, ...]], beta: int, done: tuple = ()) -> Iterator[tuple[Section, ...]]:
    if len(done) == len(groups):
        yield done
        return
    for option in _section_options(groups[len(done)], beta):
        yield from _fill_sections(groups, beta, done + (option,))


def _locations(params: Params) -> range:
    return range(0 if params.gamma else 1, params.lambda_ + 1)


def _routings(n: int, params: Params) -> Iterator[tuple[tuple[int, ...], list[tuple[int, ...]]]]:
    """Every map of the elements to locations, as (special elements, one group per section)."""
    elements = range(1, n + 1)
    for routing in itertools.product(_locations(params), repeat=n):
        special = tuple(e for e, loc in zip(elements, routing) if loc == 0)
        groups = [tuple(e for e, loc in zip(elements, routing) if loc == j)
                  for j in range(1, params.lambda_ + 1)]
        yield special, groups


def _routed_structures(special: tuple[int, ...], groups: list[tuple[int, ...]],
                       params: Params) -> Iterator[tuple[Assignment, tuple[Section, ...]]]:
    for special_colors in _colorings(special, params.gamma):
        for sections in _fill_sections(groups, params.beta):
            yield special_colors, sections


def _raw_structures(n: int, params: Params) -> Iterator[tuple[Assignment, tuple[Section, ...]]]:
    for special, groups in _routings(n, params):
        yield from _routed_structures(special, groups, params)


def predict(n: int, params: Params, budget: EnumerationBudget | None = None) -> EnumerationBudget:
    budget = budget or EnumerationBudget()
    return budget.admit(h_egf(params, n)[n])


def enumerate_structures(n: int, params: Params, budget: EnumerationBudget | None = None) -> Iterator[BpaStructure]:
    """Yield every arrangement counted by H_n(lambda, beta, gamma) exactly once."""
    budget = predict(n, params, budget)
    logger.debug("Enumerating %s structures of %s on %s elements", budget.predicted, params, n)
    for special, sections in _raw_structures(n, params):
        yield BpaStructure(n, params, special, sections)


def sample_structures(n: int, params: Params, limit: int,
                      budget: EnumerationBudget | None = None) -> Iterator[BpaStructure]:
    """Every structure when at most `limit` exist, otherwise the first few
    structures of every routing, about `limit` in total."""
    budget = predict(n, params, budget)
    quota = None
    if budget.predicted > limit:
        quota = max(1, limit // len(_locations(params)) ** n)
        logger.debug("Sampling %s of %s structures of %s on %s elements",
                     quota, budget.predicted, params, n)
    for special, groups in _routings(n, params):
        for special_colors, sections in itertools.islice(_routed_structures(special, groups, params), quota):
            yield BpaStructure.trusted(n, params, special_colors, sections)


@lru_cache(maxsize=None)
def _section_option_count(size: int, beta: int) -> int:
    """Ordered set partitions of `size` elements, generated once, times their beta-colorings."""
    return sum(1 for _ in ordered_set_partitions(tuple(range(1, size + 1)))) * beta ** size


def count_structures(n: int, params: Params, budget: EnumerationBudget | None = None) -> int:
    """Walk every routing; each contributes gamma^|special| times the options of every section."""
    predict(n, params, budget)
    total = 0
    for special, groups in _routings(n, params):
        options = params.gamma ** len(special)
        for group in groups:
            options *= _section_option_count(len(group), params.beta)
        total += options
    return total


@lru_cache(maxsize=256)
def _empty_special_count(m: int, lambda_: int, beta: int, max_count: int) -> int:
    if lambda_ == 0:
        return 1 if m == 0 else 0
    return count_structures(m, Params(lambda_, beta, 0), EnumerationBudget(max_count))


@lru_cache(maxsize=1024)
def _band_surjective_colorings(size: int, gamma: int, beta: int, bands: int) -> int:
    """Colorings of `size` elements with gamma + bands*beta colors hitting every beta-band."""
    hits = 0
    for colors in itertools.product(range(gamma + bands * beta), repeat=size):
        if len({(c - gamma) // beta for c in colors if c >= gamma}) == bands:
            hits += 1
    return hits


def count_restricted_thm28(n: int, lambda_: int, beta: int, gamma: int,
                           budget: EnumerationBudget | None = None) -> int:
    """Sum over k = 0..n of the arrangements whose special section has
    gamma + k beta compartments with each of the k beta-bands used, next to
    lambda - 1 ordinary sections."""
    if lambda_ < 1 or beta < 1:
        raise MethodNotApplicableError("The restricted count needs lambda >= 1 and beta >= 1")
    Params(lambda_, beta, gamma)
    budget = budget or EnumerationBudget()
    budget.admit(sum(h_gamma_shift_value(lambda_ - 1, beta, gamma + k * beta, n) for k in range(n + 1)))

    total = 0
    for k in range(n + 1):
        for size in range(n + 1):
            rest = _empty_special_count(n - size, lambda_ - 1, beta, budget.max_count)
            if not rest:
                continue
            total += binomial(n, size) * _band_surjective_colorings(size, gamma, beta, k) * rest
    logger.debug("Restricted count n=%s lambda=%s beta=%s gamma=%s: %s", n, lambda_, beta, gamma, total)
    return total

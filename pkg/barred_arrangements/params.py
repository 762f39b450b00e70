from dataclasses import dataclass, replace
from typing import Iterator

from .exceptions import InvalidParamsError
from .numeric import as_count


@dataclass(frozen=True, order=True)
class Params:
    """The point (lambda, beta, gamma) indexing H_n(lambda, beta, gamma).

    lambda_ counts the ordinary sections (one per bar), beta the compartments
    of every ordinary block and gamma the compartments of the special section.
    lambda_ == 0 is legal and means H_n = gamma^n; beta is then ignored.
    """
    lambda_: int
    beta: int = 1
    gamma: int = 0

    def __post_init__(self):
        for name in ('lambda_', 'beta', 'gamma'):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int):
                raise InvalidParamsError(f"{name.rstrip('_')} must be an integer, got {value!r}")
            if value < 0:
                raise InvalidParamsError(f"{name.rstrip('_')} must be non-negative, got {value}")
        if self.lambda_ >= 1 and self.beta < 1:
            raise InvalidParamsError("beta must be at least 1 when lambda >= 1")
        if self.lambda_ == 0 and self.gamma == 0:
            raise InvalidParamsError("(lambda, gamma) must not both be 0")

    def with_(self, **changes) -> "Params":
        return replace(self, **changes)

    def as_dict(self) -> dict:
        return {'lambda': self.lambda_, 'beta': self.beta, 'gamma': self.gamma}

    def __str__(self):
        return f"H(lambda={self.lambda_}, beta={self.beta}, gamma={self.gamma})"


@dataclass(frozen=True)
class HTable:
    """H_0..H_N for one parameter point, tagged with the engine that built it."""
    params: Params
    values: tuple[int, ...]
    method: str

    def __post_init__(self):
        object.__setattr__(self, 'values', tuple(as_count(v) for v in self.values))
        if not self.values:
            raise ValueError("An H table holds at least H_0")
        if self.values[0] != 1:
            raise ValueError(f"H_0 must be 1 for {self.params}, got {self.values[0]}")

    @property
    def n_max(self) -> int:
        return len(self.values) - 1

    def __getitem__(self, n: int) -> int:
        return self.values[n]

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self) -> Iterator[int]:
        return iter(self.values)

    def prefix(self, n_max: int) -> "HTable":
        return HTable(self.params, self.values[:n_max + 1], self.method)

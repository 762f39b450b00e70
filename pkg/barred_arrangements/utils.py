from fractions import Fraction
from typing import Optional

from django.conf import settings

from .counting import METHODS
from .numeric import parse_exact
from .params import Params


def get_int_param(query_params, name: str, default: Optional[int] = None, minimum: int = 0,
                  maximum: Optional[int] = None) -> int:
    raw = query_params.get(name)
    if raw is None or raw == '':
        if default is None:
            raise ValueError(f"'{name}' is required")
        return default
    try:
        value = int(raw)
    except (TypeError, ValueError):
        raise ValueError(f"'{name}' must be an integer, got {raw!r}")
    if value < minimum:
        raise ValueError(f"'{name}' must be at least {minimum}, got {value}")
    if maximum is not None and value > maximum:
        raise ValueError(f"'{name}' must be at most {maximum}, got {value}")
    return value


def get_n(query_params, name: str = 'n', default: int = 10) -> int:
    return get_int_param(query_params, name, default, maximum=settings.BPA_API_MAX_N)


def get_grid_bound(query_params, name: str, default: int, minimum: int = 0) -> int:
    return get_int_param(query_params, name, default, minimum, maximum=settings.BPA_API_MAX_GRID)


def get_params(query_params) -> Params:
    return Params(
        get_int_param(query_params, 'lambda', 1),
        get_int_param(query_params, 'beta', 1),
        get_int_param(query_params, 'gamma', 0),
    )


def get_epsilon(raw: Optional[str], default: str = '1/10') -> Fraction:
    value = Fraction(parse_exact(raw or default))
    if value <= 0:
        raise ValueError(f"epsilon must be positive, got {raw}")
    return value


def validate_method(method: Optional[str]) -> bool:
    return method in METHODS

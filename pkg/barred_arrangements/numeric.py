"""
Exact integer and rational primitives shared by every engine.

Counts are plain Python ints (unbounded) and ratios are fractions.Fraction,
which always keeps lowest terms with a positive denominator.
"""
import math
import threading
from fractions import Fraction
from typing import Callable, Iterable, Sequence, TypeAlias

CountValue: TypeAlias = int
ExactRatio: TypeAlias = Fraction
CountSequence: TypeAlias = tuple[int, ...]

Exact: TypeAlias = int | Fraction


_factorials: list[int] = [1]
_factorial_lock = threading.Lock()


def factorial(n: int) -> int:
    if n < 0:
        raise ValueError(f"factorial of negative number {n}")
    if n < len(_factorials):
        return _factorials[n]
    with _factorial_lock:
        # another thread may have grown the table while we waited
        while len(_factorials) <= n:
            _factorials.append(_factorials[-1] * len(_factorials))
        return _factorials[n]


def binomial(n: int, k: int) -> int:
    if n < 0:
        raise ValueError(f"binomial needs n >= 0, got {n}")
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def multinomial(parts: Iterable[int]) -> int:
    parts = list(parts)
    if any(p < 0 for p in parts):
        raise ValueError(f"multinomial parts must be non-negative: {parts}")
    result = factorial(sum(parts))
    for p in parts:
        result //= factorial(p)
    return result


def gen_factorial(x: Exact, alpha: int, n: int) -> Exact:
    """(x|alpha)_n = x (x - alpha) ... (x - (n-1) alpha); 1 when n == 0."""
    if n < 0:
        raise ValueError(f"gen_factorial needs n >= 0, got {n}")
    if alpha == 0:
        return x ** n
    result = 1
    for j in range(n):
        result *= x - j * alpha
    return result


def forward_difference(f: Callable[[int], Exact] | Sequence[Exact], i: int) -> Exact:
    """i-th forward difference at 0: sum over s in 0..i of (-1)^(i-s) C(i,s) f(s)."""
    if i < 0:
        raise ValueError(f"forward_difference needs i >= 0, got {i}")
    value = f.__getitem__ if isinstance(f, Sequence) else f
    total = 0
    for s in range(i + 1):
        term = binomial(i, s) * value(s)
        total += term if (i - s) % 2 == 0 else -term
    return total


def binomial_convolution(a: Sequence[Exact], b: Sequence[Exact]) -> list[Exact]:
    """c_n = sum_r C(n,r) a_r b_(n-r), truncated to the shorter input."""
    length = min(len(a), len(b))
    out = []
    for n in range(length):
        total = 0
        for r in range(n + 1):
            if a[r] and b[n - r]:
                total += binomial(n, r) * a[r] * b[n - r]
        out.append(total)
    return out


def powers(base: Exact, count: int) -> list[Exact]:
    """[base^0, ..., base^(count-1)] with 0^0 == 1."""
    out = []
    value = 1
    for _ in range(count):
        out.append(value)
        value *= base
    return out


def as_count(value: Exact) -> int:
    """Narrow an exact value to a non-negative integer count."""
    if isinstance(value, Fraction):
        if value.denominator != 1:
            raise ValueError(f"count is not integral: {value}")
        value = value.numerator
    if value < 0:
        raise ValueError(f"count is negative: {value}")
    return int(value)


def format_exact(value: Exact) -> str:
    if isinstance(value, Fraction) and value.denominator != 1:
        return f"{value.numerator}/{value.denominator}"
    return str(int(value))


def parse_exact(text: str) -> Exact:
    """Accepts '7', '-3', '1/10' or '0.25'; integers come back as int."""
    try:
        value = Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as e:
        raise ValueError(f"Not an exact number: {text!r}") from e
    return value.numerator if value.denominator == 1 else value


def format_decimal(value: Fraction, digits: int = 8) -> str:
    """Fixed-point rendering of a fraction, rounded half away from zero."""
    scale = 10 ** digits
    scaled = abs(value) * scale
    whole = int(scaled + Fraction(1, 2))
    sign = "-" if value < 0 and whole else ""
    text = str(whole).rjust(digits + 1, "0")
    return f"{sign}{text[:-digits]}.{text[-digits:]}"

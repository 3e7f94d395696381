"""Integer sequences driving the calculus: Fibonacci numbers or a custom list.

Every quantity that the operator calculus needs from the underlying
sequence (F-factorials, falling F-factorials, fibonomial coefficients)
is computed here, exactly, from a :class:`SequenceSpec`.
"""

from __future__ import annotations

import enum
import threading
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Union

__all__ = [
    "SequenceKind",
    "SequenceSpec",
    "FIBONACCI",
    "SequenceError",
    "OutOfRangeError",
    "DegenerateSequenceError",
    "term",
    "terms",
    "f_factorial",
    "f_falling",
    "fibonomial",
]


class SequenceError(ValueError):
    pass


class OutOfRangeError(SequenceError, IndexError):
    """A custom sequence was asked for a term past its last entry."""


class DegenerateSequenceError(SequenceError):
    """A zero term appeared where the calculus needs a nonzero one."""


class SequenceKind(enum.Enum):
    FIBONACCI = "fibonacci"
    CUSTOM = "custom"


@dataclass(frozen=True)
class SequenceSpec:
    kind: SequenceKind = SequenceKind.FIBONACCI
    values: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.kind is SequenceKind.FIBONACCI and self.values:
            raise ValueError("the Fibonacci spec takes no explicit values")
        if self.kind is SequenceKind.CUSTOM:
            values = tuple(self.values)
            for v in values:
                if isinstance(v, bool) or not isinstance(v, int) or v < 0:
                    raise ValueError(f"custom terms must be non-negative integers, got {v!r}")
            object.__setattr__(self, "values", values)

    @classmethod
    def fibonacci(cls) -> "SequenceSpec":
        return cls(SequenceKind.FIBONACCI)

    @classmethod
    def custom(cls, values: Iterable[int]) -> "SequenceSpec":
        return cls(SequenceKind.CUSTOM, tuple(values))

    @classmethod
    def from_file(cls, path: Union[str, Path]) -> "SequenceSpec":
        """Read one non-negative integer per line; line 1 is a_0.

        Blank lines and ``#`` comments are skipped.
        """
        values = []
        text = Path(path).read_text()
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            try:
                v = int(line)
            except ValueError:
                raise SequenceError(f"{path}:{lineno}: not an integer: {raw.strip()!r}") from None
            if v < 0:
                raise SequenceError(f"{path}:{lineno}: negative term {v}")
            values.append(v)
        if not values:
            raise SequenceError(f"{path}: no terms")
        return cls.custom(values)

    def __len__(self) -> int:
        if self.kind is SequenceKind.FIBONACCI:
            raise TypeError("the Fibonacci sequence is unbounded")
        return len(self.values)

    def describe(self) -> str:
        if self.kind is SequenceKind.FIBONACCI:
            return "Fibonacci"
        head = ", ".join(map(str, self.values[:8]))
        tail = ", ..." if len(self.values) > 8 else ""
        return f"custom [{head}{tail}]"


FIBONACCI = SequenceSpec.fibonacci()

_fib_lock = threading.Lock()
_fib_cache = [0, 1]


def _fib(n: int) -> int:
    cache = _fib_cache
    if n < len(cache):
        return cache[n]
    with _fib_lock:
        while len(cache) <= n:
            cache.append(cache[-1] + cache[-2])
        return cache[n]


def term(spec: SequenceSpec, n: int) -> int:
    """Return F_n (or a_n for a custom spec)."""
    if n < 0:
        raise ValueError(f"index must be non-negative, got {n}")
    if spec.kind is SequenceKind.FIBONACCI:
        return _fib(n)
    if n >= len(spec.values):
        raise OutOfRangeError(
            f"custom sequence has {len(spec.values)} terms; index {n} requested"
        )
    return spec.values[n]


def terms(spec: SequenceSpec, count: int) -> list[int]:
    return [term(spec, n) for n in range(count)]


def _nonzero_term(spec: SequenceSpec, n: int) -> int:
    t = term(spec, n)
    if t == 0:
        raise DegenerateSequenceError(f"term {n} of the {spec.describe()} sequence is zero")
    return t


def f_falling(spec: SequenceSpec, n: int, k: int) -> int:
    """F_n F_{n-1} ... F_{n-k+1}; the empty product for k = 0."""
    if n < 0 or k < 0:
        raise ValueError("n and k must be non-negative")
    if k > n:
        raise ValueError(f"falling factorial needs k <= n, got n={n}, k={k}")
    out = 1
    for i in range(n - k + 1, n + 1):
        out *= term(spec, i)
    return out


def f_factorial(spec: SequenceSpec, n: int) -> int:
    """F_n! = F_n ... F_1, with F_0! = 1. Zero factors are an error."""
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    out = 1
    for i in range(1, n + 1):
        out *= _nonzero_term(spec, i)
    return out


def fibonomial(spec: SequenceSpec, n: int, k: int) -> Union[int, Fraction]:
    """Fibonomial coefficient F_n!/(F_k! F_{n-k}!), zero when k > n.

    Always an integer for Fibonacci.  A custom sequence may give a
    non-integral quotient, in which case a :class:`Fraction` is returned.
    """
    if n < 0 or k < 0:
        raise ValueError("n and k must be non-negative")
    if k > n:
        return 0
    k = min(k, n - k) if spec.kind is SequenceKind.FIBONACCI else k
    num = f_falling(spec, n, k)
    den = f_factorial(spec, k)
    q, r = divmod(num, den)
    if r == 0:
        return q
    return Fraction(num, den)

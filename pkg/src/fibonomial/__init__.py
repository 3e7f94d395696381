"""Exact finite fibonomial operator calculus and the Fibonacci cobweb poset."""

from .sequences import (
    FIBONACCI,
    DegenerateSequenceError,
    OutOfRangeError,
    SequenceKind,
    SequenceSpec,
    f_factorial,
    f_falling,
    fibonomial,
    term,
)
from .poly import Polynomial, parse_poly, parse_rational

__version__ = "0.1.0"

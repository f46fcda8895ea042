"""Digit-window Fourier analysis and equidistribution experiments for
digital functions along squares of primes."""

from .digits import DigitWindowSpec, checked_pow, digit_sum, rep_low, rep_window, to_digits
from .errors import CapacityError, DomainError, PreconditionError
from .qmult import (
    StronglyQMultiplicative,
    eval_truncated,
    evaluate,
    is_proper,
    make_constant_one,
    make_digit_exponential,
    phase_of,
    thue_morse,
)

__all__ = [
    "CapacityError",
    "DigitWindowSpec",
    "DomainError",
    "PreconditionError",
    "StronglyQMultiplicative",
    "checked_pow",
    "digit_sum",
    "eval_truncated",
    "evaluate",
    "is_proper",
    "make_constant_one",
    "make_digit_exponential",
    "phase_of",
    "rep_low",
    "rep_window",
    "thue_morse",
    "to_digits",
]

__version__ = "0.1.0"

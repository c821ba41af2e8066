"""Precision bookkeeping and exact fixed-point accumulation.

All arbitrary-precision values are mpmath ``mpf``/``mpc`` numbers.  Functions in
this package take an explicit ``precision_bits`` and switch the global mpmath
context locally with ``mpmath.workprec``.
"""
from __future__ import annotations

import math

import mpmath
from mpmath import mpf

GUARD_BITS = 32


INPUT_BITS = 384


def as_real(value):
    """mpf without rounding away precision: mpf inputs pass through, others parse at INPUT_BITS."""
    if isinstance(value, mpf):
        return value
    with mpmath.workprec(INPUT_BITS):
        return mpf(value)


def as_complex(value):
    """mpc counterpart of :func:`as_real`."""
    if isinstance(value, mpmath.mpc):
        return value
    if isinstance(value, mpf):
        return mpmath.mpc(value, 0)
    with mpmath.workprec(INPUT_BITS):
        return mpmath.mpc(value)


def exact_bits(value) -> int:
    """Mantissa length of an mpf (0 for zero)."""
    return int(value._mpf_[3]) if isinstance(value, mpf) else INPUT_BITS


def make_complex(re, im):
    """mpc from two mpf parts without rounding either."""
    with mpmath.workprec(max(exact_bits(re), exact_bits(im), 53) + 8):
        return mpmath.mpc(re, im)


def digits_to_bits(digits: int) -> int:
    """Decimal digits to working bits, including the standard guard."""
    return math.ceil(digits * math.log2(10)) + GUARD_BITS


def bits_for_tolerance(tolerance) -> int:
    """Bits needed so that one unit in the last place is far below ``tolerance``."""
    tol = mpf(tolerance)
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    return max(53, int(math.ceil(-float(mpmath.log(tol, 2)))) + 16)


def log2_abs(value) -> float:
    """log2 |value| as a float, -inf for zero.  Safe for huge mpf values."""
    if not value:
        return float("-inf")
    return float(mpmath.log(abs(value), 2))


def round_to(value, precision_bits: int):
    """Round an mpf/mpc to ``precision_bits``."""
    with mpmath.workprec(precision_bits):
        return +value


def upper(value, factor: float = 1.0 + 2.0**-20):
    """Inflate a nonnegative bound slightly to absorb rounding in its own evaluation."""
    return abs(mpf(value)) * factor


class FixedPointSum:
    """Exact accumulator on the grid 2**-frac_bits.

    Each added term is rounded once to the grid (error at most 2**-frac_bits);
    the running total is a Python int, so the result does not depend on the
    order or grouping of additions.  This is what makes partitioned sums
    bit-reproducible for any number of workers.
    """

    __slots__ = ("frac_bits", "total", "count")

    def __init__(self, frac_bits: int):
        self.frac_bits = frac_bits
        self.total = 0
        self.count = 0

    def add(self, value) -> None:
        self.count += 1
        if not value:
            return
        sign, man, exp, _ = as_real(value)._mpf_
        if sign:
            man = -man
        shift = exp + self.frac_bits
        if shift >= 0:
            self.total += man << shift
        else:
            # round half up on the grid
            self.total += ((man >> (-shift - 1)) + 1) >> 1

    def merge(self, other: "FixedPointSum") -> None:
        if other.frac_bits != self.frac_bits:
            raise ValueError("grid mismatch")
        self.total += other.total
        self.count += other.count

    def value(self, precision_bits: int):
        with mpmath.workprec(precision_bits):
            return mpmath.ldexp(mpf(self.total), -self.frac_bits)

    def rounding_error(self):
        """Upper bound on the accumulated grid-rounding error."""
        return mpmath.ldexp(mpf(self.count), -self.frac_bits)


def format_sci(value, digits: int) -> str:
    """Scientific notation with an explicit exponent; exact zero prints as ``0``."""
    value = as_real(value)
    if not value:
        return "0"
    text = mpmath.nstr(value, digits, strip_zeros=False, min_fixed=1, max_fixed=0)
    return text if "e" in text else text + "e+0"

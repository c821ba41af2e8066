"""Dirichlet coefficient sources a_n for the generalized transform R_c.

A provider exposes the coefficients, the abscissa of absolute convergence and an
envelope ``|a_n| <= A * n**alpha`` used for rigorous tail bounds.  It also
evaluates the Dirichlet sum f(s) at real s > sigma, which the accelerated
series needs for its explicit head terms.
"""
from __future__ import annotations

import math

import mpmath
import numpy as np
from mpmath import mpf

from .errors import DomainError
from .precision import as_real
from .numtheory import complex_zeta, mobius_values, zeta_even, zeta_odd


class CoefficientProvider:
    name = "abstract"
    sigma = 1.0
    envelope_constant = 1.0
    envelope_exponent = 0.0
    # largest n with a_n != 0, or None for infinite support
    support = None
    # the series use a_n * n**-shift; nonzero only for ShiftedProvider
    shift = 0

    def coefficients(self, n_max: int) -> np.ndarray:
        """Integer array of length n_max + 1 with entry n equal to a_n (entry 0 unused)."""
        raise NotImplementedError

    def dirichlet_value(self, s, precision_bits: int):
        """f(s) = sum a_n n^-s for real s > sigma."""
        raise NotImplementedError

    def check_abscissa(self, c) -> None:
        if not as_real(c) > self.sigma:
            raise DomainError(
                f"c = {c} must exceed the abscissa of absolute convergence {self.sigma} of {self.name}"
            )

    def tail_sum_bound(self, n_max: int, exponent):
        """Upper bound on sum_{n > n_max} |a_n| n**-exponent."""
        if self.support is not None and n_max >= self.support:
            return mpf(0)
        q = mpf(exponent) - self.envelope_exponent
        if q <= 1:
            raise DomainError("tail sum diverges")
        # t**(alpha - exponent) is decreasing, so the sum from n_max+1 is below the integral from n_max
        return self.envelope_constant * mpf(n_max) ** (1 - q) / (q - 1)

    def abs_sum_bound(self, exponent):
        """Upper bound on sum_{n >= 1} |a_n| n**-exponent."""
        if self.support is not None:
            return self.envelope_constant * sum(
                mpf(n) ** (self.envelope_exponent - exponent) for n in range(1, self.support + 1)
            )
        q = mpf(exponent) - self.envelope_exponent
        return self.envelope_constant * (1 + 1 / (q - 1))

    def __reduce__(self):
        # the shared instances unpickle to themselves in worker processes
        if PROVIDERS.get(self.name) is self:
            return (provider_by_name, (self.name,))
        return super().__reduce__()

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.name}>"


def _zeta_at_real(s, precision_bits: int):
    s = as_real(s)
    if s == int(s):
        k = int(s)
        if k % 2 == 0:
            return zeta_even(k // 2, precision_bits)
        return zeta_odd((k - 1) // 2, precision_bits)
    return complex_zeta(s, precision_bits).real


class MobiusProvider(CoefficientProvider):
    """a_n = mu(n), f(s) = 1/zeta(s), sigma = 1."""

    name = "mobius"

    def coefficients(self, n_max: int) -> np.ndarray:
        return mobius_values(n_max)[: n_max + 1]

    def dirichlet_value(self, s, precision_bits: int):
        z = _zeta_at_real(s, precision_bits + 8)
        with mpmath.workprec(precision_bits):
            return 1 / z


class ZetaProvider(CoefficientProvider):
    """a_n = 1, f(s) = zeta(s), sigma = 1."""

    name = "zeta"

    def coefficients(self, n_max: int) -> np.ndarray:
        a = np.ones(n_max + 1, dtype=np.int8)
        a[0] = 0
        return a

    def dirichlet_value(self, s, precision_bits: int):
        return _zeta_at_real(s, precision_bits)


class UnitProvider(CoefficientProvider):
    """a_1 = 1 and a_n = 0 otherwise; f = 1 and R_c(x) = x exp(-x)."""

    name = "unit"
    sigma = 0.0
    support = 1

    def coefficients(self, n_max: int) -> np.ndarray:
        a = np.zeros(n_max + 1, dtype=np.int8)
        a[1] = 1
        return a

    def dirichlet_value(self, s, precision_bits: int):
        return mpf(1)


class ShiftedProvider(CoefficientProvider):
    """Coefficients a_n n^-shift of ``base``, so f(s) becomes f(s + shift)."""

    def __init__(self, base: CoefficientProvider, shift):
        if base.shift:
            raise DomainError("shifting a shifted provider is not supported")
        self.base = base
        self.shift = as_real(shift)
        self.name = f"{base.name}/n^{mpmath.nstr(self.shift, 10)}"
        self.sigma = base.sigma - float(self.shift)
        self.envelope_constant = base.envelope_constant
        self.envelope_exponent = base.envelope_exponent - float(self.shift)
        self.support = base.support

    def coefficients(self, n_max: int) -> np.ndarray:
        return self.base.coefficients(n_max)

    def dirichlet_value(self, s, precision_bits: int):
        return self.base.dirichlet_value(mpmath.fadd(as_real(s), self.shift, exact=True), precision_bits)


MOBIUS = MobiusProvider()
ZETA = ZetaProvider()
UNIT = UnitProvider()

PROVIDERS = {p.name: p for p in (MOBIUS, ZETA, UNIT)}


def provider_by_name(name: str) -> CoefficientProvider:
    try:
        return PROVIDERS[name]
    except KeyError:
        raise DomainError(f"unknown provider {name!r}; choose from {sorted(PROVIDERS)}") from None


def log2_head_bound(provider: CoefficientProvider, c: float) -> float:
    """log2 of an upper bound on |f(s)| for real s >= c."""
    return math.log2(float(provider.abs_sum_bound(c)))

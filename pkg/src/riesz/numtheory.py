"""Number-theoretic primitives.

Exact: Mobius values, Bernoulli numbers and the coefficients of (x/2)coth(x/2).
High precision: zeta at positive integers, complex zeta, complex log-gamma.
"""
from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction

import mpmath
import numpy as np
from mpmath import mpc, mpf

from .errors import DomainError, ResourceError
from .precision import GUARD_BITS, as_complex, make_complex, round_to

Rational = Fraction

MAX_SIEVE_LIMIT = 2**31


# ---------------------------------------------------------------- Mobius


@dataclass(frozen=True)
class MobiusTable:
    """mu(n) for 1 <= n <= limit.  ``values[0]`` is an unused 0."""

    limit: int
    values: np.ndarray

    def __getitem__(self, n: int) -> int:
        if not 1 <= n <= self.limit:
            raise IndexError(n)
        return int(self.values[n])

    def __len__(self) -> int:
        return self.limit


def mobius_sieve(limit: int) -> MobiusTable:
    """Mobius function up to ``limit`` by an Eratosthenes-style sieve."""
    if limit < 1:
        raise DomainError("limit must be >= 1")
    if limit > MAX_SIEVE_LIMIT:
        raise ResourceError(f"sieve limit {limit} exceeds {MAX_SIEVE_LIMIT}")

    is_prime = np.ones(limit + 1, dtype=bool)
    is_prime[:2] = False
    for i in range(2, math.isqrt(limit) + 1):
        if is_prime[i]:
            is_prime[i * i :: i] = False

    mu = np.ones(limit + 1, dtype=np.int8)
    mu[0] = 0
    for p in np.nonzero(is_prime)[0]:
        p = int(p)
        mu[p::p] *= -1
        if p * p <= limit:
            mu[p * p :: p * p] = 0
    mu.setflags(write=False)
    return MobiusTable(limit, mu)


_mobius_lock = threading.Lock()
_mobius_cache: MobiusTable | None = None


def mobius_values(limit: int) -> np.ndarray:
    """Shared read-only mu array of length >= limit + 1 (grown on demand)."""
    global _mobius_cache
    with _mobius_lock:
        if _mobius_cache is None or _mobius_cache.limit < limit:
            size = 1 << max(10, (limit - 1).bit_length())
            _mobius_cache = mobius_sieve(size)
        return _mobius_cache.values


# ---------------------------------------------------------------- Bernoulli

_bern_lock = threading.Lock()
_bern_even: list[Fraction] = [Fraction(1)]


def _tangent_numbers(n: int) -> list[int]:
    # Brent-Harvey in-place recurrence; T[k] is the k-th tangent number.
    T = [0] * (n + 1)
    T[1] = 1
    for k in range(2, n + 1):
        T[k] = (k - 1) * T[k - 1]
    for k in range(2, n + 1):
        for j in range(k, n + 1):
            T[j] = (j - k) * T[j - 1] + (j - k + 2) * T[j]
    return T


def bernoulli_even(count: int) -> list[Fraction]:
    """[B_0, B_2, ..., B_{2(count-1)}] as exact fractions."""
    if count < 1:
        raise DomainError("count must be >= 1")
    with _bern_lock:
        have = len(_bern_even)
        if have < count:
            n = max(count - 1, 2 * (have - 1), 16)
            T = _tangent_numbers(n)
            out = [Fraction(1)]
            for k in range(1, n + 1):
                four = 1 << (2 * k)
                b = Fraction(2 * k * T[k], four * (four - 1))
                out.append(b if k % 2 else -b)
            _bern_even[:] = out
        return _bern_even[:count]


_coth_lock = threading.Lock()
_coth: list[Fraction] = []


def bernoulli_coefficients(count: int) -> list[Fraction]:
    """c_{2n} = B_{2n}/(2n)! for n = 0..count-1, the even Taylor coefficients of (x/2)coth(x/2)."""
    if count < 1:
        raise DomainError("count must be >= 1")
    with _coth_lock:
        if len(_coth) < count:
            bern = bernoulli_even(count)
            fact = math.factorial(2 * (len(_coth) - 1)) if _coth else 1
            for n in range(len(_coth), count):
                if n:
                    fact *= (2 * n - 1) * (2 * n)
                _coth.append(bern[n] / fact)
        return _coth[:count]


# ---------------------------------------------------------------- zeta at integers


def zeta_even(k: int, precision_bits: int):
    """zeta(2k) from the Bernoulli closed form."""
    if k < 1:
        raise DomainError("k must be >= 1")
    c = bernoulli_coefficients(k + 1)[k]
    with mpmath.workprec(precision_bits + GUARD_BITS):
        v = abs(mpf(c.numerator) / c.denominator) * (2 * mpmath.pi) ** (2 * k) / 2
    return round_to(v, precision_bits)


def zeta_real(s, precision_bits: int):
    """zeta(s) for real s > 1 by Euler-Maclaurin summation.

    For real s the derivatives of t**-s alternate in sign with monotone
    magnitude, so the first omitted correction bounds the remainder; the loop
    stops once that term is below 2**-(precision + guard).
    """
    wp = precision_bits + GUARD_BITS
    with mpmath.workprec(wp + 10):
        s = mpf(s)
        if s <= 1:
            raise DomainError("zeta_real needs s > 1")
        eps = mpmath.ldexp(1, -wp)
        N = int(wp * math.log(2) / (2 * math.pi)) + 10
        while True:
            total = mpmath.fsum(mpf(n) ** (-s) for n in range(1, N))
            Nm = mpf(N)
            total += Nm ** (1 - s) / (s - 1) + Nm ** (-s) / 2
            # rising factorial s(s+1)...(s+2j-2) and N**(-s-2j+1), updated per j
            rising = s
            power = Nm ** (-s - 1)
            ok = False
            jmax = int(math.pi * N)
            bern = bernoulli_coefficients(jmax + 2)
            for j in range(1, jmax + 1):
                c = bern[j]
                term = mpf(c.numerator) / c.denominator * rising * power
                total += term
                rising *= (s + 2 * j - 1) * (s + 2 * j)
                power /= Nm * Nm
                c = bern[j + 1]
                nxt = abs(mpf(c.numerator) / c.denominator * rising * power)
                if nxt < eps * total:
                    ok = True
                    break
            if ok:
                break
            N *= 2
    return round_to(total, precision_bits)


def zeta_odd(k: int, precision_bits: int):
    """zeta(2k+1) for k >= 1."""
    if k < 1:
        raise DomainError("k must be >= 1")
    return zeta_real(2 * k + 1, precision_bits)


# ---------------------------------------------------------------- complex zeta


def _borwein_weights(n: int) -> list[int]:
    # d_k = n * sum_{i<=k} (n+i-1)! 4^i / ((n-i)! (2i)!), all exact integers
    d = []
    acc = 0
    term = Fraction(1, n)  # i = 0 term of (n+i-1)!/((n-i)!(2i)!) * 4^i
    for i in range(n + 1):
        if i:
            term *= Fraction(4 * (n + i - 1) * (n - i + 1), (2 * i - 1) * (2 * i))
        acc += term
        d.append(int(n * acc))
    return d


_weights_cache: dict[int, list[int]] = {}


def _eta_zeta(s, wp: int):
    t = abs(s.imag)
    n = int(
        (wp * math.log(2) + math.pi * t / 2 + math.log(3 * (1 + 2 * t)) + 10)
        / math.log(3 + math.sqrt(8))
    ) + 1
    d = _weights_cache.get(n)
    if d is None:
        d = _weights_cache.setdefault(n, _borwein_weights(n))
    dn = d[n]
    acc = mpc(0)
    for k in range(n):
        w = d[k] - dn
        term = w * mpmath.power(k + 1, -s)
        acc = acc - term if k % 2 else acc + term
    return -acc / (dn * (1 - mpmath.power(2, 1 - s)))


def complex_zeta(s, precision_bits: int):
    """zeta(s) for complex s != 1.

    Re s >= 0 uses the Borwein alternating (eta) series with exact integer
    weights; Re s < 0 goes through the functional equation.
    """
    s = as_complex(s)
    if s == 1:
        raise DomainError("zeta has a pole at s = 1")
    # the eta series loses about pi|t|/2 / ln 2 bits to cancellation at height t
    t = float(abs(s.imag))
    wp = precision_bits + GUARD_BITS + int(math.pi * t / 2 / math.log(2)) + int(math.log2(2 + t))
    with mpmath.workprec(wp):
        if s.real < 0:
            if s.imag == 0 and s.real == int(s.real) and int(s.real) % 2 == 0:
                v = mpc(0)
            else:
                one_minus = 1 - s
                v = (
                    mpmath.power(2, s)
                    * mpmath.power(mpmath.pi, s - 1)
                    * mpmath.sin(mpmath.pi * s / 2)
                    * mpmath.exp(_log_gamma(one_minus, wp))
                    * _eta_zeta(one_minus, wp)
                )
        else:
            v = _eta_zeta(s, wp)
    return round_to(v, precision_bits)


# ---------------------------------------------------------------- log gamma


def _log_gamma(z, wp: int):
    # Stirling after shifting Re z up to r0; principal logs of the shift factors
    # keep the standard branch (cut along the negative real axis).
    r0 = 0.12 * wp + 10
    shift = max(0, int(math.ceil(r0 - float(z.real))))
    w = z + shift
    lw = mpmath.log(w)
    total = (w - mpf(0.5)) * lw - w + mpmath.log(2 * mpmath.pi) / 2
    eps = mpmath.ldexp(1, -wp)
    w2 = w * w
    wk = w
    kmax = int(math.pi * float(abs(w))) + 2
    bern = bernoulli_even(kmax + 1)
    for k in range(1, kmax + 1):
        b = bern[k]
        term = (mpf(b.numerator) / b.denominator) / ((2 * k) * (2 * k - 1) * wk)
        total += term
        if abs(term) < eps * (1 + abs(total)):
            break
        wk *= w2
    if shift:
        total -= mpmath.fsum(mpmath.log(z + j) for j in range(shift))
    return total


def log_gamma_complex(z, precision_bits: int):
    """Principal-branch log Gamma(z)."""
    z = as_complex(z)
    if z.imag == 0 and z.real <= 0 and z.real == int(z.real):
        raise DomainError(f"Gamma has a pole at {z.real}")
    wp = precision_bits + GUARD_BITS + int(math.log2(2 + float(abs(z))))
    with mpmath.workprec(wp):
        v = _log_gamma(z, wp)
    return round_to(v, precision_bits)


def gamma_complex(z, precision_bits: int):
    """Gamma(z) as exp(log Gamma(z))."""
    z = as_complex(z)
    lg = log_gamma_complex(z, precision_bits + 16 + int(math.log2(2 + float(abs(z)))))
    with mpmath.workprec(precision_bits + 16):
        v = mpmath.exp(lg)
    return round_to(v, precision_bits)


def gauss_pi(s, precision_bits: int):
    """Gauss factorial Pi(s) = Gamma(s + 1)."""
    s = as_complex(s)
    s1 = make_complex(mpmath.fadd(s.real, 1, exact=True), s.imag)
    return gamma_complex(s1, precision_bits)


def kappa(s, precision_bits: int):
    """Completed zeta Gamma(s/2) pi^(-s/2) zeta(s); symmetric under s -> 1 - s."""
    s = as_complex(s)
    wp = precision_bits + 16
    half = make_complex(mpmath.ldexp(s.real, -1), mpmath.ldexp(s.imag, -1))
    g = gamma_complex(half, wp)
    z = complex_zeta(s, wp)
    with mpmath.workprec(wp):
        v = g * mpmath.power(mpmath.pi, -half) * z
    return round_to(v, precision_bits)

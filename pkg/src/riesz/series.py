"""Series evaluators for Riesz(x) and the generalized transform R_c(x).

Three routes:

* ``maclaurin_riesz``: the alternating power series with exact rational
  coefficients 2/(c_{2k} (k-1)!) in y = x/(4 pi^2).
* ``theorem1_series``: x * sum a_n n^-c exp(-x/n^c).
* ``kummer_series``: m explicit power-series terms plus the accelerated tail
  x * sum a_n n^-c F_m(-x/n^c), where F_m is the exponential remainder.

Each returns an :class:`EvaluationResult` whose ``error_bound`` covers both the
truncation and the arithmetic.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace

import mpmath
from mpmath import mpf

from .errors import DomainError, PlannerError
from .numtheory import bernoulli_coefficients
from .precision import GUARD_BITS, FixedPointSum, as_real, bits_for_tolerance, upper
from .providers import MOBIUS, CoefficientProvider, log2_head_bound

LOG2E = math.log2(math.e)


class Method(str, enum.Enum):
    MACLAURIN = "maclaurin"
    THEOREM1 = "theorem1"
    KUMMER = "kummer"
    ZEROS = "zeros"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class SeriesParams:
    """Truncation parameters.  For the Maclaurin route ``n_max`` is the number of terms."""

    c: float
    m: int
    n_max: int
    precision_bits: int

    def __post_init__(self):
        if self.m < 0:
            raise DomainError("m must be >= 0")
        if self.n_max < 1:
            raise DomainError("n_max must be >= 1")
        if self.precision_bits < 2:
            raise DomainError("precision_bits must be >= 2")


@dataclass(frozen=True)
class EvaluationResult:
    value: mpf
    error_bound: mpf
    params: SeriesParams
    method: Method

    def __post_init__(self):
        if not (self.error_bound >= 0 and mpmath.isfinite(self.error_bound)):
            raise ValueError(f"invalid error bound {self.error_bound}")


# ---------------------------------------------------------------- F_m


def remainder_F(x, m: int, precision_bits: int):
    """F_m(x) = exp(x) - sum_{k<m} x^k/k!, to relative accuracy about 2**-precision_bits."""
    if m < 0:
        raise DomainError("m must be >= 0")
    x = as_real(x)
    if m == 0:
        with mpmath.workprec(precision_bits + 8):
            return mpmath.exp(x)
    if not x:
        return mpf(0)
    ax = abs(x)
    if ax <= mpf(m) / 2:
        # tail series: term ratio |x|/(k+1) <= 1/2, no cancellation to speak of
        wp = precision_bits + 16
        with mpmath.workprec(wp):
            term = x**m / mpmath.factorial(m)
            eps = abs(term) * mpmath.ldexp(1, -wp)
            total = term
            k = m
            while abs(term) > eps:
                k += 1
                term = term * x / k
                total += term
            return total
    guard = 16
    while True:
        wp = precision_bits + guard + 8
        with mpmath.workprec(wp):
            e = mpmath.exp(x)
            term = mpf(1)
            partial = mpf(0)
            mag = abs(e)
            for k in range(m):
                if k:
                    term = term * x / k
                partial += term
                mag += abs(term)
            F = e - partial
        loss = float(mpmath.log(mag / abs(F), 2)) if F else float(wp)
        if loss + 4 <= guard:
            return F
        guard = int(loss) + 24


# ---------------------------------------------------------------- Maclaurin


def _zeta_upper(s: int) -> float:
    # zeta(s) <= 1 + 2^-s + 2^(1-s)/(s-1) for s >= 2
    return 1 + 2.0**-s + 2.0 ** (1 - s) / (s - 1)


def _maclaurin_decreasing_from(x, K: int) -> bool:
    """True if |t_{j+1}| < |t_j| for every j >= K, where |t_k| = |x|^k/((k-1)! zeta(2k))."""
    # ratio |x|/j * zeta(2j)/zeta(2j+2) decreases in j; zeta(2j+2) >= 1
    return float(abs(x)) * _zeta_upper(2 * K) < K


def _maclaurin_log_term(x: float, k: int) -> float:
    # natural log of |t_k|, ignoring the zeta(2k) >= 1 divisor (upper estimate)
    return k * math.log(abs(x)) - math.lgamma(k)


def maclaurin_terms_for(x, tolerance) -> int:
    """Fewest terms whose first omitted term is below tolerance/2 in the decreasing regime."""
    ax = float(abs(as_real(x)))
    if ax == 0:
        return 1
    target = float(mpmath.log(as_real(tolerance) / 2))
    K = 2
    while not (_maclaurin_decreasing_from(ax, K) and _maclaurin_log_term(ax, K) < target):
        K += 1
    return K - 1


def maclaurin_riesz(x, terms: int, precision_bits: int) -> EvaluationResult:
    """Riesz(x) from ``terms`` terms of its Maclaurin series in y = x/(4 pi^2)."""
    if terms < 1:
        raise DomainError("terms must be >= 1")
    x = as_real(x)
    params = SeriesParams(2.0, 0, terms, precision_bits)
    if not x:
        return EvaluationResult(mpf(0), mpf(0), params, Method.MACLAURIN)
    K = terms + 1
    if not _maclaurin_decreasing_from(x, K):
        raise PlannerError(
            f"{terms} terms is before the series starts decreasing at x = {mpmath.nstr(x, 8)}; "
            f"use at least {math.ceil(float(abs(x)) * _zeta_upper(2 * K))} terms"
        )
    # terms peak near k ~ |x| at about e^|x| times the result
    wp = (
        precision_bits
        + math.ceil(float(abs(x)) * LOG2E)
        + 64
        + terms.bit_length()
    )
    coeffs = bernoulli_coefficients(K + 1)
    with mpmath.workprec(wp):
        y = x / (4 * mpmath.pi**2)
        yk = mpf(1)
        fact = mpf(1)
        total = mpf(0)
        abs_total = mpf(0)
        for k in range(1, terms + 1):
            yk *= y
            if k > 1:
                fact *= k - 1
            c = coeffs[k]
            term = 2 * yk * c.denominator / (c.numerator * fact)
            total += term
            abs_total += abs(term)
        c = coeffs[K]
        first_omitted = abs(2 * yk * y * c.denominator / (c.numerator * fact * (K - 1)))
    with mpmath.workprec(64):
        if x > 0:
            trunc = first_omitted
        else:
            ratio = float(abs(x)) * _zeta_upper(2 * K) / K
            trunc = first_omitted / (1 - ratio)
        rounding = abs_total * (terms + 16) * mpmath.ldexp(1, -wp)
        bound = upper(trunc + rounding, 1.001)
    return EvaluationResult(total, bound, params, Method.MACLAURIN)


def maclaurin_coefficient(k: int):
    """Exact coefficient of y^k in Riesz(4 pi^2 y), i.e. 2/(c_{2k} (k-1)!)."""
    if k < 1:
        raise DomainError("k must be >= 1")
    c = bernoulli_coefficients(k + 1)[k]
    return 2 / (c * math.factorial(k - 1))


# ---------------------------------------------------------------- plain series


def _coefficient(provider: CoefficientProvider, a, n: int):
    # a_n, times n^-shift for shifted providers; call inside the working precision
    if provider.shift:
        return int(a[n]) * mpf(n) ** (-provider.shift)
    return int(a[n])


def _nonzero_indices(a, n_max: int):
    return [n for n in range(1, n_max + 1) if a[n]]


def theorem1_truncation_bound(provider: CoefficientProvider, c, x, n_max: int):
    x = as_real(x)
    with mpmath.workprec(64):
        tail = provider.tail_sum_bound(n_max, c)
        grow = mpmath.exp(-x / mpf(n_max + 1) ** c) if x < 0 else 1
        return upper(abs(x) * grow * tail)


def theorem1_series(
    provider: CoefficientProvider, c, x, n_max: int, precision_bits: int
) -> EvaluationResult:
    """Partial sum x * sum_{n <= n_max} a_n n^-c exp(-x/n^c) with a rigorous tail bound."""
    provider.check_abscissa(c)
    params = SeriesParams(float(c), 0, n_max, precision_bits)
    x = as_real(x)
    if not x:
        return EvaluationResult(mpf(0), mpf(0), params, Method.THEOREM1)
    with mpmath.workprec(64):
        # bound on sum |x a_n n^-c exp(-x/n^c)| over all n, independent of n_max
        s_abs = abs(x) * provider.abs_sum_bound(c) * (mpmath.exp(-x) if x < 0 else 1)
    lh = max(0, math.ceil(float(mpmath.log(s_abs / abs(x), 2))))
    wp = precision_bits + GUARD_BITS + max(0, math.ceil(float(mpmath.log(s_abs, 2)))) + n_max.bit_length() + 8
    acc = FixedPointSum(wp - lh + n_max.bit_length())
    a = provider.coefficients(n_max)
    with mpmath.workprec(wp):
        cm = mpf(c)
        for n in _nonzero_indices(a, n_max):
            w = mpf(n) ** (-cm)
            acc.add(_coefficient(provider, a, n) * w * mpmath.exp(-x * w))
        value = x * acc.value(wp)
    with mpmath.workprec(64):
        rounding = (s_abs * 2**8 + abs(x)) * mpmath.ldexp(1, -(wp - lh))
        bound = upper(theorem1_truncation_bound(provider, c, x, n_max) + rounding, 1.001)
    return EvaluationResult(value, bound, params, Method.THEOREM1)


def theorem1_n_max_for(provider: CoefficientProvider, c, x, tolerance, limit: int = 2_000_000) -> int:
    """Smallest power-of-two-ish n_max whose tail bound is below tolerance/2."""
    half = as_real(tolerance) / 2
    n = 16
    while theorem1_truncation_bound(provider, c, x, n) > half:
        n *= 2
        if n > limit:
            raise PlannerError(
                f"theorem1 route needs more than {limit} terms for tolerance {mpmath.nstr(tolerance, 3)}"
            )
    return n


# ---------------------------------------------------------------- Kummer acceleration


def kummer_truncation_bound(provider: CoefficientProvider, c, x, m: int, n_max: int):
    """Bound on |x sum_{n > n_max} a_n n^-c F_m(-x/n^c)| via |F_m(y)| <= |y|^m/m! (times e^y for y > 0)."""
    x = as_real(x)
    with mpmath.workprec(64):
        tail = provider.tail_sum_bound(n_max, mpf(c) * (m + 1))
        grow = mpmath.exp(-x / mpf(n_max + 1) ** c) if x < 0 else 1
        return upper(abs(x) ** (m + 1) / mpmath.factorial(m) * grow * tail)


def _log2_head_max(ax: float, m: int) -> float:
    # max over k <= m + 1 of log2(|x|^k/(k-1)!)
    if ax == 0:
        return 0.0
    best = -math.inf
    for k in range(1, m + 2):
        best = max(best, (k * math.log(ax) - math.lgamma(k)) / math.log(2))
    return best


def kummer_series(
    provider: CoefficientProvider, c, x, m: int, n_max: int, precision_bits: int
) -> EvaluationResult:
    """Accelerated series: m head terms of the R_c power series plus the F_m tail."""
    if m == 0:
        r = theorem1_series(provider, c, x, n_max, precision_bits)
        return replace(r, params=replace(r.params, m=0), method=Method.KUMMER)
    provider.check_abscissa(c)
    params = SeriesParams(float(c), m, n_max, precision_bits)
    x = as_real(x)
    if not x:
        return EvaluationResult(mpf(0), mpf(0), params, Method.KUMMER)
    ax = float(abs(x))
    lh = max(0, math.ceil(_log2_head_max(ax, m) + log2_head_bound(provider, c)))
    wp = precision_bits + GUARD_BITS + lh + m.bit_length() + n_max.bit_length() + 8
    with mpmath.workprec(wp):
        cm = mpf(c)
        head = mpf(0)
        xk = mpf(1)
        fact = mpf(1)
        for k in range(1, m + 1):
            xk *= x
            if k > 1:
                fact *= k - 1
            term = provider.dirichlet_value(cm * k, wp) * xk / fact
            head += term if k % 2 else -term
        acc = FixedPointSum(wp - lh + n_max.bit_length())
        a = provider.coefficients(n_max)
        for n in _nonzero_indices(a, n_max):
            w = mpf(n) ** (-cm)
            acc.add(_coefficient(provider, a, n) * w * remainder_F(-x * w, m, wp))
        value = head + x * acc.value(wp)
    with mpmath.workprec(64):
        hb = 2 ** log2_head_bound(provider, c)
        head_abs = mpmath.fsum(mpf(ax) ** k / mpmath.factorial(k - 1) for k in range(1, m + 1)) * hb
        tail_abs = (
            mpf(ax) ** (m + 1)
            / mpmath.factorial(m)
            * provider.abs_sum_bound(mpf(c) * (m + 1))
            * (mpmath.exp(ax) if x < 0 else 1)
        )
        rounding = (head_abs + tail_abs) * (m + 32) * mpmath.ldexp(1, -wp) + abs(x) * mpmath.ldexp(
            1, -(wp - lh)
        )
        bound = upper(kummer_truncation_bound(provider, c, x, m, n_max) + rounding, 1.001)
    return EvaluationResult(value, bound, params, Method.KUMMER)


# ---------------------------------------------------------------- planning

_SCALES = (1, 1.5, 2, 3, 4, 6, 8, 12, 16)


def plan_truncation(x, c, tolerance, provider: CoefficientProvider = MOBIUS) -> SeriesParams:
    """Pick (m, n_max, precision) so the Kummer truncation bound is below tolerance/2.

    n_max is taken near scale * x^(1/c) (the ceil(sqrt x) cutoff when c = 2); for
    each scale the smallest sufficient m is found and the cheapest pair wins.
    """
    tol = as_real(tolerance)
    if not tol > 0:
        raise DomainError("tolerance must be positive")
    x = as_real(x)
    if x < 0:
        raise DomainError("x must be >= 0")
    provider.check_abscissa(c)
    prec = bits_for_tolerance(tol)
    if not x:
        return SeriesParams(float(c), 1, 1, prec)
    half = tol / 2
    base = max(1.0, float(x) ** (1.0 / float(c)))
    best = None
    for scale in _SCALES:
        n = max(1, math.ceil(scale * base))
        m = 1
        while kummer_truncation_bound(provider, c, x, m, n) > half:
            m += 1
            if m > 4000:
                break
        else:
            cost = n * (m + 20) + 40 * m
            if best is None or cost < best[0]:
                best = (cost, m, n)
    if best is None:
        raise PlannerError(f"no feasible truncation for x = {x}, tolerance = {tol}")
    _, m, n = best
    return SeriesParams(float(c), m, n, prec)

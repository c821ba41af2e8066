"""User-facing evaluation of Riesz(x) and R_c(x)."""
from __future__ import annotations

import enum
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import partial

import mpmath
from mpmath import mpf

from .errors import DomainError
from .precision import as_real, bits_for_tolerance, upper
from .providers import MOBIUS, CoefficientProvider, ShiftedProvider
from .series import (
    EvaluationResult,
    Method,
    SeriesParams,
    kummer_series,
    maclaurin_riesz,
    maclaurin_terms_for,
    plan_truncation,
    theorem1_n_max_for,
    theorem1_series,
)

# below this x the Maclaurin route is cheap; above it the e^x-sized cancellation is not
MACLAURIN_THRESHOLD = 32


class QueryMethod(str, enum.Enum):
    AUTO = "auto"
    MACLAURIN = "maclaurin"
    THEOREM1 = "theorem1"
    KUMMER = "kummer"


@dataclass(frozen=True)
class RieszQuery:
    x: mpf
    tolerance: mpf = mpf("1e-30")
    method: QueryMethod = QueryMethod.AUTO

    def __post_init__(self):
        object.__setattr__(self, "x", as_real(self.x))
        object.__setattr__(self, "tolerance", as_real(self.tolerance))
        object.__setattr__(self, "method", QueryMethod(self.method))
        if self.x < 0:
            raise DomainError("x must be >= 0")
        if not self.tolerance > 0:
            raise DomainError("tolerance must be positive")


def _zero_result(method: Method, c: float, tolerance) -> EvaluationResult:
    return EvaluationResult(mpf(0), mpf(0), SeriesParams(c, 0, 1, bits_for_tolerance(tolerance)), method)


def _maclaurin(x, tolerance) -> EvaluationResult:
    prec = bits_for_tolerance(tolerance)
    terms = maclaurin_terms_for(x, tolerance)
    while True:
        r = maclaurin_riesz(x, terms, prec)
        if r.error_bound <= tolerance:
            return r
        terms += max(4, terms // 8)


def _kummer(provider: CoefficientProvider, c, x, tolerance) -> EvaluationResult:
    p = plan_truncation(x, c, tolerance, provider)
    return kummer_series(provider, c, x, p.m, p.n_max, p.precision_bits)


def _theorem1(provider: CoefficientProvider, c, x, tolerance) -> EvaluationResult:
    n_max = theorem1_n_max_for(provider, c, x, tolerance)
    return theorem1_series(provider, c, x, n_max, bits_for_tolerance(tolerance))


def riesz(query: RieszQuery, threshold=MACLAURIN_THRESHOLD) -> EvaluationResult:
    """Riesz(x) with error_bound <= query.tolerance."""
    method = query.method
    if method is QueryMethod.AUTO:
        method = QueryMethod.MACLAURIN if query.x <= threshold else QueryMethod.KUMMER
    if not query.x:
        return _zero_result(Method(method.value), 2.0, query.tolerance)
    if method is QueryMethod.MACLAURIN:
        return _maclaurin(query.x, query.tolerance)
    if method is QueryMethod.THEOREM1:
        return _theorem1(MOBIUS, 2, query.x, query.tolerance)
    return _kummer(MOBIUS, 2, query.x, query.tolerance)


def riesz_value(x, tolerance=mpf("1e-30"), method="auto") -> EvaluationResult:
    """Shorthand for ``riesz(RieszQuery(x, tolerance, method))``."""
    return riesz(RieszQuery(x, tolerance, method))


def riesz_general(provider: CoefficientProvider, c, x, tolerance) -> EvaluationResult:
    """R_c(x) = x sum a_n n^-c exp(-x/n^c) for any provider, by the accelerated route."""
    provider.check_abscissa(c)
    x = as_real(x)
    if not x:
        return _zero_result(Method.KUMMER, float(c), tolerance)
    return _kummer(provider, c, x, tolerance)


def riesz_derivative(provider: CoefficientProvider, c, x, tolerance) -> EvaluationResult:
    """R_c'(x) = R_c(x)/x - S(x), with S(x) = x sum a_n n^-2c exp(-x/n^c).

    S is the same transform applied to the coefficients a_n n^-c, whose
    Dirichlet series is f(s + c); it is evaluated by the accelerated route.
    """
    x = as_real(x)
    if not x > 0:
        raise DomainError("the derivative identity needs x > 0")
    tol = as_real(tolerance)
    r1 = riesz_general(provider, c, x, tol * min(x, 1) / 2)
    r2 = riesz_general(ShiftedProvider(provider, c), c, x, tol / 2)
    wp = max(r1.params.precision_bits, r2.params.precision_bits) + 16
    with mpmath.workprec(wp):
        value = r1.value / x - r2.value
    with mpmath.workprec(64):
        bound = upper(r1.error_bound / x + r2.error_bound + abs(value) * mpmath.ldexp(1, -wp + 2))
    params = SeriesParams(float(c), r1.params.m, r1.params.n_max, r1.params.precision_bits)
    return EvaluationResult(value, bound, params, Method.KUMMER)


# ---------------------------------------------------------------- growth diagnostic


@dataclass(frozen=True)
class ScanRow:
    """One diagnostic row: R_c(x) and R_c(x) / x^(1/(2c))."""

    x: mpf
    riesz_value: mpf
    scaled_value: mpf
    error_bound: mpf


def geometric_grid(x_min, x_max, steps: int, precision_bits: int = 128) -> list:
    with mpmath.workprec(precision_bits):
        lo, hi = as_real(x_min), as_real(x_max)
        ratio = hi / lo
        xs = [lo]
        for i in range(1, steps - 1):
            xs.append(lo * ratio ** (mpf(i) / (steps - 1)))
        xs.append(hi)
    return xs


def scan_row(x, c, tolerance, provider: CoefficientProvider = MOBIUS) -> ScanRow:
    x = as_real(x)
    if provider is MOBIUS and c == 2:
        r = riesz(RieszQuery(x, tolerance))
    else:
        r = riesz_general(provider, c, x, tolerance)
    wp = r.params.precision_bits + 32
    with mpmath.workprec(wp):
        scaled = r.value / x ** (1 / (2 * mpf(c)))
    return ScanRow(x, r.value, scaled, r.error_bound)


def rh_scan(x_min, x_max, steps: int, c=2, tolerance=mpf("1e-30"), jobs: int = 1,
            provider: CoefficientProvider = MOBIUS) -> list[ScanRow]:
    """Evaluate R_c on a geometric grid and divide by x^(1/(2c)).

    This is an empirical diagnostic of growth only.  Rows are independent, so
    ``jobs > 1`` spreads them over worker processes; output order is by x.
    """
    x_min, x_max = as_real(x_min), as_real(x_max)
    if not (0 < x_min < x_max):
        raise DomainError("need 0 < x_min < x_max")
    if steps < 2:
        raise DomainError("need steps >= 2")
    provider.check_abscissa(c)
    xs = geometric_grid(x_min, x_max, steps)
    work = partial(scan_row, c=c, tolerance=as_real(tolerance), provider=provider)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(work, xs))
    return [work(x) for x in xs]

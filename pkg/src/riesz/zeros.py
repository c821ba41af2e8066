"""Expansion of Riesz(x) over the nontrivial zeros of zeta.

Closing the inverse Mellin contour to the right picks up a residue at
s = -rho/2 for every simple zero rho, and one at every positive integer n.
The integer residues sum to -pi * G(pi^2/x) with

    G(X) = pi^(-1/2) * sum_{k>=1} (-1)^(k+1) X^k / (Gamma(k + 1/2) zeta(2k+1)),

so that

    Riesz(x) = sum_rho Pi(-rho/2) / (2 zeta'(rho)) * x^(rho/2) - pi * G(pi^2/x).

Zeros are read from a file under the normalization rho = 1/2 + i t.
"""
from __future__ import annotations

import functools
import math
import re
from dataclasses import dataclass
from pathlib import Path

import mpmath
from mpmath import mpc, mpf

from .errors import (
    DomainError,
    NearMultipleZeroError,
    PrecisionError,
    ZeroFormatError,
    ZeroValidationError,
)
from .numtheory import complex_zeta, log_gamma_complex, zeta_odd
from .precision import GUARD_BITS, as_real, digits_to_bits, make_complex, upper
from .series import EvaluationResult, Method, SeriesParams

DEFAULT_K = 2


@dataclass(frozen=True)
class ZeroRecord:
    t: mpf
    zeta_prime: mpc | None = None

    def __post_init__(self):
        if not self.t > 0:
            raise ZeroValidationError(f"zero ordinate must be positive, got {self.t}")

    @property
    def rho(self) -> mpc:
        return make_complex(mpf(0.5), self.t)


@dataclass(frozen=True)
class ZeroTable:
    zeros: tuple[ZeroRecord, ...] = ()
    source: str = ""
    precision_decimal_digits: int = 0

    def __post_init__(self):
        for a, b in zip(self.zeros, self.zeros[1:]):
            if b.t == a.t:
                raise ZeroValidationError(f"duplicate zero at t = {a.t}")
            if b.t < a.t:
                raise ZeroValidationError(f"zeros not sorted: {b.t} follows {a.t}")

    def __len__(self) -> int:
        return len(self.zeros)

    def head(self, count: int) -> "ZeroTable":
        return ZeroTable(self.zeros[:count], self.source, self.precision_decimal_digits)


@dataclass(frozen=True)
class Bracket:
    """Half-open index range [start, stop) into a ZeroTable."""

    start: int
    stop: int

    def __post_init__(self):
        if self.stop <= self.start:
            raise ValueError("empty bracket")

    @property
    def indices(self) -> range:
        return range(self.start, self.stop)


# ---------------------------------------------------------------- file ingestion

_NUMBER = re.compile(r"^[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?$")


def _significant_digits(token: str) -> int:
    mantissa = re.split(r"[eE]", token)[0].lstrip("+-").replace(".", "")
    return len(mantissa.lstrip("0")) or 1


def _parse_number(token: str, lineno: int, bits: int):
    if not _NUMBER.match(token):
        raise ZeroFormatError(lineno, f"not a decimal number: {token!r}")
    with mpmath.workprec(bits):
        return mpf(token)


def parse_zeros(text: str, source: str = "<string>") -> ZeroTable:
    """Parse zeros-file content.

    One zero per line: ``t`` or ``t re im`` where ``re im`` is zeta'(1/2 + i t).
    Blank lines and lines starting with ``#`` are ignored.
    """
    lines = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if not line.isascii():
            raise ZeroFormatError(lineno, "non-ASCII content")
        tokens = line.split()
        if len(tokens) not in (1, 3):
            raise ZeroFormatError(lineno, f"expected 1 or 3 columns, found {len(tokens)}")
        lines.append((lineno, tokens))

    digits = min((_significant_digits(tok[0]) for _, tok in lines), default=0)
    bits = digits_to_bits(max(digits, 17)) + 16
    records = []
    for lineno, tokens in lines:
        t = _parse_number(tokens[0], lineno, bits)
        zp = None
        if len(tokens) == 3:
            zp = make_complex(_parse_number(tokens[1], lineno, bits), _parse_number(tokens[2], lineno, bits))
        try:
            records.append(ZeroRecord(t, zp))
        except ZeroValidationError as exc:
            raise ZeroValidationError(f"line {lineno}: {exc}") from None
    return ZeroTable(tuple(records), source, digits)


def load_zeros(path) -> ZeroTable:
    path = Path(path)
    text = path.read_text(encoding="ascii", errors="strict")
    return parse_zeros(text, str(path))


# ---------------------------------------------------------------- G series


def g_series(x, terms: int, precision_bits: int):
    """Partial sum of G and an error bound: (value, bound).

    The bound is the first omitted term once the terms alternate and decrease
    (x > 0); otherwise a geometric tail estimate.
    """
    if terms < 1:
        raise DomainError("terms must be >= 1")
    x = as_real(x)
    if not x:
        return mpf(0), mpf(0)
    ax = float(abs(x))
    # terms peak near k ~ |x| at roughly e^|x|
    wp = precision_bits + GUARD_BITS + math.ceil(ax * math.log2(math.e)) + terms.bit_length()
    with mpmath.workprec(wp):
        total = mpf(0)
        # sqrt(pi) x^k / Gamma(k + 1/2), by Gamma(k + 1/2) = (k - 1/2) Gamma(k - 1/2)
        ratio_k = mpf(1)
        mags = []
        for k in range(1, terms + 2):
            ratio_k = ratio_k * x / (k - mpf(0.5))
            term = ratio_k / zeta_odd(k, wp)
            if k <= terms:
                total += term if k % 2 else -term
                mags.append(abs(term))
            else:
                omitted = abs(term)
        total /= mpmath.pi
        omitted /= mpmath.pi
    K = terms + 1
    # |t_{k+1}/t_k| = |x| zeta(2k+1)/((k+1/2) zeta(2k+3)) <= |x| zeta(2K+1)/(K+1/2) for k >= K
    zeta_up = 1 + 2.0 ** -(2 * K + 1) * 3
    ratio = ax * zeta_up / (K + 0.5)
    with mpmath.workprec(64):
        if ratio >= 1:
            bound = mpmath.inf
        elif x > 0:
            bound = omitted
        else:
            bound = omitted / (1 - ratio)
        # each term carries about 3k roundings from the running product
        rounding = mpmath.fsum(mags) * 4 * (terms + 16) * mpmath.ldexp(1, -wp)
        bound = upper(bound + rounding, 1.001)
    return total, bound


def g_terms_for(x, precision_bits: int) -> int:
    ax = float(abs(as_real(x)))
    if ax == 0:
        return 1
    target = -(precision_bits + 2) * math.log(2)
    k = 1
    # log |t_k| <= k log|x| - lgamma(k + 1/2) - log(pi)/2
    while not (ax * (1 + 3 * 2.0 ** -(2 * k + 1)) < k + 0.5
               and k * math.log(ax) - math.lgamma(k + 0.5) - math.log(math.pi) / 2 < target):
        k += 1
    return max(1, k - 1)


def g_function(x, terms: int, precision_bits: int):
    """G(x) = pi^(-1/2) sum_{k=1}^{terms} (-1)^(k+1) x^k / ((k-1/2)! zeta(2k+1))."""
    return g_series(x, terms, precision_bits)[0]


# ---------------------------------------------------------------- zero terms


@functools.lru_cache(maxsize=4096)
def zeta_prime_with_error(t, precision_bits: int):
    """zeta'(1/2 + i t) by central differences and its error estimate.

    Step h = 2**-(precision/2); the difference quotient is evaluated with
    enough extra bits that the h**-1 cancellation does not eat the target
    precision.  The estimate compares steps h and 2h (O(h^2) error model).
    """
    if precision_bits < 16:
        raise PrecisionError("zeta' needs at least 16 bits")
    t = as_real(t)
    half = precision_bits // 2 + 8
    wp = precision_bits + half + 16
    with mpmath.workprec(wp):
        h = mpmath.ldexp(1, -half)
        if h == 0:
            raise PrecisionError("difference step underflows")
        s = mpc(0.5, t)

        def quotient(step):
            return (complex_zeta(s + step, wp) - complex_zeta(s - step, wp)) / (2 * step)

        d1 = quotient(h)
        d2 = quotient(2 * h)
        err = abs(d2 - d1) / 3
        value = d1 + (d1 - d2) / 3
    return value, upper(err)


def zeta_prime_at(t, precision_bits: int):
    """zeta'(1/2 + i t)."""
    return zeta_prime_with_error(t, precision_bits)[0]


def _residue(rho, zeta_prime, x, wp: int):
    with mpmath.workprec(wp):
        pi_factor = mpmath.exp(log_gamma_complex(1 - rho / 2, wp))
        return pi_factor / (2 * zeta_prime) * mpmath.exp(rho / 2 * mpmath.log(x))


def zero_threshold(precision_bits: int):
    return mpmath.ldexp(1, -(precision_bits // 4))


def zero_term(zero: ZeroRecord, x, precision_bits: int):
    """Residue contribution Pi(-rho/2) x^(rho/2) / (2 zeta'(rho)) for rho = 1/2 + i t."""
    x = as_real(x)
    if not x > 0:
        raise DomainError("x must be positive")
    zp = zero.zeta_prime if zero.zeta_prime is not None else zeta_prime_at(zero.t, precision_bits)
    if abs(zp) < zero_threshold(precision_bits):
        raise NearMultipleZeroError(f"|zeta'(rho)| = {mpmath.nstr(abs(zp), 5)} at t = {mpmath.nstr(zero.t, 15)}")
    return _residue(zero.rho, zp, x, precision_bits + 16)


def _conj(z):
    # unary minus would round to the ambient precision
    return make_complex(z.real, mpmath.fneg(z.imag, exact=True))


def _pair_sum(zero: ZeroRecord, x, precision_bits: int):
    # term(rho) + term(conj rho); the imaginary part is rounding noise
    zp = zero.zeta_prime if zero.zeta_prime is not None else zeta_prime_at(zero.t, precision_bits)
    if abs(zp) < zero_threshold(precision_bits):
        raise NearMultipleZeroError(f"|zeta'(rho)| = {mpmath.nstr(abs(zp), 5)} at t = {mpmath.nstr(zero.t, 15)}")
    wp = precision_bits + 16
    rho = zero.rho
    a = _residue(rho, zp, x, wp)
    b = _residue(_conj(rho), _conj(zp), x, wp)
    with mpmath.workprec(wp):
        return a + b, abs(a)


# ---------------------------------------------------------------- bracketing


def _closeness(t, K: float) -> float:
    t = float(t)
    return K ** (-t / max(math.log(t), 1.0))


def bracket_zeros(table: ZeroTable, K: float = DEFAULT_K) -> list[Bracket]:
    """Group consecutive zeros with |g1 - g2| < K^(-g1/log g1) + K^(-g2/log g2)."""
    if not K > 1:
        raise DomainError("K must exceed 1")
    zs = table.zeros
    brackets = []
    start = 0
    for i in range(1, len(zs)):
        g1, g2 = zs[i - 1].t, zs[i].t
        if not float(g2 - g1) < _closeness(g1, K) + _closeness(g2, K):
            brackets.append(Bracket(start, i))
            start = i
    if zs:
        brackets.append(Bracket(start, len(zs)))
    return brackets


# ---------------------------------------------------------------- reconstruction


def zero_tail_envelope(t_last, x) -> mpf:
    """Heuristic size of the zeros beyond ``t_last``.

    Per zero: 2 * |Gamma(3/4 + i t/2)| x^(1/4) t^(1/3), i.e. the conjugate pair
    with |1/zeta'| growing like t^(1/3); with about log t zeros per unit of t
    this is summed over integers n > t_last as a geometric series in e^(-pi/4).
    """
    with mpmath.workprec(64):
        T = mpf(t_last) + 1
        x = mpf(x)
        first = (
            2 * mpmath.sqrt(2 * mpmath.pi) * (T / 2) ** 0.25 * T ** (mpf(1) / 3)
            * mpmath.log(T) * mpmath.exp(-mpmath.pi * T / 4) * x**0.25
        )
        return first / (1 - mpmath.exp(-mpmath.pi / 4))


def reconstruct_riesz(
    x,
    table: ZeroTable,
    K: float = DEFAULT_K,
    g_terms: int | None = None,
    precision_bits: int = 160,
) -> EvaluationResult:
    """Riesz(x) from the zero sum over ``table`` minus pi * G(pi^2/x).

    The error bound adds the heuristic tail of omitted zeros, the effect of the
    table's finite decimal precision on the ordinates, and the G truncation.
    Only meaningful for x >= 0.1; below that the G series is hopelessly
    cancelling.
    """
    x = as_real(x)
    if not x > 0:
        raise DomainError("x must be positive")
    if not len(table):
        raise DomainError("zero table is empty")
    wp = precision_bits + 16
    total = mpc(0)
    sensitivity = mpf(0)
    with mpmath.workprec(wp):
        logx = abs(mpmath.log(x))
    for br in bracket_zeros(table, K):
        bsum = mpc(0)
        for i in br.indices:
            z = table.zeros[i]
            pair, mag = _pair_sum(z, x, precision_bits)
            with mpmath.workprec(wp):
                bsum += pair
                # d/dt of the pair is about |term| * (log x / 2 + log t / 2 + pi/4 + log t)
                sensitivity += 2 * mag * (logx / 2 + 2 * mpmath.log(z.t) + 1) * z.t
        with mpmath.workprec(wp):
            total += bsum
    X = None
    with mpmath.workprec(wp):
        X = mpmath.pi**2 / x
    if g_terms is None:
        g_terms = g_terms_for(X, precision_bits)
    g_val, g_err = g_series(X, g_terms, precision_bits)
    with mpmath.workprec(wp):
        value = total.real - mpmath.pi * g_val
    with mpmath.workprec(64):
        digits = table.precision_decimal_digits
        table_err = sensitivity * mpf(10) ** (-digits) if digits else mpf(0)
        bound = upper(
            zero_tail_envelope(table.zeros[-1].t, x)
            + table_err
            + mpmath.pi * g_err
            + abs(total.imag)
            + (abs(value) + 1) * mpmath.ldexp(1, -precision_bits)
        )
    params = SeriesParams(2.0, 0, len(table), precision_bits)
    return EvaluationResult(value, bound, params, Method.ZEROS)

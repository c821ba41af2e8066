from functools import lru_cache
from pathlib import Path

import mpmath
import pytest
from mpmath import mpf

DATA = Path(__file__).parent / "data"
ZEROS_FILE = DATA / "zeros100.txt"


@lru_cache(maxsize=None)
def _inv_zeta_even(k, prec):
    with mpmath.workprec(prec):
        return 1 / mpmath.zeta(2 * k)


def oracle_riesz(x, prec=400):
    """Riesz(x) from its power series using mpmath's zeta, summed at ``prec`` bits.

    Independent of the package: no shared Bernoulli table, no shared zeta.
    Adequate for 0 <= x <= ~150 at prec = 400.
    """
    with mpmath.workprec(prec):
        x = mpmath.mpf(x)
        total = mpf(0)
        term_x = x  # x^k / (k-1)!
        k = 1
        while True:
            t = term_x * _inv_zeta_even(k, prec)
            total += t if k % 2 else -t
            if k > 2 * x + 10 and abs(t) < mpmath.ldexp(1, -prec + 20):
                break
            term_x = term_x * x / k
            k += 1
        return total


def oracle_riesz_derivative(x, prec=400):
    """Term-by-term derivative of the power series behind :func:`oracle_riesz`."""
    with mpmath.workprec(prec):
        x = mpmath.mpf(x)
        total = mpf(0)
        term_x = mpf(1)  # x^(k-1) / (k-1)!
        k = 1
        while True:
            t = k * term_x * _inv_zeta_even(k, prec)
            total += t if k % 2 else -t
            if k > 2 * x + 10 and abs(t) < mpmath.ldexp(1, -prec + 20):
                break
            term_x = term_x * x / k
            k += 1
        return total


def naive_mobius(n):
    """mu(n) by trial division."""
    result = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    return -result if n > 1 else result


@pytest.fixture(scope="session")
def zeros_path():
    return ZEROS_FILE


@pytest.fixture(scope="session")
def zeros_table():
    from riesz.zeros import load_zeros

    return load_zeros(ZEROS_FILE)


def close(a, b, tol, prec=400):
    with mpmath.workprec(prec):
        return abs(mpmath.mpf(a) - mpmath.mpf(b)) <= mpmath.mpf(tol)


def diff(a, b, prec=400):
    with mpmath.workprec(prec):
        return abs(mpmath.mpf(a) - mpmath.mpf(b))


# one line per acceptance criterion, printed at the end of the run
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)

"""Worked examples for each public operation."""
import math
from fractions import Fraction

import mpmath
import pytest
from mpmath import mpc, mpf

from conftest import diff
from riesz.cli import main
from riesz.numtheory import (
    bernoulli_coefficients,
    complex_zeta,
    log_gamma_complex,
    mobius_sieve,
    zeta_even,
)
from riesz.providers import MOBIUS, UNIT, ZETA
from riesz.series import (
    kummer_truncation_bound,
    maclaurin_riesz,
    plan_truncation,
    remainder_F,
    theorem1_series,
)
from riesz.zeros import (
    Bracket,
    ZeroTable,
    bracket_zeros,
    g_function,
    g_series,
    parse_zeros,
    reconstruct_riesz,
    zero_term,
    zeta_prime_with_error,
)
from riesz.errors import ZeroValidationError


def test_mobius_examples():
    t = mobius_sieve(12)
    assert (t[1], t[12], t[6]) == (1, 0, 1)


def test_coth_coefficients():
    c = bernoulli_coefficients(3)
    assert c == [1, Fraction(1, 12), Fraction(-1, 720)]


def test_zeta_even_examples():
    with mpmath.workprec(120):
        assert abs(zeta_even(1, 100) - mpmath.pi**2 / 6) < mpf(10) ** -28
        assert abs(zeta_even(2, 100) - mpmath.pi**4 / 90) < mpf(10) ** -28
        # direct partial sum of n^-2 with the integral tail estimate 1/N
        N = 10**5
        partial = mpmath.fsum(mpf(n) ** -2 for n in range(1, N + 1)) + mpf(1) / N
        assert abs(zeta_even(1, 100) - partial) < mpf(10) ** -9
    values = [zeta_even(k, 80) for k in range(1, 40)]
    assert all(b < a for a, b in zip(values, values[1:]))
    assert values[-1] > 1


def test_complex_zeta_examples():
    with mpmath.workprec(120):
        assert abs(complex_zeta(2, 100) - zeta_even(1, 100)) < mpf(10) ** -29
    assert abs(complex_zeta(mpc("0.5", "14.134725"), 50)) < mpf("1e-4")
    assert complex_zeta(-2, 80) == 0


def test_log_gamma_examples():
    assert log_gamma_complex(1, 100) == 0 or abs(log_gamma_complex(1, 100)) < mpf(10) ** -29
    with mpmath.workprec(120):
        assert abs(log_gamma_complex(5, 100) - mpmath.log(24)) < mpf(10) ** -28
    z = mpc("0.75", "7.067")
    g = abs(mpmath.exp(log_gamma_complex(z, 80)))
    ratio = g / mpmath.exp(-mpmath.pi * mpf("7.067") / 2)
    assert mpf("0.1") < ratio < 10


def test_remainder_examples():
    assert all(remainder_F(0, m, 64) == 0 for m in range(1, 6))
    with mpmath.workprec(100):
        assert abs(remainder_F(1, 1, 90) - (mpmath.e - 1)) < mpf(10) ** -25


def test_maclaurin_examples():
    assert maclaurin_riesz(0, 1, 64).value == 0


def test_plain_series_examples():
    assert theorem1_series(MOBIUS, 2, 0, 10, 64).value == 0
    r = theorem1_series(UNIT, 5, 1, 10, 100)
    with mpmath.workprec(200):
        assert abs(r.value - 1 / mpmath.e) <= r.error_bound
    a = theorem1_series(MOBIUS, 2, 1, 10_000, 120)
    b = maclaurin_riesz(1, 60, 120)
    assert diff(a.value, b.value) <= a.error_bound + b.error_bound


def test_planner_example():
    tol = mpf("1e-30")
    p = plan_truncation(100, 2, tol)
    with mpmath.workprec(100):
        tail = ZETA.tail_sum_bound(p.n_max, 2 * (p.m + 1))
        direct = mpf(100) ** (p.m + 1) / mpmath.factorial(p.m) * tail
    assert direct < tol
    assert kummer_truncation_bound(MOBIUS, 2, 100, p.m, p.n_max) < tol


def test_zeros_file_examples():
    t = parse_zeros("14.134725141734693790\n21.022039638771554993\n")
    assert len(t) == 2
    assert len(parse_zeros("")) == 0
    with pytest.raises(ZeroValidationError):
        parse_zeros("14.13\n14.13\n")


def test_g_examples():
    assert g_function(0, 5, 64) == 0
    # coefficient of X^1 is 2 / (pi zeta(3))
    X = mpf("1e-20")
    with mpmath.workprec(120):
        lead = g_function(X, 1, 100) / X
        assert abs(lead - 2 / (mpmath.pi * mpmath.zeta(3))) < mpf(10) ** -28
        assert abs(lead - mpf("0.5296")) < mpf("1e-4")
    # entire: the series still converges (with a finite bound) at X = 100
    v, err = g_series(mpf(100), 400, 64)
    assert mpmath.isfinite(err) and err < 1


def test_zero_term_examples(zeros_table):
    z = zeros_table.zeros[0]
    assert abs(zero_term(z, 1, 100)) < mpf("1e-3")
    # |Gamma(3/4 + i t/2)| against t^(1/4) exp(-pi t/4) up to the constant sqrt(2 pi) 2^(-1/4)
    for z in zeros_table.zeros[::20]:
        g = abs(mpmath.exp(log_gamma_complex(mpc("0.75", z.t / 2), 80)))
        env = math.sqrt(2 * math.pi) * 2**-0.25 * float(z.t) ** 0.25 * math.exp(-math.pi * float(z.t) / 4)
        assert abs(float(g) / env - 1) < 0.05


def test_zeta_prime_examples(zeros_table):
    digits = zeros_table.precision_decimal_digits
    for z in zeros_table.zeros[:10]:
        zp, _ = zeta_prime_with_error(z.t, 160)
        # Taylor bound at the table zero; digits are significant, so the offset scales with t
        assert abs(complex_zeta(z.rho, 160)) <= abs(zp) * z.t * mpf(10) ** (-digits + 1)
    zp = zeta_prime_with_error(zeros_table.zeros[0].t, 100)[0]
    assert abs(float(abs(zp)) - 0.79) < 0.2 * 0.79


def test_bracket_examples(zeros_table):
    assert bracket_zeros(zeros_table, K=10**6) == [Bracket(i, i + 1) for i in range(100)]
    assert bracket_zeros(ZeroTable((), "empty", 0)) == []
    covered = [i for b in bracket_zeros(zeros_table) for i in b.indices]
    assert covered == list(range(100))


def test_reconstruction_examples(zeros_table):
    x = mpf(1)
    head = zeros_table.zeros
    short = ZeroTable(tuple(z for z in head if z.t <= 60), "short", zeros_table.precision_decimal_digits)
    a = reconstruct_riesz(x, short, precision_bits=160).value
    b = reconstruct_riesz(x, zeros_table, precision_bits=160).value
    with mpmath.workprec(200):
        assert abs(a - b) < mpmath.exp(-mpmath.pi * 60 / 4) * 60


def test_zero_terms_decay(zeros_table):
    mags = [abs(zero_term(z, 1, 120)) for z in zeros_table.zeros]
    assert all(b < a for a, b in zip(mags[3:], mags[4:]))


def test_cli_examples(capsys, tmp_path):
    assert main(["eval", "0"]) == 0
    assert capsys.readouterr().out.strip() == "0, 0, 0, maclaurin"
    main(["eval", "1", "--method", "maclaurin"])
    main(["eval", "1", "--method", "kummer"])
    lines = capsys.readouterr().out.splitlines()
    values = [mpf(l.split(",")[1]) for l in lines]
    assert diff(values[0], values[1]) <= 2 * mpf("1e-30")
    main(["scan", "1", "100", "2"])
    rows = [l for l in capsys.readouterr().out.splitlines() if l[0].isdigit()]
    assert [r.split(",")[0] for r in rows] == ["1.000000000000000000000000000000000000000e+0",
                                               "1.000000000000000000000000000000000000000e+2"]
    assert main(["validate", "0"]) == 0
    assert capsys.readouterr().out.strip().endswith("0,0,0,0,0,0,0,0,0,0,0,0,0,pass")

from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from mpmath import mpf

from conftest import diff, oracle_riesz
from riesz.errors import DomainError, PlannerError
from riesz.numtheory import bernoulli_coefficients
from riesz.providers import MOBIUS, UNIT, ZETA
from riesz.series import (
    EvaluationResult,
    Method,
    SeriesParams,
    kummer_series,
    kummer_truncation_bound,
    maclaurin_coefficient,
    maclaurin_riesz,
    plan_truncation,
    remainder_F,
    theorem1_n_max_for,
    theorem1_series,
)


def oracle_F(x, m, prec=300):
    with mpmath.workprec(prec):
        x = mpf(x)
        return mpmath.exp(x) - mpmath.fsum(x**k / mpmath.factorial(k) for k in range(m))


class TestRemainder:
    @settings(max_examples=150, deadline=None)
    @given(st.floats(min_value=-60, max_value=60), st.integers(min_value=0, max_value=40))
    def test_matches_definition(self, x, m):
        got = remainder_F(x, m, 120)
        ref = oracle_F(x, m, 500)
        with mpmath.workprec(500):
            assert abs(got - ref) <= abs(ref) * mpmath.ldexp(1, -110) + mpmath.ldexp(1, -400)

    @settings(max_examples=150, deadline=None)
    @given(st.floats(min_value=-40, max_value=0), st.integers(min_value=1, max_value=30))
    def test_bound_for_nonpositive(self, x, m):
        # the inequality is for the exact value; allow the 150-bit relative rounding of the result
        with mpmath.workprec(200):
            bound = abs(mpf(x)) ** m / mpmath.factorial(m)
            assert abs(remainder_F(x, m, 150)) <= bound * (1 + mpmath.ldexp(1, -140))

    def test_positive_argument_exceeds_bound(self):
        # the inequality is a statement about x <= 0 only
        assert remainder_F(1, 1, 64) > 1

    def test_edges(self):
        assert remainder_F(0, 3, 64) == 0
        assert remainder_F(0, 0, 64) == 1
        with pytest.raises(DomainError):
            remainder_F(1, -1, 64)


class TestMaclaurin:
    def test_rational_coefficients(self):
        assert [maclaurin_coefficient(k) for k in range(1, 6)] == [24, -1440, 30240, -403200, 3991680]
        assert maclaurin_coefficient(6) == Fraction(-21794572800, 691)

    def test_coefficient_sign_alternates_with_k_plus_1(self):
        # leading term of Riesz(x) is +x/zeta(2); sign of k-th term is (-1)^(k+1)
        for k in range(1, 30):
            assert (maclaurin_coefficient(k) > 0) == (k % 2 == 1)

    def test_coefficients_match_zeta_form(self):
        # substituting y = x/(4 pi^2) turns 2/(c_2k (k-1)!) into (-1)^(k+1)/((k-1)! zeta(2k))
        with mpmath.workprec(200):
            for k in range(1, 12):
                q = maclaurin_coefficient(k)
                lhs = mpf(q.numerator) / q.denominator / (4 * mpmath.pi**2) ** k
                rhs = (-1) ** (k + 1) / (mpmath.factorial(k - 1) * mpmath.zeta(2 * k))
                assert abs(lhs - rhs) <= abs(rhs) * mpf(10) ** -50

    def test_first_coefficient_is_two_over_c2(self):
        assert maclaurin_coefficient(1) == 2 / bernoulli_coefficients(2)[1]

    @pytest.mark.parametrize("x", ["0.1", "1", "7.5", "30"])
    def test_against_oracle(self, x):
        r = maclaurin_riesz(x, 200, 200)
        assert diff(r.value, oracle_riesz(x)) <= r.error_bound
        assert r.method is Method.MACLAURIN

    def test_small_x_limit(self):
        # Riesz(x) ~ x / zeta(2) = 6x/pi^2
        r = maclaurin_riesz(mpf("1e-12"), 10, 200)
        with mpmath.workprec(200):
            assert abs(r.value - mpf("6e-12") / mpmath.pi**2) < mpf(10) ** -23

    def test_too_few_terms(self):
        with pytest.raises(PlannerError):
            maclaurin_riesz(50, 5, 100)


class TestPlainSeries:
    def test_unit_provider_is_x_exp_minus_x(self):
        r = theorem1_series(UNIT, 2, mpf(3), 10, 150)
        with mpmath.workprec(200):
            assert abs(r.value - 3 * mpmath.exp(-3)) <= r.error_bound
            assert r.error_bound < mpf(10) ** -40

    def test_bound_holds(self):
        for x in ("0.5", "4", "20"):
            r = theorem1_series(MOBIUS, 2, x, 3000, 120)
            assert diff(r.value, oracle_riesz(x)) <= r.error_bound

    def test_n_max_planner(self):
        n = theorem1_n_max_for(MOBIUS, 2, mpf(2), mpf("1e-3"))
        r = theorem1_series(MOBIUS, 2, mpf(2), n, 64)
        assert r.error_bound <= mpf("1e-3")
        with pytest.raises(PlannerError):
            theorem1_n_max_for(MOBIUS, 2, mpf(2), mpf("1e-20"), limit=10_000)

    def test_abscissa_enforced(self):
        with pytest.raises(DomainError):
            theorem1_series(MOBIUS, 1, mpf(2), 10, 64)


class TestKummer:
    def test_m_zero_is_theorem1(self):
        a = kummer_series(MOBIUS, 2, mpf(5), 0, 200, 120)
        b = theorem1_series(MOBIUS, 2, mpf(5), 200, 120)
        assert a.value == b.value and a.error_bound == b.error_bound
        assert a.method is Method.KUMMER

    @pytest.mark.parametrize("x,m,n", [("0.3", 3, 2), ("10", 8, 5), ("100", 25, 12), ("100", 5, 40)])
    def test_bound_holds(self, x, m, n):
        r = kummer_series(MOBIUS, 2, x, m, n, 200)
        assert diff(r.value, oracle_riesz(x)) <= r.error_bound

    @pytest.mark.slow
    def test_against_long_plain_sum(self):
        a = kummer_series(MOBIUS, 2, mpf(100), 20, 200, 200)
        b = theorem1_series(MOBIUS, 2, mpf(100), 10**6, 120)
        assert diff(a.value, b.value) <= a.error_bound + b.error_bound

    def test_more_terms_tighter_bound(self):
        x = mpf(50)
        bounds = [kummer_truncation_bound(MOBIUS, 2, x, m, 10) for m in range(10, 40, 5)]
        assert all(b2 < b1 for b1, b2 in zip(bounds, bounds[1:]))
        bounds = [kummer_truncation_bound(MOBIUS, 2, x, 12, n) for n in (5, 10, 20, 40, 80)]
        assert all(b2 < b1 for b1, b2 in zip(bounds, bounds[1:]))

    def test_zeta_provider_vs_direct_sum(self):
        # a_n = 1, c = 3: R_3(x) = x sum n^-3 exp(-x/n^3); the direct sum converges fast enough here
        x = mpf(2)
        r = kummer_series(ZETA, 3, x, 6, 6, 150)
        with mpmath.workprec(200):
            ref = x * mpmath.nsum(lambda n: n**-3 * mpmath.exp(-x / n**3), [1, mpmath.inf])
            assert abs(r.value - ref) <= r.error_bound + mpf(10) ** -40

    def test_unit_provider(self):
        r = kummer_series(UNIT, 2, mpf(4), 6, 1, 150)
        with mpmath.workprec(200):
            assert abs(r.value - 4 * mpmath.exp(-4)) <= r.error_bound


class TestPlanner:
    @pytest.mark.parametrize("x", ["0.01", "1", "100", "1e4", "1e6"])
    def test_plan_meets_tolerance(self, x):
        tol = mpf("1e-30")
        p = plan_truncation(mpf(x), 2, tol)
        assert kummer_truncation_bound(MOBIUS, 2, mpf(x), p.m, p.n_max) <= tol / 2
        r = kummer_series(MOBIUS, 2, mpf(x), p.m, p.n_max, p.precision_bits)
        assert r.error_bound <= tol

    def test_zero(self):
        p = plan_truncation(0, 2, mpf("1e-10"))
        assert (p.m, p.n_max) == (1, 1)

    def test_domain(self):
        with pytest.raises(DomainError):
            plan_truncation(-1, 2, mpf("1e-10"))
        with pytest.raises(DomainError):
            plan_truncation(1, 2, 0)
        with pytest.raises(DomainError):
            plan_truncation(1, mpf("0.9"), mpf("1e-10"))


def test_params_validation():
    with pytest.raises(DomainError):
        SeriesParams(2.0, -1, 1, 64)
    with pytest.raises(DomainError):
        SeriesParams(2.0, 1, 0, 64)
    with pytest.raises(ValueError):
        EvaluationResult(mpf(1), mpf(-1), SeriesParams(2.0, 1, 1, 64), Method.KUMMER)
    with pytest.raises(ValueError):
        EvaluationResult(mpf(1), mpmath.inf, SeriesParams(2.0, 1, 1, 64), Method.KUMMER)

import cmath
import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from qlommel.bessel import J_reg, j_reg
from qlommel.errors import DomainError
from qlommel.lommel import (
    F_limit,
    P1_eval,
    P_eval,
    P_half_closed,
    V_poly,
    al_salam_chihara,
    chebyshev_U,
    h_coeffs,
    h_eval,
    h_minimal,
    half_generating_function,
    lambda_P,
    lambda_p,
    p1_eval,
    p_eval,
    q_hermite,
    split_even_odd,
)
from qlommel.qseries import QContext, basic_phi, qpoch

Q = 0.5


class TestLaurent:
    def test_initial_values(self, ctx):
        assert h_eval(ctx, 1.5, 0, 0.3) == 1
        assert h_eval(ctx, 1.5, -1, 0.3) == 0
        x = 0.7 + 0.2j
        assert h_eval(ctx, 1.5, 1, x) == pytest.approx(1 / x + x * (1 - Q**1.5))

    def test_pole_at_origin(self, ctx):
        with pytest.raises(DomainError):
            h_eval(ctx, 1.0, 3, 0.0)

    @pytest.mark.parametrize("m,x", [(7, 2.0), (5, 0.6), (9, 1.1 - 0.4j)])
    def test_explicit_expansions(self, ctx, m, x):
        a = oracles.h_explicit(1.5, m, mp.mpmathify(x), Q)
        b = oracles.h_explicit_alt(1.5, m, mp.mpmathify(x), Q)
        assert abs(a - b) < 1e-25 * max(1, abs(a))
        assert abs(h_eval(ctx, 1.5, m, x) - complex(a)) < 1e-12 * max(1, abs(a))

    def test_coefficients_small(self, ctx):
        c = h_coeffs(ctx, 1.5, 1)
        assert c.coeffs == pytest.approx({-1: 1.0, 1: 1 - Q**1.5})

    @pytest.mark.parametrize("m", [4, 6, 11])
    def test_coefficient_invariants(self, ctx, m):
        c = h_coeffs(ctx, 1.5, m)
        assert c.parity_ok()
        assert c[m] == pytest.approx(qpoch(ctx, Q**1.5, m), rel=1e-14)
        assert c[-m] == pytest.approx(1.0, rel=1e-14)
        x = 1.3 - 0.2j
        assert c(x) == pytest.approx(h_eval(ctx, 1.5, m, x), rel=1e-13)

    def test_coefficients_from_explicit_sum(self, ctx):
        # coefficient of x^{m-2n} is the n-th 2phi1
        m = 6
        c = h_coeffs(ctx, 1.5, m)
        q = mp.mpf(Q)
        for n in range(m + 1):
            ref = oracles.phi([q ** (n - m), q ** (n + 1)], [q], q, q ** (1.5 + m - n))
            assert c[m - 2 * n] == pytest.approx(float(ref), rel=1e-13, abs=1e-15)

    def test_degenerate_flag(self):
        ctx = QContext(Q)
        c = h_coeffs(ctx, -2.0, 4)
        assert c.degenerate
        assert V_poly(ctx, -2.0, 4).degenerate
        assert not h_coeffs(ctx, 1.0, 4).degenerate

    def test_V_small(self, ctx):
        assert list(V_poly(ctx, 1.5, 0).coeffs) == [1.0]
        v1 = V_poly(ctx, 1.5, 1)
        assert list(v1.coeffs) == pytest.approx([1.0, 1 - Q**1.5])
        assert v1(-1 / (1 - Q**1.5)) == pytest.approx(0, abs=1e-15)

    def test_V_matches_h(self, ctx):
        x, m = 1.7, 8
        V = V_poly(ctx, 1.5, m)
        assert V.degree == m
        assert V.leading == pytest.approx(qpoch(ctx, Q**1.5, m), rel=1e-14)
        assert V(x * x) == pytest.approx(x**m * h_eval(ctx, 1.5, m, x), rel=1e-13)

    @settings(max_examples=60, deadline=None)
    @given(q=st.floats(0.1, 0.9), nu=st.floats(-0.5, 4), r=st.floats(0.5, 2),
           t=st.floats(0, 2 * math.pi), m=st.integers(1, 29))
    def test_recurrence_residual(self, q, nu, r, t, m):
        ctx = QContext(q)
        x = r * cmath.exp(1j * t)
        a, b, c = (h_eval(ctx, nu, k, x) for k in (m - 1, m, m + 1))
        lhs = c - (1 / x + x * (1 - q ** (nu + m))) * b + a
        scale = max(1.0, abs(a), abs(c), abs(b) * abs(1 / x + x))
        assert abs(lhs) < 1e-12 * scale


class TestConnection:
    @pytest.mark.parametrize("x", [1.2, 2.0, 2.8])
    def test_J_connection(self, ctx, x):
        nu = 1.5
        for m in range(16):
            lhs = oracles.J(nu + m, mp.mpf(1) / x, Q)
            t1 = h_eval(ctx, nu, m, x) * oracles.J(nu, mp.mpf(1) / x, Q)
            t2 = h_eval(ctx, nu + 1, m - 1, x) * oracles.J(nu - 1, mp.mpf(1) / x, Q)
            assert abs(lhs - (t1 - t2)) < 1e-10 * max(1, abs(t1), abs(t2))

    @pytest.mark.parametrize("x", [0.4, 0.9])
    def test_p_connection(self, ctx, x):
        nu, q = 1.5, Q
        for n in range(1, 13):
            s = (n + 1) // 2
            lhs = (p_eval(ctx, nu, n, 1 / x) * oracles.J(nu, x, q)
                   - p1_eval(ctx, nu, n - 1, 1 / x) * oracles.J(nu - 1, x, q))
            rhs = q ** (s * (n + nu) / 2) * oracles.J(nu + n, x * q ** (s / 2), q)
            assert abs(lhs - rhs) < 1e-10 * max(1, abs(rhs))


class TestOrdinaryFamilies:
    def test_p_small(self, ctx):
        nu = 1.5
        assert p_eval(ctx, nu, 0, 0.3) == 1
        assert p_eval(ctx, nu, 1, 0.3) == pytest.approx(0.3 * (1 - Q**nu))

    @pytest.mark.parametrize("nu", [0.5, 1.5, 3.0])
    def test_p_at_origin(self, ctx, nu):
        for n in range(8):
            assert p_eval(ctx, nu, 2 * n, 0.0) == pytest.approx(
                (-1) ** n * Q ** (n * (nu + 1) + 3 * n * (n - 1) / 2), rel=1e-13)
            assert p_eval(ctx, nu, 2 * n + 1, 0.0) == 0

    def test_lambda_closed_form(self, ctx):
        nu = 1.3
        for n in range(51):
            e = (nu + n) * ((n + 1) // 2 - n // 2) + n // 2
            assert lambda_p(ctx, nu, n) == pytest.approx(Q**e, rel=1e-13)

    def test_two_term_recurrence_at_origin(self, ctx):
        nu = 1.5
        for n in range(10):
            assert p_eval(ctx, nu, 2 * n + 2, 0.0) == pytest.approx(
                -lambda_p(ctx, nu, 2 * n + 1) * p_eval(ctx, nu, 2 * n, 0.0), rel=1e-13)

    def test_P_small(self, ctx):
        nu = 1.5
        assert P_eval(ctx, nu, 1, 0.4) == 0.4
        assert P_eval(ctx, nu, 2, 0.4) == pytest.approx(0.16 - Q**nu)
        assert P_eval(ctx, nu, -1, 0.4) == 0

    @pytest.mark.parametrize("nu", [0.5, 2.0])
    def test_P_at_origin(self, ctx, nu):
        for n in range(10):
            assert P_eval(ctx, nu, 2 * n, 0.0) == pytest.approx(
                (-1) ** n * Q ** (n * nu + n * (n - 1) / 2), rel=1e-13)

    def test_P_parity(self, ctx):
        for n in range(8):
            assert P_eval(ctx, 1.5, n, -0.7) == pytest.approx((-1) ** n * P_eval(ctx, 1.5, n, 0.7))

    def test_P1_shift(self, ctx):
        nu = 1.5
        assert P1_eval(ctx, nu, 2, 0.4) == pytest.approx(0.16 - lambda_P(ctx, nu, 2))

    def test_split_initial(self, ctx):
        nu = 1.5
        R, S = split_even_odd(ctx, nu, 1, "P")
        assert list(R.coeffs) == pytest.approx([-Q**nu, 1.0])
        T, U = split_even_odd(ctx, nu, 1, "P1")
        assert list(T.coeffs) == pytest.approx([-Q, 1.0])

    @pytest.mark.parametrize("family,ev", [("P", P_eval), ("P1", P1_eval)])
    def test_split_reassembles(self, ctx, family, ev):
        x, nu = 0.6, 1.5
        for n in range(8):
            even, odd = split_even_odd(ctx, nu, n, family)
            assert even(x * x) == pytest.approx(ev(ctx, nu, 2 * n, x), rel=1e-12, abs=1e-15)
            assert x * odd(x * x) == pytest.approx(ev(ctx, nu, 2 * n + 1, x), rel=1e-12, abs=1e-15)

    def test_bad_family(self, ctx):
        with pytest.raises(DomainError):
            split_even_odd(ctx, 1.0, 2, "Q")


class TestAuxiliaryFamilies:
    def test_asc_small(self, ctx):
        assert al_salam_chihara(ctx, 0, 0.2, 0.3, 0.4, 0.9) == 1
        assert al_salam_chihara(ctx, 1, 0.2, 0.3, 0.4, 0.9) == pytest.approx(0.7)

    def test_asc_generating_shift(self, ctx):
        nu, a, b = 1.5, 0.3, -0.2
        qn = Q**nu
        for n in range(1, 11):
            r = (al_salam_chihara(ctx, n, a, b, qn, -(1 + qn))
                 + (1 - Q**n) * al_salam_chihara(ctx, n - 1, a, b, qn, -(1 + qn))
                 - al_salam_chihara(ctx, n, a, b, qn * Q, -(Q + qn)))
            scale = abs(al_salam_chihara(ctx, n, a, b, qn, -(1 + qn))) + 1
            assert abs(r) < 1e-12 * scale

    def test_hermite_small(self, ctx):
        assert q_hermite(ctx, 0, 0.3) == 1
        assert q_hermite(ctx, 1, 0.3) == pytest.approx(0.6)

    @pytest.mark.parametrize("q", [0.49, 0.3, 0.8])
    def test_hermite_special_point(self, q):
        ctx = QContext(q)
        x = (q**0.25 + q**-0.25) / 2
        p = math.sqrt(q)
        for k in range(15):
            ref = q ** (-k / 4) * float(oracles.qpoch(-p, p, k))
            assert q_hermite(ctx, k, x) == pytest.approx(ref, rel=1e-12)

    def test_hermite_symmetric_sum(self, ctx):
        nu = 1.3
        x = Q ** ((nu - 1) / 2)
        q = mp.mpf(Q)
        for k in range(12):
            ref = mp.fsum(oracles.qpoch(q, q, k) / (oracles.qpoch(q, q, l) * oracles.qpoch(q, q, k - l))
                          * mp.mpf(x) ** (k - 2 * l) for l in range(k + 1))
            assert q_hermite(ctx, k, (x + 1 / x) / 2) == pytest.approx(float(ref), rel=1e-12)

    def test_chebyshev_small(self):
        assert chebyshev_U(0, 0.3) == 1
        assert chebyshev_U(1, 0.3) == pytest.approx(0.6)
        assert chebyshev_U(-1, 0.3) == 0

    def test_chebyshev_bound(self):
        theta = np.linspace(0, math.pi, 301)
        for n in range(31):
            assert np.all(np.abs(chebyshev_U(n, np.cos(theta))) <= n + 1 + 1e-9)

    def test_chebyshev_closed_form(self):
        x = 1.3 + 0.4j
        for n in range(12):
            ref = (x ** (n + 1) - x ** (-n - 1)) / (x - 1 / x)
            assert chebyshev_U(n, (x + 1 / x) / 2) == pytest.approx(ref, rel=1e-13)

    def test_chebyshev_is_the_q_zero_lommel(self):
        # with q -> 0 the recurrence coefficient (1 - q^{nu+m}) becomes 1
        x = 1.3
        ctx = QContext(1e-300)
        for n in range(11):
            assert h_eval(ctx, 1.0, n, x) == pytest.approx(chebyshev_U(n, (x + 1 / x) / 2), rel=1e-13)


class TestMinimal:
    def test_normalization_outside(self, ctx):
        for x in (2.0, -2.0, 2j, 2 * cmath.exp(0.3j)):
            assert abs(x**40 * h_minimal(ctx, 1.5, "+", 40, x) - 1) < 1e-10

    def test_normalization_inside(self, ctx):
        for x in (0.5, 0.5j):
            assert abs(x**-40 * h_minimal(ctx, 1.5, "-", 40, x) - 1) < 1e-10

    @pytest.mark.parametrize("sign,x", [("+", 1.5), ("+", 0.9 + 0.6j), ("-", 0.7), ("-", 0.3 - 0.8j)])
    def test_satisfies_recurrence(self, ctx, sign, x):
        nu = 1.5
        for n in range(0, 10):
            a, b, c = (h_minimal(ctx, nu, sign, k, x) for k in (n - 1, n, n + 1))
            res = c - (1 / x + x * (1 - Q ** (nu + n))) * b + a
            assert abs(res) < 1e-12 * max(abs(a), abs(b), abs(c))

    def test_against_bessel_oracles(self, ctx):
        nu, x, n = 1.5, 1.6, 3
        q = mp.mpf(Q)
        ref = mp.qp(q, q) / mp.qp(q / x**2, q) * mp.mpf(x) ** nu * oracles.J(nu + n, 1 / mp.mpf(x), Q)
        assert h_minimal(ctx, nu, "+", n, x) == pytest.approx(float(ref), rel=1e-13)
        ref = mp.mpf(0.6) ** -nu * oracles.j(nu + n, mp.mpf(0.6), Q) / mp.qp(q * 0.36, q)
        assert h_minimal(ctx, nu, "-", n, 0.6) == pytest.approx(float(ref), rel=1e-13)

    def test_excluded_regions(self, ctx):
        with pytest.raises(DomainError):
            h_minimal(ctx, 1.0, "+", 2, 0.5)
        with pytest.raises(DomainError):
            h_minimal(ctx, 1.0, "-", 2, 1.5)
        with pytest.raises(DomainError):
            h_minimal(ctx, 1.0, "0", 2, 1.0)

    def test_green_tail(self, ctx):
        nu, x = 1.5, 1.5
        t = (x + 1 / x) / 2
        for n in range(5):
            tail = sum(Q ** (nu + k) * h_minimal(ctx, nu, "+", k, x) * chebyshev_U(k - n - 1, t)
                       for k in range(n + 1, n + 80))
            assert abs(h_minimal(ctx, nu, "+", n, x) - x**-n + x * tail) < 1e-10

    def test_wronskian_combination(self, ctx):
        nu, x, n = 1.5, 0.8 + 0.1j, 5
        lhs = (1 / x - x) * h_eval(ctx, nu, n, x)
        rhs = (h_minimal(ctx, nu, "-", -1, x) * h_minimal(ctx, nu, "+", n, x)
               - h_minimal(ctx, nu, "+", -1, x) * h_minimal(ctx, nu, "-", n, x))
        assert abs(lhs - rhs) < 1e-10


class TestHalfOrder:
    def test_small(self, ctx):
        assert P_half_closed(ctx, 0, 0.7) == 1
        assert P_half_closed(ctx, 1, 0.7) == 0.7

    @pytest.mark.parametrize("q", [0.5, 0.36])
    def test_closed_form_matches_recurrence(self, q):
        ctx = QContext(q)
        for n in range(13):
            assert P_half_closed(ctx, n, 1.4) == pytest.approx(P_eval(ctx, 0.5, n, 1.4), rel=1e-12)

    def test_generating_function(self, ctx):
        z, x = 0.2, 0.9
        direct = sum(P_eval(ctx, 0.5, n, x) * z**n for n in range(80))
        assert half_generating_function(ctx, z, x) == pytest.approx(direct, rel=1e-12)

    def test_associated_is_rescaled(self, ctx):
        p = math.sqrt(Q)
        for n in range(10):
            assert P1_eval(ctx, 0.5, n, 0.8) == pytest.approx(
                p ** (n / 2) * P_eval(ctx, 0.5, n, 0.8 / math.sqrt(p)), rel=1e-12)

    def test_F_as_bessel(self):
        q, x = 0.36, 0.5
        ctx = QContext(q)
        p = math.sqrt(q)
        F = F_limit(ctx, x)
        via_phi = basic_phi(QContext(p), [], [0], -x * x * p)
        assert F == pytest.approx(via_phi, rel=1e-14)
        ref = mp.sqrt(x) * oracles.j(-0.5, mp.mpf(x), q)
        assert F == pytest.approx(float(ref), rel=1e-12)

    def test_limit_approached(self, ctx):
        # the error decays only like p^{n/2}, so check the trend rather than a fixed digit count
        x = 0.5
        errs = [abs(x**n * P_eval(ctx, 0.5, n, 1 / x) - F_limit(ctx, x)) for n in (10, 20, 40)]
        assert errs[0] > errs[1] > errs[2]
        assert errs[2] < 1e-5

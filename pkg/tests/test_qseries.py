import cmath
import math

import mpmath as mp
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from qlommel.errors import ConvergenceError, DomainError
from qlommel.qseries import QContext, basic_phi, phi11_entire, phi11_scaled, qpoch

qs = st.floats(min_value=0.05, max_value=0.9)
small_complex = st.builds(lambda r, t: r * cmath.exp(1j * t),
                          st.floats(0, 2), st.floats(0, 2 * math.pi))


class TestQContext:
    @pytest.mark.parametrize("q", [0.0, 1.0, -0.2, 1.5])
    def test_q_outside_unit_interval(self, q):
        with pytest.raises(DomainError):
            QContext(q)

    def test_bad_settings(self):
        with pytest.raises(DomainError):
            QContext(0.5, series_tol=0)
        with pytest.raises(DomainError):
            QContext(0.5, max_terms=0)


class TestQpoch:
    def test_empty_product(self, ctx):
        assert qpoch(ctx, 3.7 + 1j, 0) == 1

    def test_infinite_matches_long_product(self, ctx):
        direct = 1.0
        for i in range(200):
            direct *= 1 - 0.5 * 0.5**i
        assert qpoch(ctx, 0.5) == pytest.approx(direct, rel=1e-15)

    def test_vanishing_factor(self, ctx):
        assert qpoch(ctx, 0.5**-3, 5) == 0

    @pytest.mark.parametrize("q,a", [(0.3, 0.7), (0.5, -1.3), (0.8, 0.2 + 0.9j)])
    def test_against_mpmath(self, q, a):
        ref = mp.qp(mp.mpc(a), mp.mpf(q))
        assert abs(qpoch(QContext(q), a) - complex(ref)) < 1e-14 * max(1, abs(ref))

    @settings(max_examples=60, deadline=None)
    @given(q=qs, a=small_complex, m=st.integers(0, 20), n=st.integers(0, 20))
    def test_split_property(self, q, a, m, n):
        ctx = QContext(q)
        lhs = qpoch(ctx, a, m + n)
        rhs = qpoch(ctx, a, m) * qpoch(ctx, a * q**m, n)
        assert abs(lhs - rhs) <= 1e-13 * max(1.0, abs(lhs), abs(qpoch(ctx, a, m)) * abs(qpoch(ctx, a * q**m, n)))


class TestBasicPhi:
    def test_z_zero(self, ctx):
        assert basic_phi(ctx, [0], [0.3], 0) == 1

    def test_terminating_2phi1_by_hand(self, ctx):
        q, z = 0.5, 0.37
        a, b, c = q**-2, q**3, q
        t1 = (1 - a) * (1 - b) / ((1 - q) * (1 - c)) * z
        t2 = t1 * (1 - a * q) * (1 - b * q) / ((1 - q**2) * (1 - c * q)) * z
        assert basic_phi(ctx, [a, b], [c], z) == pytest.approx(1 + t1 + t2, rel=1e-15)

    def test_terminating_respects_short_budget(self):
        q, n = 0.5, 6
        args = ([q**-n, 0.3], [0.7], 0.4)
        full = basic_phi(QContext(q), *args)
        short = basic_phi(QContext(q, max_terms=n + 1), *args)
        assert short == full

    @pytest.mark.parametrize("nums,dens,z", [
        ([0], [0.5], 0.5 * 0.8**2),
        ([0.3, -0.4], [0.9], 0.7),
        ([], [0], -2.0),
        ([0.2 + 0.1j], [0.6], 1.5 - 0.5j),
    ])
    def test_against_naive_summation(self, ctx, nums, dens, z):
        ref = oracles.phi(nums, dens, 0.5, z, terms=4000)
        assert abs(basic_phi(ctx, nums, dens, z) - complex(ref)) < 1e-14 * max(1, abs(ref))

    def test_one_phi_one_with_ten_times_terms(self):
        # J_0 relation: 1phi1(0; q; q, q x^2)
        q, x = 0.5, 0.8
        ctx = QContext(q)
        ref = basic_phi(QContext(q, max_terms=5000, series_tol=1e-17), [0], [q], q * x * x)
        assert basic_phi(ctx, [0], [q], q * x * x) == pytest.approx(ref, rel=1e-14)

    def test_pole_in_denominator(self, ctx):
        with pytest.raises(DomainError):
            basic_phi(ctx, [0.3], [0.5**-2], 0.1)

    def test_divergent_cases(self, ctx):
        with pytest.raises(ConvergenceError):
            basic_phi(ctx, [0.3, 0.2], [0.4], 1.2)
        with pytest.raises(ConvergenceError):
            basic_phi(ctx, [0.3, 0.2, 0.1], [], 0.5)

    def test_budget_exhausted(self):
        with pytest.raises(ConvergenceError):
            basic_phi(QContext(0.99, max_terms=5), [0.3], [], 0.99)

    @settings(max_examples=40, deadline=None)
    @given(q=st.floats(0.1, 0.8), l=st.integers(0, 10), x=st.floats(-0.9, 0.9))
    def test_q_binomial_instance(self, q, l, x):
        # q-binomial theorem with a = q^{l+1}
        ctx = QContext(q)
        lhs = basic_phi(ctx, [q ** (l + 1)], [], x * x)
        rhs = 1 / qpoch(ctx, x * x, l + 1)
        assert lhs == pytest.approx(rhs, rel=1e-12)


class TestEntireKernel:
    @settings(max_examples=50, deadline=None)
    @given(q=qs, z=small_complex, c=small_complex)
    def test_symmetric_in_arguments(self, q, z, c):
        ctx = QContext(q)
        a, b = phi11_entire(ctx, z, c), phi11_entire(ctx, c, z)
        assert abs(a - b) <= 1e-12 * max(1.0, abs(a))

    @pytest.mark.parametrize("q,z,c", [(0.5, 0.3, 0.25), (0.3, -4.0, 0.3**1.5),
                                       (0.7, 2 + 1j, 0.7**2.2), (0.5, 40.0, 0.5**0.5)])
    def test_against_mpmath(self, q, z, c):
        ref = oracles.entire(mp.mpc(z), mp.mpf(c), q)
        assert abs(phi11_entire(QContext(q), z, c) - complex(ref)) < 1e-13 * max(1, abs(ref))

    def test_scaled_form_for_large_arguments(self):
        q = 0.5
        ctx = QContext(q)
        z, c = q * 3000.0**2, q**2.5
        mant, ls = phi11_scaled(ctx, z, c)
        ref = oracles.entire(mp.mpf(z), mp.mpf(c), q, terms=600)
        assert mant * mp.e**ls == pytest.approx(float(ref), rel=1e-10)

    def test_matches_product_times_series(self, ctx):
        z, c = 0.8, 0.3
        assert phi11_entire(ctx, z, c) == pytest.approx(
            qpoch(ctx, c) * basic_phi(ctx, [0], [c], z), rel=1e-14)

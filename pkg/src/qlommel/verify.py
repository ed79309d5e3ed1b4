"""Registry of checkable identities, limits and bounds, plus a batch runner.

Every entry maps a parameter dictionary to a non-negative residual.  Three
kinds exist:

``algebraic``
    finite identities; the residual is ``|LHS - RHS|`` divided by
    ``max(1, largest individual term)`` so that cancellation between large
    terms is measured relative to the terms themselves.
``limit``
    the residual ``|value(n) - target| / max(1, |target|)`` is computed on an
    index ladder (default 10, 20, 40).  A case passes when the last rung is
    below tolerance and no larger than the first.
``bound``
    inequalities; the residual is the largest relative violation
    ``max(0, lhs/rhs - 1)`` (zero when every sample satisfies the bound).

Infinite sums that are truncated (Green-function representation of the
minimal solutions, generating function) are checked with the limit tolerance.
"""
from __future__ import annotations

import cmath
import dataclasses
import math
from dataclasses import dataclass, field
from typing import Callable, Iterable

import numpy as np

from .bessel import J, J_reg, j, j_reg, wronskian_residual, wronskian_shifted
from .errors import ConfigError, DomainError, QLommelError
from .lommel import (
    P1_eval,
    P_eval,
    P_half_closed,
    al_salam_chihara,
    chebyshev_U,
    h_coeffs,
    h_eval,
    h_minimal,
    h_sequence,
    half_generating_function,
    F_limit,
    p1_eval,
    p_eval,
    q_hermite,
    split_even_odd,
)
from .qseries import QContext, basic_phi, qpoch
from .spectral import m_bound

__all__ = [
    "IDS",
    "IdentityCase",
    "SuiteConfig",
    "SuiteReport",
    "check_identity",
    "run_suite",
]

TOL_ALGEBRAIC = 1e-11
TOL_LIMIT = 1e-8
LADDER = (10, 20, 40)


@dataclass(frozen=True)
class IdentityCase:
    """Outcome of one registry check.

    ``ladder`` maps index to residual for limit-type ids; ``monotone`` is the
    guard ``residual(last) <= residual(first)``.  ``error`` holds the message
    of an exception raised while evaluating, in which case ``passed`` is
    False and ``residual`` is ``inf``.
    """

    id: str
    params: dict
    residual: float
    tolerance: float
    passed: bool
    kind: str
    ladder: dict | None = None
    monotone: bool | None = None
    error: str | None = None

    def to_dict(self) -> dict:
        d = dataclasses.asdict(self)
        d["params"] = _jsonable(self.params)
        if self.ladder is not None:
            d["ladder"] = {str(k): v for k, v in self.ladder.items()}
        return d


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if isinstance(obj, np.generic):
        return obj.item()
    return obj


# --------------------------------------------------------------------------
# helpers


def _resid(*terms) -> float:
    """``|sum(terms)| / max(1, max |term|)``."""
    scale = max([1.0] + [abs(t) for t in terms])
    return abs(sum(terms)) / scale


def _rel(value, target) -> float:
    return abs(value - target) / max(1.0, abs(target))


def _violation(lhs: float, rhs: float) -> float:
    return max(0.0, lhs / rhs - 1.0)


def _circle(n: int, r: float = 1.0) -> list[complex]:
    # offset by half a step so x = +-1 is never sampled
    return [r * cmath.exp(2j * math.pi * (k + 0.5) / n) for k in range(n)]


def _pbase(ctx: QContext) -> QContext:
    return dataclasses.replace(ctx, q=math.sqrt(ctx.q))


def _need_annulus(ctx, xs):
    lo, hi = math.sqrt(ctx.q), 1 / math.sqrt(ctx.q)
    for x in xs:
        if not lo < abs(x) < hi:
            raise DomainError(f"|x| must lie in (q^(1/2), q^(-1/2)), got {x!r}")


def _need_positive(xs):
    for x in xs:
        if isinstance(x, complex) or not x > 0:
            raise DomainError(f"real x > 0 required, got {x!r}")


# --------------------------------------------------------------------------
# algebraic identities


def _rec_h(ctx, p):
    nu, n, xs = p["nu"], p["n"], p["x"]
    worst = 0.0
    for x in xs:
        first = h_sequence(ctx, nu, n + 1, x)
        second = [0.0] + h_sequence(ctx, nu + 1, n, x)  # h_{m-1, nu+1}
        for m in range(n + 1):
            coeff_val = h_coeffs(ctx, nu, m)(x)
            worst = max(worst, _resid(coeff_val, -first[m]))
            # Casoratian of the two solutions equals -1 for every m
            a, b = first[m + 1] * second[m], first[m] * second[m + 1]
            worst = max(worst, _resid(a, -b, 1.0))
    return worst


def _contig_even(ctx, p):
    nu, q, xs = p["nu"], ctx.q, p["x"]
    _need_positive(xs)
    return max(_resid((1 - q**nu) / x * J(ctx, nu, x), -J(ctx, nu - 1, x),
                      -q ** ((nu + 1) / 2) * J(ctx, nu + 1, x * math.sqrt(q)))
               for x in xs)


def _contig_odd(ctx, p):
    nu, q, xs = p["nu"], ctx.q, p["x"]
    _need_positive(xs)
    return max(_resid((1 - q**nu) / x * J(ctx, nu, x),
                      -q ** ((nu - 1) / 2) * J(ctx, nu - 1, x / math.sqrt(q)),
                      -J(ctx, nu + 1, x))
               for x in xs)


def _heine(ctx, p):
    q = ctx.q
    worst = 0.0
    for c in p["c"]:
        for z in p["z"]:
            worst = max(worst, _resid(
                basic_phi(ctx, [0], [c], z),
                -basic_phi(ctx, [0], [c], q * z),
                z / (1 - c) * basic_phi(ctx, [0], [c * q], q * z)))
    return worst


def _j_shift_a(ctx, p):
    nu, q, xs = p["nu"], ctx.q, p["x"]
    _need_positive(xs)
    return max(_resid(j(ctx, nu, x), -j(ctx, nu + 1, x) / x,
                      q ** (1 + nu / 2) * x * x * j(ctx, nu, x * math.sqrt(q)))
               for x in xs)


def _j_shift_b(ctx, p):
    nu, q, xs = p["nu"], ctx.q, p["x"]
    _need_positive(xs)
    return max(_resid(j(ctx, nu + 1, x), -q ** (-nu / 2) * x * j(ctx, nu, x * math.sqrt(q)),
                      q ** ((1 - nu) / 2) * x * x * j(ctx, nu + 1, x * math.sqrt(q)))
               for x in xs)


def _wronsk(ctx, p):
    nu, xs = p["nu"], p["x"]
    _need_annulus(ctx, xs)
    worst = 0.0
    for x in xs:
        lhs = wronskian_shifted(ctx, nu, x, 0)
        rhs = lhs - wronskian_residual(ctx, nu, x)
        worst = max(worst, _rel(lhs, rhs))
        for m in p["shifts"]:
            worst = max(worst, _rel(wronskian_shifted(ctx, nu, x, m), rhs))
    return worst


def _conn_j(ctx, p):
    nu, n, xs, q = p["nu"], p["n"], p["x"], ctx.q
    _need_positive(xs)
    worst = 0.0
    for x in xs:
        h1 = h_sequence(ctx, nu, n, x)
        h2 = [0.0] + h_sequence(ctx, nu + 1, n, x)
        Jv, Jm = J(ctx, nu, 1 / x), J(ctx, nu - 1, 1 / x)
        jv, jm = j(ctx, nu, x), j(ctx, nu - 1, x)
        for m in range(n + 1):
            worst = max(worst,
                        _resid(J(ctx, nu + m, 1 / x), -h1[m] * Jv, h2[m] * Jm),
                        _resid(j(ctx, nu + m, x), -h1[m] * jv, h2[m] * jm))
            if m >= 1:
                coef = 1 / x + x * (1 - q ** (nu + m))
                for f, arg in ((J, 1 / x), (j, x)):
                    worst = max(worst, _resid(f(ctx, nu + m + 1, arg),
                                              -coef * f(ctx, nu + m, arg),
                                              f(ctx, nu + m - 1, arg)))
    return worst


def _conn_p(ctx, p):
    nu, n, xs, q = p["nu"], p["n"], p["x"], ctx.q
    _need_positive(xs)
    worst = 0.0
    for x in xs:
        Jv, Jm = J(ctx, nu, x), J(ctx, nu - 1, x)
        for k in range(n + 1):
            f = (k + 1) // 2
            rhs = q ** (f * (k + nu) / 2) * J(ctx, nu + k, x * q ** (f / 2))
            worst = max(worst, _resid(p_eval(ctx, nu, k, 1 / x) * Jv,
                                      -p1_eval(ctx, nu, k - 1, 1 / x) * Jm, -rhs))
    return worst


def _conn_P(ctx, p):
    nu, n, xs, q = p["nu"], p["n"], p["x"], ctx.q
    _need_positive(xs)
    worst = 0.0
    for x in xs:
        jv, jm = j(ctx, nu, x), j(ctx, nu - 1, x)
        for k in range(n + 1):
            m, odd = (k + 1) // 2, k % 2
            if odd:
                rhs = q ** (m * (m + (nu - 1) / 2)) * x ** (2 * m) * j(ctx, nu - 1, x * q ** (m / 2))
            else:
                rhs = q ** (m * (m + nu / 2)) * x ** (2 * m) * j(ctx, nu, x * q ** (m / 2))
            worst = max(worst, _resid(P_eval(ctx, nu, k, 1 / x) * jv,
                                      -P1_eval(ctx, nu, k - 1, 1 / x) * jm, -rhs))
    return worst


def _3phi2_terms(ctx, k, c):
    """Terms of ``(c^2;q)_k 3phi2(q^-k, c q^-1/2, c; c^2, 0; q, q)``."""
    q = ctx.q
    pre = qpoch(ctx, c * c, k)
    terms, t = [], pre
    for i in range(k + 1):
        terms.append(t)
        t *= ((1 - q ** (i - k)) * (1 - c * q ** (i - 0.5)) * (1 - c * q**i)
              / ((1 - q ** (i + 1)) * (1 - c * c * q**i)) * q)
    return terms


def _sum_3phi2(ctx, p):
    q = ctx.q
    pctx = _pbase(ctx)
    rng = np.random.default_rng(p["seed"])
    radius = p["radius"]
    cs = [complex(*v) for v in rng.uniform(-radius, radius, size=(p["count"], 2))]
    # second route: the 3phi2 is an Al-Salam--Chihara polynomial, evaluated
    # by its recurrence; the direct sum cancels badly once k is large
    alpha = -(q**0.75)
    x = (q**0.25 + q**-0.25) / 2
    worst = 0.0
    for c in cs:
        g, d = c * q**-0.25, c * q**0.25
        for k in range(p["n"] + 1):
            rhs = ((c / math.sqrt(q)) ** k * qpoch(pctx, -math.sqrt(q), k)
                   * qpoch(pctx, c, k))
            if k <= p["n_direct"]:
                worst = max(worst, _resid(*_3phi2_terms(ctx, k, c), -rhs))
            asc = (g / alpha) ** k * al_salam_chihara(
                ctx, k, (g + d) * alpha, g * d * alpha**2, alpha**2, 2 * alpha * x)
            worst = max(worst, _rel(asc, rhs))
    return worst


def _hermite_eval(ctx, p):
    q = ctx.q
    pctx = _pbase(ctx)
    x = (q**0.25 + q**-0.25) / 2
    return max(_rel(q_hermite(ctx, k, x), q ** (-k / 4) * qpoch(pctx, -math.sqrt(q), k))
               for k in range(p["n"] + 1))


def _eq_522(ctx, p):
    pctx = _pbase(ctx)
    pb = pctx.q
    worst = 0.0
    for x in p["x"]:
        f0 = basic_phi(pctx, [], [0], -x * x * pb)
        f1 = basic_phi(pctx, [], [0], -x * x * pb * pb)
        worst = max(worst, _rel(f0, j_reg(ctx, -0.5, x)), _rel(f1, j_reg(ctx, 0.5, x)))
    return worst


def _asc_terms(ctx, n, x, first, a_of, b_of, c):
    """``sum_k x^{n-k} q^{k(k-1)/2}/(q;q)_k P_k(first; a_of(n-k), b_of(n-k), c)``."""
    q = ctx.q
    terms = []
    for k in range(n + 1):
        asc = al_salam_chihara(ctx, k, a_of(n - k), b_of(n - k), c, first)
        terms.append(x ** (n - k) * q ** (k * (k - 1) / 2) / qpoch(ctx, q, k) * asc)
    return terms


def _asc_shift(ctx, p):
    nu, n, q = p["nu"], p["n"], ctx.q
    worst = 0.0
    for a, b in p["ab"]:
        for k in range(n + 1):
            lhs = al_salam_chihara(ctx, k, a, b, q**nu, -(1 + q**nu))
            prev = al_salam_chihara(ctx, k - 1, a, b, q**nu, -(1 + q**nu)) if k else 0.0
            rhs = al_salam_chihara(ctx, k, a, b, q ** (nu + 1), -(q + q**nu))
            worst = max(worst, _resid(lhs, (1 - q**k) * prev, -rhs))
    # the resulting explicit forms of the even/odd parts
    for m in range(min(n, 12) + 1):
        R, S = split_even_odd(ctx, nu, m, "P")
        for x in p["x"]:
            s_terms = _asc_terms(ctx, m, x, -(q + q**nu),
                                 lambda d: -(1 + q ** (nu - 1)) * q ** (d + 2),
                                 lambda d: q ** (2 * d + nu + 3), q ** (nu + 1))
            r_terms = _asc_terms(ctx, m, x, -(q + q**nu),
                                 lambda d: -(1 + q**nu) * q ** (d + 1),
                                 lambda d: q ** (2 * d + nu + 2), q ** (nu + 1))
            worst = max(worst, _resid(*s_terms, -S(x)), _resid(*r_terms, -R(x)))
    return worst


def _genfun_half(ctx, p):
    worst = 0.0
    for z in p["z"]:
        for x in p["x"]:
            if abs(z * x) >= 1:
                raise DomainError("generating function needs |z x| < 1")
            total, zn, k = 0.0, 1.0, 0
            prev, cur = 0.0, 1.0  # P_{-1}, P_0 at nu = 1/2
            pb = math.sqrt(ctx.q)
            while True:
                term = cur * zn
                total += term
                if k > 10 and abs(term) < 1e-18 * max(1.0, abs(total)):
                    break
                prev, cur = cur, x * cur - pb**k * prev
                zn *= z
                k += 1
                if k > 5000:
                    raise QLommelError("generating-function series did not settle")
            worst = max(worst, _rel(half_generating_function(ctx, z, x), total))
    return worst


def _closed_half(ctx, p):
    worst = 0.0
    for x in p["x"]:
        for n in range(p["n"] + 1):
            worst = max(worst, _resid(P_half_closed(ctx, n, x), -P_eval(ctx, 0.5, n, x)))
    return worst


def _p1_half(ctx, p):
    pb = math.sqrt(ctx.q)
    worst = 0.0
    for x in p["x"]:
        for n in range(p["n"] + 1):
            worst = max(worst, _resid(P1_eval(ctx, 0.5, n, x),
                                      -pb ** (n / 2) * P_eval(ctx, 0.5, n, x / math.sqrt(pb))))
    return worst


def _green_fwd(ctx, p):
    nu, n, q = p["nu"], p["n"], ctx.q
    worst = 0.0
    for x in p["x"]:
        t = (x + 1 / x) / 2
        h = h_sequence(ctx, nu, n, x)
        U = [chebyshev_U(k, t) for k in range(n + 1)]
        for m in range(n + 1):
            terms = [U[m], -h[m]]
            terms += [-x * q ** (nu + k) * U[m - k - 1] * h[k] for k in range(m)]
            worst = max(worst, _resid(*terms))
    return worst


def _minimal_seq(ctx, nu, sign, x, lo, hi):
    return {k: h_minimal(ctx, nu, sign, k, x) for k in range(lo, hi + 1)}


def _green_tail(ctx, nu, sign, x, n, hmin):
    """``x^{-+n} - x sum_{k>n} q^{nu+k} h^+-_k U_{k-n-1}``, truncated."""
    q = ctx.q
    t = (x + 1 / x) / 2
    total = x ** (-n) if sign == "+" else x**n
    k = n + 1
    while True:
        if k not in hmin:
            hmin[k] = h_minimal(ctx, nu, sign, k, x)
        term = -x * q ** (nu + k) * hmin[k] * chebyshev_U(k - n - 1, t)
        total += term
        if abs(term) < 1e-18 * max(1.0, abs(total)) or k > n + 2000:
            return total
        k += 1


def _green_bwd(ctx, p):
    nu, n = p["nu"], p["n"]
    worst = 0.0
    for sign, xs in (("+", p["x_out"]), ("-", p["x_in"])):
        for x in xs:
            hmin = _minimal_seq(ctx, nu, sign, x, 0, n)
            for m in range(n + 1):
                worst = max(worst, _rel(hmin[m], _green_tail(ctx, nu, sign, x, m, hmin)))
    return worst


def _wronsk_combo(ctx, p):
    nu, n = p["nu"], p["n"]
    _need_annulus(ctx, p["x"])
    worst = 0.0
    for x in p["x"]:
        hp_1 = h_minimal(ctx, nu, "+", -1, x)
        hm_1 = h_minimal(ctx, nu, "-", -1, x)
        h = h_sequence(ctx, nu, n, x)
        for m in range(n + 1):
            a = hm_1 * h_minimal(ctx, nu, "+", m, x)
            b = hp_1 * h_minimal(ctx, nu, "-", m, x)
            worst = max(worst, _resid(a, -b, -(1 / x - x) * h[m]))
    return worst


# --------------------------------------------------------------------------
# bounds


def _bound_circle(ctx, p):
    nu, n, q = p["nu"], p["n"], ctx.q
    e = q**nu / (1 - q) ** 2
    worst = 0.0
    for theta in [2 * math.pi * (k + 0.5) / p["samples"] for k in range(p["samples"])]:
        x = cmath.exp(1j * theta)
        h = h_sequence(ctx, nu, n, x)
        for m in range(n + 1):
            worst = max(worst,
                        _violation(abs(h[m]), (m + 1) * math.exp(e)),
                        _violation(abs(math.sin(theta) * h[m]), 1 + e * math.exp(e)))
    g = q**nu / (1 - q)
    for r in p["radii"]:
        for x in _circle(p["samples"], r):
            h = h_sequence(ctx, nu, n, x)
            d = abs(1 - x * x) if r < 1 else abs(1 - x**-2)
            rhs = 2 / d * math.exp(2 / d * g)
            for m in range(n + 1):
                lhs = abs(x**m * h[m]) if r < 1 else abs(x ** (-m) * h[m])
                worst = max(worst, _violation(lhs, rhs))
    return worst


def _bound_min(ctx, p):
    nu, n, q = p["nu"], p["n"], ctx.q
    worst = 0.0
    for r in p["radii"]:
        for x in _circle(p["samples"], r):
            for m in range(n + 1):
                a = q ** (nu + m + 1) / (1 - q)
                b14 = math.exp(m * a + q ** (nu + m + 1) / (1 - q) ** 2)
                if r >= 1:
                    lhs = abs(x**m * h_minimal(ctx, nu, "+", m, x))
                    worst = max(worst, _violation(lhs, math.exp(2 / abs(1 - x**-2) * a)),
                                _violation(lhs, b14))
                if r <= 1:
                    lhs = abs(x ** (-m) * h_minimal(ctx, nu, "-", m, x))
                    worst = max(worst, _violation(lhs, math.exp(2 / abs(1 - x * x) * a)),
                                _violation(lhs, b14))
    return worst


def _zerofree(ctx, p):
    nu = p["nu"]
    n0 = max(0, math.ceil(m_bound(ctx, nu)))
    worst = 0.0
    grid = np.linspace(1.0, 5.0, p["points"])
    inner = np.linspace(0.0, 1.0, p["points"])
    for n in range(n0, n0 + p["extra"] + 1):
        vals = [h_minimal(ctx, nu, "+", n, float(x)) for x in grid]
        if not (all(v > 0 for v in vals) or all(v < 0 for v in vals)):
            worst = max(worst, 1.0)
        # x^{-n} h^-_n in its regular form, which is finite at x = 0
        vals = [j_reg(ctx, nu + n, float(x)) / qpoch(ctx, ctx.q * x * x) for x in inner]
        if not (all(v > 0 for v in vals) or all(v < 0 for v in vals)):
            worst = max(worst, 1.0)
        for x in _circle(p["samples"]):
            worst = max(worst,
                        _violation(abs(1 - x**n * h_minimal(ctx, nu, "+", n, x)), 1.0),
                        _violation(abs(1 - x ** (-n) * h_minimal(ctx, nu, "-", n, x)), 1.0))
    return worst


# --------------------------------------------------------------------------
# limits: each returns the residual at ladder index n


def _hurwitz_out(ctx, p, n):
    nu = p["nu"]
    worst = 0.0
    for x in p["x"]:
        if abs(x) <= 1:
            raise DomainError("outer Hurwitz limit needs |x| > 1")
        target = qpoch(ctx, ctx.q) / qpoch(ctx, x**-2) * J_reg(ctx, nu - 1, 1 / x)
        worst = max(worst, _rel(x ** (-n) * h_eval(ctx, nu, n, x), target))
    return worst


def _hurwitz_in(ctx, p, n):
    nu = p["nu"]
    worst = 0.0
    for x in p["x"]:
        if not 0 < abs(x) < 1:
            raise DomainError("inner Hurwitz limit needs 0 < |x| < 1")
        target = j_reg(ctx, nu - 1, x) / qpoch(ctx, x * x)
        worst = max(worst, _rel(x**n * h_eval(ctx, nu, n, x), target))
    return worst


def _asymp_min(ctx, p, n):
    nu, q = p["nu"], ctx.q
    worst = 0.0
    for x in p["x"]:
        worst = max(worst,
                    _rel(J_reg(ctx, nu + n, 1 / x), qpoch(ctx, q / (x * x)) / qpoch(ctx, q)),
                    _rel(j_reg(ctx, nu + n, x), qpoch(ctx, q * x * x)))
    return worst


def _lim_p(ctx, p, n):
    nu = p["nu"]
    return max(_rel(x**n * P_eval(ctx, nu, n, 1 / x), j_reg(ctx, nu - 1, x)) for x in p["x"])


def _lim_p1(ctx, p, n):
    nu = p["nu"]
    return max(_rel(x**n * P1_eval(ctx, nu, n, 1 / x), j_reg(ctx, nu, x)) for x in p["x"])


def _lim_half(ctx, p, n):
    pb = math.sqrt(ctx.q)
    worst = 0.0
    for x in p["x"]:
        worst = max(worst,
                    _rel(x**n * P_half_closed(ctx, n, 1 / x), F_limit(ctx, x)),
                    _rel(x**n * P1_eval(ctx, 0.5, n, 1 / x), F_limit(ctx, x * math.sqrt(pb))))
    return worst


# --------------------------------------------------------------------------
# registry


@dataclass(frozen=True)
class _Entry:
    kind: str
    func: Callable
    defaults: dict
    uses_nu: bool = True


_ANNULUS = [0.9, 1.0, 1.1, 0.8 + 0.3j, cmath.exp(1j)]
_POS = [0.3, 0.8, 1.5, 2.5]

_REGISTRY: dict[str, _Entry] = {
    "REC-H": _Entry("algebraic", _rec_h, {"n": 20, "x": [0.7, 1.3, 2.0, 0.8 + 0.3j]}),
    "CONTIG-EVEN": _Entry("algebraic", _contig_even, {"x": _POS}),
    "CONTIG-ODD": _Entry("algebraic", _contig_odd, {"x": _POS}),
    "HEINE": _Entry("algebraic", _heine,
                    {"c": [0.3, -0.7, 0.2 + 0.5j, 2.5], "z": [0.5, -1.2, 0.3 + 0.8j]},
                    uses_nu=False),
    "J-SHIFT-A": _Entry("algebraic", _j_shift_a, {"x": _POS}),
    "J-SHIFT-B": _Entry("algebraic", _j_shift_b, {"x": _POS}),
    "WRONSK": _Entry("algebraic", _wronsk, {"x": _ANNULUS, "shifts": [1, 3, 7]}),
    "CONN-J": _Entry("algebraic", _conn_j, {"n": 20, "x": [1.2, 2.0, 2.7]}),
    "CONN-p": _Entry("algebraic", _conn_p, {"n": 20, "x": [0.5, 0.8, 1.5]}),
    "CONN-P": _Entry("algebraic", _conn_P, {"n": 20, "x": [0.5, 0.8, 1.5]}),
    "HURWITZ-OUT": _Entry("limit", _hurwitz_out, {"x": [2.0, -2.0, 2j, 2 * cmath.exp(1j)]}),
    "HURWITZ-IN": _Entry("limit", _hurwitz_in, {"x": [0.5, -0.5, 0.5j, 0.5 * cmath.exp(1j)]}),
    "ASYMP-MIN": _Entry("limit", _asymp_min, {"x": [2.0, 0.5 + 1j]}),
    "LIM-P": _Entry("limit", _lim_p, {"x": [0.5, 0.3 + 0.4j]}),
    "LIM-P1": _Entry("limit", _lim_p1, {"x": [0.5, 0.3 + 0.4j]}),
    "LIM-HALF": _Entry("limit", _lim_half, {"x": [0.5, 0.3 + 0.4j]}, uses_nu=False),
    "SUM-3PHI2": _Entry("algebraic", _sum_3phi2,
                        {"n": 20, "n_direct": 6, "count": 20, "seed": 20240607, "radius": 1.2},
                        uses_nu=False),
    "HERMITE-EVAL": _Entry("algebraic", _hermite_eval, {"n": 20}, uses_nu=False),
    "EQ-522": _Entry("algebraic", _eq_522, {"x": [0.3, 1.0, 2.0, 0.5 + 0.5j, 1j]},
                     uses_nu=False),
    "ASC-SHIFT": _Entry("algebraic", _asc_shift,
                        {"n": 20, "ab": [(0.3, 0.2), (-1.1, 0.5), (0.7 + 0.2j, -0.4)],
                         "x": [0.2, 0.9]}),
    "GENFUN-HALF": _Entry("limit", _genfun_half, {"z": [0.3, -0.2 + 0.1j], "x": [0.5, 1.2, -0.7]},
                          uses_nu=False),
    "CLOSED-HALF": _Entry("algebraic", _closed_half, {"n": 20, "x": [0.4, 1.1, -0.9, 0.5j]},
                          uses_nu=False),
    "P1-HALF": _Entry("algebraic", _p1_half, {"n": 20, "x": [0.4, 1.1, -0.9, 0.5j]},
                      uses_nu=False),
    "GREEN-FWD": _Entry("algebraic", _green_fwd, {"n": 20, "x": [0.7, 1.3, cmath.exp(0.5j), 0.8 + 0.3j]}),
    "GREEN-BWD": _Entry("limit", _green_bwd,
                        {"n": 20, "x_out": [1.5, 1.2j, cmath.exp(0.7j)],
                         "x_in": [0.6, 0.5j, cmath.exp(0.7j)]}),
    "BOUND-CIRCLE": _Entry("bound", _bound_circle, {"n": 40, "samples": 100, "radii": [0.5, 2.0]}),
    "BOUND-MIN": _Entry("bound", _bound_min, {"n": 40, "samples": 100, "radii": [1.0, 0.7, 1.5]}),
    "ZEROFREE": _Entry("bound", _zerofree, {"points": 400, "samples": 100, "extra": 3}),
    "WRONSK-COMBO": _Entry("algebraic", _wronsk_combo, {"n": 20, "x": _ANNULUS}),
}

#: every registry id, in a fixed order
IDS: tuple[str, ...] = tuple(_REGISTRY)

# entries evaluated on a ladder rather than once
_LADDERED = {"HURWITZ-OUT", "HURWITZ-IN", "ASYMP-MIN", "LIM-P", "LIM-P1", "LIM-HALF"}


def _tolerance(kind: str, tol_algebraic: float, tol_limit: float) -> float:
    return tol_limit if kind == "limit" else tol_algebraic


def check_identity(ctx: QContext, id: str, params: dict | None = None, *,
                   tol_algebraic: float = TOL_ALGEBRAIC,
                   tol_limit: float = TOL_LIMIT) -> IdentityCase:
    """Evaluate one registry entry.

    ``params`` overrides the entry's defaults; ``nu`` defaults to 1.5 for
    entries that depend on it.  Limit entries accept ``ladder`` (tuple of
    indices).  Raises :class:`DomainError` for parameters outside an
    identity's region and ``KeyError`` for an unknown id.
    """
    if id not in _REGISTRY:
        raise KeyError(f"unknown identity id {id!r}")
    entry = _REGISTRY[id]
    full = dict(entry.defaults)
    if entry.uses_nu:
        full["nu"] = 1.5
    full.update(params or {})
    tol = _tolerance(entry.kind, tol_algebraic, tol_limit)
    if id in _LADDERED:
        ladder = tuple(full.pop("ladder", LADDER))
        values = {n: float(entry.func(ctx, full, n)) for n in ladder}
        last, first = values[ladder[-1]], values[ladder[0]]
        monotone = last <= first
        full["ladder"] = list(ladder)
        return IdentityCase(id, full, last, tol, bool(last < tol and monotone),
                            entry.kind, values, monotone)
    residual = float(entry.func(ctx, full))
    return IdentityCase(id, full, residual, tol, bool(residual <= tol), entry.kind)


# --------------------------------------------------------------------------
# suite runner


@dataclass(frozen=True)
class SuiteConfig:
    """Parameter grid for :func:`run_suite`.

    ``ids=None`` runs every registry entry.  Entries that do not depend on
    ``nu`` run once per ``q``.
    """

    q_values: tuple = (0.3, 0.5, 0.7)
    nu_values: tuple = (0.5, 1.0, 1.5, 2.5)
    ids: tuple | None = None
    tol_algebraic: float = TOL_ALGEBRAIC
    tol_limit: float = TOL_LIMIT
    overrides: dict = field(default_factory=dict)


@dataclass
class SuiteReport:
    """All cases of a suite run plus a per-id summary."""

    cases: list

    @property
    def summary(self) -> dict:
        out: dict[str, dict] = {}
        for c in self.cases:
            s = out.setdefault(c.id, {"max_residual": 0.0, "passed": True, "count": 0,
                                      "failures": [], "errors": []})
            s["count"] += 1
            s["max_residual"] = max(s["max_residual"], c.residual)
            if not c.passed:
                s["passed"] = False
                s["failures"].append({"q": c.params.get("q"), "nu": c.params.get("nu"),
                                      "residual": c.residual})
            if c.error:
                s["errors"].append(c.error)
        return out

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.cases)

    def failed_ids(self) -> list[str]:
        return [k for k, v in self.summary.items() if not v["passed"]]

    def to_dict(self) -> dict:
        return {"passed": self.passed, "summary": _jsonable(self.summary),
                "cases": [c.to_dict() for c in self.cases]}


def _grid_points(config: SuiteConfig, ids: Iterable[str]):
    for id_ in ids:
        entry = _REGISTRY[id_]
        for q in config.q_values:
            if entry.uses_nu:
                for nu in config.nu_values:
                    yield id_, q, nu
            else:
                yield id_, q, None


def run_suite(ctx: QContext, config: SuiteConfig | None = None) -> SuiteReport:
    """Run registry entries over a ``(q, nu)`` grid.

    ``ctx`` supplies the numerical settings; its ``q`` is replaced by each grid
    value.  Exceptions inside a case are recorded on that case (which then
    fails) and the suite carries on.  Raises :class:`ConfigError` for an
    empty grid or an unknown id.
    """
    config = config or SuiteConfig()
    if not config.q_values or not config.nu_values:
        raise ConfigError("parameter grid is empty")
    ids = tuple(config.ids) if config.ids is not None else IDS
    if not ids:
        raise ConfigError("no identity ids selected")
    unknown = [i for i in ids if i not in _REGISTRY]
    if unknown:
        raise ConfigError(f"unknown identity ids: {unknown}")
    cases = []
    for id_, q, nu in _grid_points(config, ids):
        local = dataclasses.replace(ctx, q=q)
        params = dict(config.overrides.get(id_, {}))
        if nu is not None:
            params["nu"] = nu
        try:
            case = check_identity(local, id_, params, tol_algebraic=config.tol_algebraic,
                                  tol_limit=config.tol_limit)
            case.params["q"] = q
        except Exception as exc:  # noqa: BLE001 - aggregated, not swallowed
            tol = _tolerance(_REGISTRY[id_].kind, config.tol_algebraic, config.tol_limit)
            params["q"] = q
            case = IdentityCase(id_, params, math.inf, tol, False, _REGISTRY[id_].kind,
                                error=f"{type(exc).__name__}: {exc}")
        cases.append(case)
    return SuiteReport(cases)

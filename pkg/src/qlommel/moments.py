"""Moments, the strong moment functional and orthogonality checks.

The strong functional ``L`` acts on Laurent polynomials.  Its even moments
come from two recursions:

* ``L(x^{2k}) = c_k / (1 - q^nu)`` where ``c_k`` are the Taylor coefficients
  of ``J_nu / J_{nu-1}`` (suitably normalized),
* ``L(x^{-2-2k}) = -d_k`` with ``d_k`` the coefficients of ``j_nu / j_{nu-1}``,

and all odd moments vanish.  :func:`L_residue` evaluates the same functional
as a contour integral over ``|z| = s`` plus residues at zeros of ``J_{nu-1}``
and ``j_{nu-1}``.
"""
from __future__ import annotations

import cmath
import functools
import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .bessel import (
    J_reg,
    J_reg_and_derivative,
    J_reg_scaled,
    j_reg,
    j_reg_and_derivative,
    j_reg_scaled,
)
from .errors import ConvergenceError, DomainError, RangeError, TruncationWarning
from .lommel import LaurentCoeffs, P1_eval, P_eval, h_coeffs, p_eval
from .qseries import QContext, basic_phi, qpoch
from .spectral import ZeroTable, zeros_J, zeros_j

__all__ = [
    "MomentTable",
    "FunctionalReport",
    "GramResult",
    "c_moments",
    "d_moments",
    "gronwall_constant",
    "L_apply",
    "L_residue",
    "weights_p",
    "weights_P",
    "gram_laurent",
    "gram_p",
    "gram_P",
    "stieltjes_check",
]


# --------------------------------------------------------------------------
# moment tables


@dataclass(frozen=True)
class MomentTable:
    """``c_0..c_K`` (``kind='c'``) or ``d_0..d_K`` (``kind='d'``).

    ``n`` is the order shift: the table expands ``J_{nu+n}/J_{nu-1}`` or
    ``j_{nu+n}/j_{nu-1}``.  Only ``n = 0`` gives moments of ``L``.
    """

    kind: str
    nu: float
    n: int
    values: tuple

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, k):
        return self.values[k]

    @property
    def K(self) -> int:
        return len(self.values) - 1


def gronwall_constant(ctx: QContext, nu: float) -> float:
    """``A = 1/((q^nu;q)_inf (q;q)_inf)``; ``|c_k| <= A e^{kA}``."""
    return 1.0 / (qpoch(ctx, ctx.q**nu) * qpoch(ctx, ctx.q))


def c_moments(ctx: QContext, nu: float, K: int, n: int = 0) -> MomentTable:
    """Coefficients ``c_k`` with ``J_{nu+n}/J_{nu-1} = x^{n+1}/(q^nu;q)_{n+1} sum c_k x^{2k}``.

    Obtained by dividing the two ``1phi1`` series: with
    ``a_p = (-1)^p q^{p(p+1)/2} / ((q^nu;q)_p (q;q)_p)`` and ``b_k`` the same
    with ``q^{nu+n+1}`` in place of ``q^nu``,
    ``c_k = b_k - sum_{p<k} c_p a_{k-p}``.
    """
    if nu <= 0:
        raise DomainError("c_moments needs nu > 0")
    if K < 0 or n < 0:
        raise DomainError("K and n must be nonnegative")
    q = ctx.q

    def coeff(base, p):
        return (-1) ** p * q ** (p * (p + 1) / 2) / (qpoch(ctx, base, p) * qpoch(ctx, q, p))

    a = [coeff(q**nu, p) for p in range(K + 1)]
    b = [coeff(q ** (nu + n + 1), p) for p in range(K + 1)]
    c = [1.0]
    for k in range(1, K + 1):
        c.append(b[k] - sum(c[p] * a[k - p] for p in range(k)))
    return MomentTable("c", nu, n, tuple(c))


def _e_coeff(ctx: QContext, nu: float, p: int) -> float:
    # coefficient of x^{2p} in j_reg_nu(x)/(x^2;q)_inf
    q = ctx.q
    return basic_phi(ctx, [q ** (-p), 0.0], [q], q ** (nu + 1 + p))


def d_moments(ctx: QContext, nu: float, K: int, n: int = 0) -> MomentTable:
    """Coefficients ``d_k`` with ``j_{nu+n}/j_{nu-1} = x^{n+1} sum d_k x^{2k}``.

    Both functions are ``(x^2;q)_inf`` times a power series whose
    coefficients are terminating ``2phi1(q^{-p}, 0; q; q, q^{nu+1+p})`` sums;
    ``d_k`` follows by series division.
    """
    if K < 0 or n < 0:
        raise DomainError("K and n must be nonnegative")
    top = [_e_coeff(ctx, nu + n, k) for k in range(K + 1)]
    bottom = [_e_coeff(ctx, nu - 1, k) for k in range(K + 1)]
    if bottom[0] == 0:
        raise DomainError("j_{nu-1} series has a vanishing constant term")
    d = [top[0] / bottom[0]]
    for k in range(1, K + 1):
        d.append((top[k] - sum(d[p] * bottom[k - p] for p in range(k))) / bottom[0])
    return MomentTable("d", nu, n, tuple(d))


# --------------------------------------------------------------------------
# the functional


def _as_laurent(p) -> LaurentCoeffs:
    if isinstance(p, LaurentCoeffs):
        return p
    if isinstance(p, dict):
        return LaurentCoeffs(p)
    raise TypeError("expected LaurentCoeffs or an exponent->coefficient dict")


def L_apply(ctx: QContext, nu: float, p, c: MomentTable | None = None,
            d: MomentTable | None = None) -> float:
    """Apply the strong moment functional to a Laurent polynomial.

    ``L(x^{2k}) = c_k/(1-q^nu)``, ``L(x^{-2-2k}) = -d_k``, odd powers give 0.
    Tables are built on demand; passing tables that are too short raises
    :class:`RangeError`.
    """
    if nu <= 0:
        raise DomainError("L needs nu > 0")
    p = _as_laurent(p)
    even = [e for e in p.exponents() if e % 2 == 0]
    kmax_c = max((e // 2 for e in even if e >= 0), default=-1)
    kmax_d = max(((-e - 2) // 2 for e in even if e < 0), default=-1)
    if c is None:
        c = c_moments(ctx, nu, max(kmax_c, 0))
    if d is None:
        d = d_moments(ctx, nu, max(kmax_d, 0))
    if kmax_c > c.K or kmax_d > d.K:
        raise RangeError(f"moment tables too short: need c_{kmax_c} and d_{kmax_d}")
    norm = 1.0 / (1 - ctx.q**nu)
    total = 0.0
    for e in even:
        if e >= 0:
            total += p[e] * c[e // 2] * norm
        else:
            total -= p[e] * d[(-e - 2) // 2]
    return total


@dataclass(frozen=True)
class FunctionalReport:
    """Both realizations of ``L(p)`` with the data used by the residue path."""

    poly: LaurentCoeffs
    value_moments: float
    value_residue: complex | None = None
    s: float | None = None
    N: int = 0
    M: int = 0
    J_zeros: tuple = ()
    J_weights: tuple = ()
    j_zeros: tuple = ()
    j_weights: tuple = ()
    nodes: int = 0

    @property
    def discrepancy(self) -> float:
        if self.value_residue is None:
            return math.nan
        return abs(self.value_residue - self.value_moments)


def _zeros_below(ctx, kind, nu, bound) -> ZeroTable | None:
    """All positive zeros below ``bound`` (``None`` when there are none)."""
    finder = zeros_J if kind == "J" else zeros_j
    count = 4
    while True:
        table = finder(ctx, nu, count, check_interlacing=False)
        if table.zeros[-1] > bound:
            k = table.count_below(bound)
            if k == 0:
                return None
            return ZeroTable(kind, nu, table.zeros[:k], table.brackets[:k], table.tol)
        count *= 2


def _lattice_split(ctx: QContext, A: float, B: float):
    """Split ``Phi(A, B) = S * (delta * T1 + T2)`` around the lattice point.

    ``p`` is the index with ``q^p B`` closest to 1, ``delta = 1 - q^p B``,
    ``S = prod_{i<p} q^i B``.  ``T1`` collects the terms that contain the
    factor ``delta`` (all of one sign) and ``T2`` the rest.  Returns
    ``(p, delta, T1, T2, G, R, log S)`` with ``T2`` as ``(sign, log|T2|)``,
    ``G = prod_{i<p} (1 - q^i B)/(q^i B)`` and ``R = (q^{p+1} B; q)_inf``.
    """
    q = ctx.q
    lq = math.log(q)
    p = max(0, round(math.log(B) / -lq))
    g = [1.0 / (q**i * B) - 1.0 for i in range(p)]
    suffix = [1.0] * (p + 1)
    for i in range(p - 1, -1, -1):
        suffix[i] = g[i] * suffix[i + 1]
    R = qpoch(ctx, B * q ** (p + 1))
    T1 = 0.0
    coef = 1.0  # (-A/B)^k / (q;q)_k
    for k in range(p + 1):
        T1 += coef * suffix[k]
        coef *= -A / B / (1 - q ** (k + 1))
    T1 *= R
    log_S = p * math.log(B) + lq * p * (p - 1) / 2
    # T2 is kept as log-magnitude and sign: it can lie far below 1e-308
    logs = []
    qq_k = qpoch(ctx, q, p + 1)
    for k in range(p + 1, p + 1 + ctx.max_terms):
        poch = qpoch(ctx, B * q**k)
        logs.append(((-1) ** k * math.copysign(1.0, poch),
                     lq * k * (k - 1) / 2 + k * math.log(A) - math.log(qq_k)
                     - log_S + math.log(abs(poch))))
        if logs[-1][1] < logs[0][1] + math.log(ctx.series_tol * 1e-3):
            break
        qq_k *= 1 - q ** (k + 1)
    lead = logs[0][1]
    rest = sum(sg * math.exp(lg - lead) for sg, lg in logs)
    T2 = (math.copysign(1.0, rest), lead + math.log(abs(rest)))
    delta = 1.0 - q**p * B
    return p, delta, T1, T2, suffix[0], R, log_S


def _signed_log(*factors):
    """Sign and log-magnitude of a product of nonzero reals."""
    sign = 1.0
    log_abs = 0.0
    for f in factors:
        sign *= math.copysign(1.0, f)
        log_abs += math.log(abs(f))
    return sign, log_abs


def _weight_J(ctx, nu, z):
    """``-J_nu(z) / (z^2 J'_{nu-1}(z))`` at a zero ``z`` of ``J_{nu-1}``.

    Returned as ``(sign, log|w|)`` since the weights underflow quickly.
    ``J_nu(z)`` comes from the Wronskian with ``j`` at ``1/z``, which reduces
    it to a theta product over ``j_{nu-1}(1/z)``.  For large zeros the theta
    product has a factor ``1 - q^p * q z^2`` below rounding level; it is
    replaced by its value ``-T2/T1`` from the split kernel series, which is
    free of cancellation.
    """
    q = ctx.q
    _, _, T1, T2, G, R, log_S = _lattice_split(ctx, q**nu, q * z * z)
    _, dg, ls = J_reg_and_derivative(ctx, nu - 1, z)  # J_reg_{nu-1}(z) = 0
    sign, log_w = _signed_log(-T2[0] / T1, G, R, qpoch(ctx, 1 / (z * z)),
                              1 / qpoch(ctx, q), 1 / j_reg(ctx, nu - 1, 1 / z), 1 / (z * dg))
    return -sign, log_w + T2[1] + log_S - ls


def _weight_j(ctx, nu, x):
    """``-j_nu(x) / (x^2 j'_{nu-1}(x))`` at a zero ``x`` of ``j_{nu-1}``, as ``(sign, log|w|)``.

    For ``nu > 1`` the same lattice treatment as in :func:`_weight_J`
    applies, with theta factor ``(1 - x^2) (q x^2; q)_inf``.
    """
    q = ctx.q
    _, dg, ls = j_reg_and_derivative(ctx, nu - 1, x)
    if nu <= 1:
        f, ls_top = j_reg_scaled(ctx, nu, x)
        sign, log_w = _signed_log(f, 1 / (x * dg))
        return -sign, log_w + ls_top - ls
    _, _, T1, T2, G, R, log_S = _lattice_split(ctx, q**nu * x * x, q * x * x)
    # j_reg_nu(x) = -theta(x) / (x^2 J_reg_{nu-1}(1/x)) at the zero
    sign, log_w = _signed_log(-T2[0] / T1, G, R, 1 - x * x, qpoch(ctx, q / (x * x)),
                              1 / qpoch(ctx, q), 1 / (x * x * J_reg(ctx, nu - 1, 1 / x)),
                              1 / (x * dg))
    return sign, log_w + T2[1] + log_S - ls


def _weight_direct(ctx, kind, nu, z):
    # plain quotient; loses every digit once zeros of consecutive orders merge
    if kind == "J":
        f, ls_top = J_reg_scaled(ctx, nu, z)
        g, dg, ls = J_reg_and_derivative(ctx, nu - 1, z)
    else:
        f, ls_top = j_reg_scaled(ctx, nu, z)
        g, dg, ls = j_reg_and_derivative(ctx, nu - 1, z)
    deriv = (nu - 1) * g / z + dg
    return -f * math.exp(ls_top - ls) / (z * deriv)


def _as_float(signed):
    sign, log_w = signed
    return sign * math.exp(log_w) if log_w > -745 else sign * 0.0


@functools.lru_cache(maxsize=64)
def _contour_kernel(ctx: QContext, nu: float, s: float, n: int) -> tuple:
    """Nodes ``z_k`` on ``|z|=s`` and kernel values so that the contour part of
    ``L(p)`` is ``mean(p(z_k) * kernel_k)``."""
    qq = qpoch(ctx, ctx.q)
    nodes = []
    kern = []
    for k in range(n):
        z = s * cmath.exp(2j * math.pi * k / n)
        num = qpoch(ctx, ctx.q / (z * z)) * qpoch(ctx, z * z)
        den = J_reg(ctx, nu - 1, 1 / z) * j_reg(ctx, nu - 1, z)
        nodes.append(z)
        kern.append(num / (den * qq))
    return np.array(nodes), np.array(kern)


def L_residue(ctx: QContext, nu: float, p, s: float = 1.0, nodes: int = 256,
              quad_tol: float = 1e-10, max_nodes: int = 1 << 14) -> FunctionalReport:
    """``L(p)`` as a contour integral over ``|z| = s`` plus discrete masses.

    The contour integrand is ``p(z) (q z^{-2};q)_inf (z^2;q)_inf /
    ((q;q)_inf J_{nu-1}(1/z) j_{nu-1}(z))`` against ``dz/(2 pi i z)``,
    integrated by the trapezoidal rule with node doubling.  Masses sit at
    ``+-1/j_k`` for the zeros ``j_k < 1/s`` of ``J_{nu-1}`` (positive weights)
    and at ``+-x_l`` for the zeros ``x_l < s`` of ``j_{nu-1}`` (negative weights).
    """
    if nu <= 0:
        raise DomainError("L needs nu > 0")
    q = ctx.q
    if not (math.sqrt(q) < s < 1 / math.sqrt(q)):
        raise DomainError("s must lie in (q^{1/2}, q^{-1/2})")
    p = _as_laurent(p)
    Jz = _zeros_below(ctx, "J", nu - 1, 1 / s * (1 + 1e-6))
    jz = _zeros_below(ctx, "j", nu - 1, s * (1 + 1e-6))
    for t in (Jz.zeros if Jz is not None else ()):
        if abs(s * t - 1) < 1e-6:
            raise DomainError(f"s is too close to the pole 1/{t}")
    for t in (jz.zeros if jz is not None else ()):
        if abs(t / s - 1) < 1e-6:
            raise DomainError(f"s is too close to the pole {t}")

    n = nodes
    z, kern = _contour_kernel(ctx, nu, s, n)
    value = np.mean(p(z) * kern)
    while True:
        if 2 * n > max_nodes:
            raise ConvergenceError("contour quadrature did not settle")
        z, kern = _contour_kernel(ctx, nu, s, 2 * n)
        new = np.mean(p(z) * kern)
        n *= 2
        if abs(new - value) <= quad_tol * max(1.0, abs(new)):
            value = new
            break
        value = new

    Jw = []
    total = complex(value)
    if Jz is not None:
        for t in Jz.zeros:
            w = _as_float(_weight_J(ctx, nu, t))
            Jw.append(w)
            total += (p(1 / t) + p(-1 / t)) * w
    jw = []
    if jz is not None:
        for t in jz.zeros:
            # j_nu(x)/j'_{nu-1}(x) is -x^2 times the mass used for P_n
            w = -t * t * _as_float(_weight_j(ctx, nu, t))
            jw.append(w)
            total += (p(t) + p(-t)) * w
    return FunctionalReport(
        poly=p,
        value_moments=L_apply(ctx, nu, p),
        value_residue=total.real if abs(total.imag) < 1e-12 * max(1, abs(total)) else total,
        s=s,
        N=0 if Jz is None else len(Jz),
        M=0 if jz is None else len(jz),
        J_zeros=() if Jz is None else tuple(Jz.zeros),
        J_weights=tuple(Jw),
        j_zeros=() if jz is None else tuple(jz.zeros),
        j_weights=tuple(jw),
        nodes=n,
    )


# --------------------------------------------------------------------------
# Gram matrices


@dataclass(frozen=True)
class GramResult:
    """A Gram matrix with its target diagonal and simple diagnostics."""

    matrix: np.ndarray
    target_diagonal: np.ndarray
    extra: dict = field(default_factory=dict)

    @property
    def max_off_diagonal(self) -> float:
        off = self.matrix - np.diag(np.diag(self.matrix))
        return float(np.abs(off).max()) if off.size else 0.0

    @property
    def max_diagonal_error(self) -> float:
        return float(np.abs(np.diag(self.matrix) - self.target_diagonal).max())


def gram_laurent(ctx: QContext, nu: float, nmax: int) -> tuple[GramResult, GramResult]:
    """``L(h_n h_m)`` and ``L(x^{-1} h_n x^{-1} h_m)`` for ``n, m <= nmax``.

    Targets are ``delta_{nm}/(1-q^{nu+m})`` and ``-delta_{nm}``.
    """
    if nu <= 0:
        raise DomainError("L needs nu > 0")
    c = c_moments(ctx, nu, nmax + 1)
    d = d_moments(ctx, nu, nmax + 1)
    hs = [h_coeffs(ctx, nu, k) for k in range(nmax + 1)]
    size = nmax + 1
    plus = np.zeros((size, size))
    minus = np.zeros((size, size))
    for a in range(size):
        for b in range(a, size):
            prod = hs[a] * hs[b]
            plus[a, b] = plus[b, a] = L_apply(ctx, nu, prod, c, d)
            minus[a, b] = minus[b, a] = L_apply(ctx, nu, prod.shift(-2), c, d)
    q = ctx.q
    t_plus = np.array([1 / (1 - q ** (nu + m)) for m in range(size)])
    t_minus = -np.ones(size)
    return GramResult(plus, t_plus), GramResult(minus, t_minus)


def weights_p(ctx: QContext, nu: float, K: int):
    """Masses of the discrete measure for ``p_n`` as ``(points, weights, signs)``.

    Points are ``1/j_k`` for the first ``K`` zeros of ``J_{nu-1}``; each
    weight also applies at ``-1/j_k``.  The unit mass at the origin is not
    included.  ``signs`` survive even where a weight underflows to zero.
    """
    table = zeros_J(ctx, nu - 1, K, check_interlacing=False)
    signed = [_weight_J(ctx, nu, t) for t in table.zeros]
    return 1 / table.zeros, np.array([_as_float(w) for w in signed]), np.array([w[0] for w in signed])


def weights_P(ctx: QContext, nu: float, K: int):
    """Masses ``(points, weights, signs)`` at ``1/x_k`` for zeros of ``j_{nu-1}``."""
    table = zeros_j(ctx, nu - 1, K, check_interlacing=False)
    signed = [_weight_j(ctx, nu, t) for t in table.zeros]
    return 1 / table.zeros, np.array([_as_float(w) for w in signed]), np.array([w[0] for w in signed])


def _discrete_gram(points, weights, mass0, evaluate, nmax, tol):
    size = nmax + 1
    vals_pos = np.array([[evaluate(n, t) for t in points] for n in range(size)])
    vals_neg = np.array([[evaluate(n, -t) for t in points] for n in range(size)])
    at0 = np.array([evaluate(n, 0.0) for n in range(size)])
    G = (vals_pos * weights) @ vals_pos.T + (vals_neg * weights) @ vals_neg.T
    G += mass0 * np.outer(at0, at0)
    # a posteriori tail: last mass times a geometric continuation
    last = np.abs(weights[-1]) * 2 * np.max(np.abs(vals_pos[:, -1]) ** 2)
    ratio = abs(weights[-1] / weights[-2]) if len(weights) > 1 and weights[-2] else 0.0
    tail = last * ratio / (1 - ratio) if ratio < 1 else math.inf
    if tail > tol:
        warnings.warn(TruncationWarning(f"neglected tail about {tail:.1e}", tail), stacklevel=3)
    return G, tail


def gram_p(ctx: QContext, nu: float, nmax: int, K: int = 60, tol: float = 1e-7) -> GramResult:
    """Gram matrix of ``p_0..p_nmax`` under the discrete measure for ``L_+``.

    Masses: unit mass at 0 and ``w_k`` at ``+-1/j_k``.  Target diagonal
    ``q^{(n+nu) floor((n+1)/2)} / (1 - q^{n+nu})``.
    """
    if nu <= 0:
        raise DomainError("gram_p needs nu > 0")
    pts, w, signs = weights_p(ctx, nu, K)
    G, tail = _discrete_gram(pts, w, 1.0, lambda n, t: p_eval(ctx, nu, n, t), nmax, tol)
    q = ctx.q
    target = np.array([q ** ((n + nu) * ((n + 1) // 2)) / (1 - q ** (n + nu))
                       for n in range(nmax + 1)])
    return GramResult(G, target, {"weights": w, "signs": signs, "points": pts, "mass0": 1.0,
                                     "tail": tail})


def gram_P(ctx: QContext, nu: float, nmax: int, K: int = 60, tol: float = 1e-7) -> GramResult:
    """Gram matrix of the monic ``P_0..P_nmax`` under the measure for ``L_-``.

    Masses ``w_k`` at ``+-1/x_k`` and ``1 - q^{nu-1}`` at the origin when
    ``nu > 1``.  The target diagonal is the squared norm
    ``lambda_1 ... lambda_n``: ``q^{l(l+nu)}`` for ``n = 2l`` and
    ``q^{(l+1)(l+nu)}`` for ``n = 2l+1``.
    """
    q = ctx.q
    pts, w, signs = weights_P(ctx, nu, K)
    mass0 = 1 - q ** (nu - 1) if nu > 1 else 0.0
    G, tail = _discrete_gram(pts, w, mass0, lambda n, t: P_eval(ctx, nu, n, t), nmax, tol)
    target = []
    for n in range(nmax + 1):
        l = n // 2
        target.append(q ** (l * (l + nu)) if n % 2 == 0 else q ** ((l + 1) * (l + nu)))
    return GramResult(G, np.array(target), {"weights": w, "signs": signs, "points": pts,
                                     "mass0": mass0, "tail": tail})


def stieltjes_check(ctx: QContext, nu: float, n: int, z) -> tuple:
    """``(P^{(1)}_{n-1}(z)/P_n(z), j_nu(1/z)/j_{nu-1}(1/z))``.

    The second entry is formed from the regularized functions, which turns
    it into ``j_reg_nu(1/z) / (z j_reg_{nu-1}(1/z))``.
    """
    if z == 0:
        raise DomainError("z must be nonzero")
    Pn = P_eval(ctx, nu, n, z)
    if abs(Pn) < 1e-300:
        raise DomainError("P_n vanishes at z")
    ratio = P1_eval(ctx, nu, n - 1, z) / Pn
    w = 1 / z
    target = j_reg(ctx, nu, w) / (z * j_reg(ctx, nu - 1, w))
    return ratio, target

"""q-shifted factorials and basic hypergeometric series.

Everything here works in double precision over real or complex arguments.
The kernel :func:`phi11_entire` evaluates the entire function

    (c; q)_inf * 1phi1(0; c; q, z)

which is symmetric in ``z`` and ``c``.  All Bessel-type functions in the
package are built on it.  For large arguments the infinite product
overflows, so a log-scaled variant is provided as well.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .errors import ConvergenceError, DomainError

__all__ = [
    "QContext",
    "qpoch",
    "basic_phi",
    "phi11_entire",
    "phi11_scaled",
    "phi11_scaled_dy",
]


@dataclass(frozen=True)
class QContext:
    """Base ``q`` together with the numerical tolerances used everywhere.

    Parameters
    ----------
    q : float
        Base of the q-series, ``0 < q < 1``.
    series_tol : float
        Relative truncation threshold for series and infinite products.
    max_terms : int
        Hard cap on the number of series terms.
    zero_tol : float
        Tolerance for root refinement.
    """

    q: float
    series_tol: float = 1e-15
    max_terms: int = 500
    zero_tol: float = 1e-12

    def __post_init__(self):
        if not (0.0 < self.q < 1.0):
            raise DomainError(f"q must lie in (0, 1), got {self.q!r}")
        if not (self.series_tol > 0 and self.zero_tol > 0):
            raise DomainError("tolerances must be positive")
        if self.max_terms < 1:
            raise DomainError("max_terms must be at least 1")


def _is_inf(k) -> bool:
    return k is None or (isinstance(k, float) and math.isinf(k))


def qpoch(ctx: QContext, a, k=math.inf):
    """q-shifted factorial ``(a; q)_k``; ``k`` may be ``math.inf``.

    The infinite product is truncated once ``|a q^i| / (1 - q)`` drops
    below ``ctx.series_tol`` (at least five factors are always used).
    """
    q = ctx.q
    prod = 1.0
    if not _is_inf(k):
        if k < 0:
            raise DomainError("negative index in q-shifted factorial")
        t = a
        for _ in range(int(k)):
            prod *= 1 - t
            t *= q
        return prod
    t = a
    i = 0
    bound = ctx.series_tol * (1.0 - q)
    while True:
        prod *= 1 - t
        t *= q
        i += 1
        if i >= 5 and abs(t) < bound:
            return prod
        if i > 200_000:  # pragma: no cover - needs |a| ~ 1e300 and q ~ 1
            raise ConvergenceError("infinite q-product did not converge")


def _terminating_index(q: float, a) -> int | None:
    """Return n if ``a`` equals ``q**-n`` for an integer n >= 0."""
    if isinstance(a, complex):
        if a.imag != 0.0:
            return None
        a = a.real
    if a <= 0.0:
        return None
    n = round(math.log(a) / math.log(q)) * -1
    if n < 0:
        return None
    if abs(a * q**n - 1.0) < 1e-12:
        return n
    return None


def basic_phi(ctx: QContext, numerators: Sequence, denominators: Sequence, z):
    r"""Basic hypergeometric series :math:`{}_r\varphi_s`.

    .. math::

        \sum_k \frac{(a_1;q)_k\cdots(a_r;q)_k}{(q;q)_k(b_1;q)_k\cdots(b_s;q)_k}
        \bigl((-1)^k q^{k(k-1)/2}\bigr)^{1+s-r} z^k

    Parameters
    ----------
    numerators, denominators : sequences of complex
        ``a_1..a_r`` and ``b_1..b_s``.  A numerator equal to ``q**-n``
        terminates the series after the ``k = n`` term.
    z : complex

    Raises
    ------
    DomainError
        If a denominator factor vanishes before termination.
    ConvergenceError
        For a non-terminating series outside its disc of convergence, or if
        ``ctx.max_terms`` is exhausted.
    """
    q = ctx.q
    r, s = len(numerators), len(denominators)
    stops = [n for n in (_terminating_index(q, a) for a in numerators) if n is not None]
    last = min(stops) if stops else None
    if last is None:
        if r > s + 1 and z != 0:
            raise ConvergenceError("r > s+1: series diverges for z != 0")
        if r == s + 1 and abs(z) >= 1:
            raise ConvergenceError("r = s+1 series needs |z| < 1")
    power = 1 + s - r

    total = 1.0
    term = 1.0
    for k in range(ctx.max_terms):
        if last is not None and k >= last:
            return total
        qk = q**k
        num = 1.0
        for a in numerators:
            num *= 1 - a * qk
        den = 1 - qk * q
        for b in denominators:
            f = 1 - b * qk
            if abs(f) < 1e-300 or (f == 0):
                raise DomainError(f"denominator parameter {b!r} hits a pole at k={k}")
            den *= f
        ratio = num / den * z * (-qk) ** power
        term = term * ratio
        total = total + term
        if last is None:
            mag = abs(term)
            rho = abs(ratio)
            if mag == 0.0 and z == 0:
                return total
            if rho < 1 and mag / (1 - rho) <= ctx.series_tol * (abs(total) + 1e-300):
                return total
            if mag == 0.0 and rho == 0.0:
                return total
    if last is not None and last <= ctx.max_terms:
        return total
    raise ConvergenceError(f"basic_phi: no convergence in {ctx.max_terms} terms")


def _phi11_core(ctx: QContext, z, c, y=None, ez=0, ec=0):
    """Scaled evaluation of ``(c;q)_inf 1phi1(0;c;q,z)``.

    Returns ``(mant, dmant, log_scale)`` with value ``mant*exp(log_scale)``.
    If ``y`` is given (real, positive) the arguments are taken to depend on
    it as ``z ~ y**(2*ez)`` and ``c ~ y**(2*ec)``, and ``dmant*exp(log_scale)``
    is the derivative with respect to ``y``; otherwise ``dmant`` is None.
    """
    q = ctx.q
    tol = ctx.series_tol
    # sum over the smaller argument, product over the larger one
    if abs(z) > abs(c):
        z, c = c, z
        ez, ec = ec, ez
    A, B = z, c
    absB = abs(B)
    m = 0
    log_scale = 0.0
    t = absB
    while t > 1.0:
        log_scale += math.log(t)
        m += 1
        t *= q
    # product factors g_j, j = 0..J-1
    g = []
    qjB = B
    j = 0
    bound = tol * (1.0 - q) * 1e-2
    while j < m or abs(qjB) >= bound or j < 5:
        if j < m:
            g.append((1 - qjB) / abs(qjB))
        else:
            g.append(1 - qjB)
        qjB = qjB * q
        j += 1
        if j > 100_000:  # pragma: no cover
            raise ConvergenceError("product factor list did not terminate")
    J = len(g)
    suffix = [1.0] * (J + 1)
    for j in range(J - 1, -1, -1):
        suffix[j] = g[j] * suffix[j + 1]
    # sufmax[k] bounds |P_k'| for every k' >= k (tail bound for termination)
    sufmax = [1.0] * (J + 1)
    for j in range(J - 1, -1, -1):
        sufmax[j] = max(abs(suffix[j]), sufmax[j + 1])

    deriv = y is not None
    if deriv:
        dsuffix = [0.0] * (J + 1)
        two_ec_y = 2.0 * ec / y
        qj = 1.0
        dg = []
        for jj in range(J):
            # g_j = 1/(q^j B) - 1 for j < m (B > 0), 1 - q^j B otherwise
            if jj < m:
                dg.append(-two_ec_y / (qj * B))
            else:
                dg.append(-qj * B * two_ec_y)
            qj *= q
        for jj in range(J - 1, -1, -1):
            dsuffix[jj] = dg[jj] * suffix[jj + 1] + g[jj] * dsuffix[jj + 1]

    total = 0.0
    dtotal = 0.0
    coef = 1.0
    qk = 1.0
    absA = abs(A)
    maxbnd = 0.0
    for k in range(ctx.max_terms + m):
        Pk = suffix[k] if k < J else 1.0
        term = coef * Pk
        total = total + term
        bnd = abs(coef) * (sufmax[k] if k < J else 1.0)
        if bnd > maxbnd:
            maxbnd = bnd
        if deriv:
            dPk = dsuffix[k] if k < J else 0.0
            dlog = (2.0 * ez * k - 2.0 * ec * min(k, m)) / y
            dtotal = dtotal + term * dlog + coef * dPk
        if k >= m and absA * qk < 0.5:
            if bnd <= tol * abs(total) or bnd <= 1e-18 * maxbnd or coef == 0:
                break
        # next coefficient
        step = -A * qk / (1 - qk * q)
        if k < m:
            step = step / (abs(B) * qk)
        coef = coef * step
        qk *= q
    else:
        raise ConvergenceError("phi11 kernel: max_terms exhausted")
    if deriv:
        dtotal = dtotal + total * (2.0 * ec * m / y)
        return total, dtotal, log_scale
    return total, None, log_scale


def phi11_scaled(ctx: QContext, z, c):
    """Log-scaled ``(c;q)_inf 1phi1(0;c;q,z)`` as ``(mantissa, log_scale)``.

    The value is ``mantissa * exp(log_scale)``; ``log_scale >= 0`` is real,
    so the sign (or phase) of the function is carried by ``mantissa``.
    """
    mant, _, ls = _phi11_core(ctx, z, c)
    return mant, ls


def phi11_scaled_dy(ctx: QContext, alpha, beta, y, ez, ec):
    """Scaled value and y-derivative of ``Phi(alpha*y**(2ez), beta*y**(2ec))``.

    ``y`` must be real and positive and ``alpha``, ``beta`` positive.
    Returns ``(mantissa, dmantissa, log_scale)``.
    """
    z = alpha * y ** (2 * ez)
    c = beta * y ** (2 * ec)
    return _phi11_core(ctx, z, c, y=y, ez=ez, ec=ec)


def phi11_entire(ctx: QContext, z, c):
    """``(c;q)_inf * 1phi1(0; c; q, z)``, an entire function of ``z`` and ``c``.

    Equal to ``(z;q)_inf * 1phi1(0; z; q, c)`` (the two arguments can be
    exchanged).  Overflows for very large arguments; use
    :func:`phi11_scaled` there.
    """
    mant, ls = phi11_scaled(ctx, z, c)
    if ls == 0.0:
        return mant
    return mant * math.exp(ls)


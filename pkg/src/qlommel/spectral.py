"""Zeros: Hessenberg spectra of the Laurent polynomials and real zeros of J, j.

The zeros of ``V_{n,nu}`` (hence of ``h_{n,nu}``) are the eigenvalues of a
lower Hessenberg matrix.  Those eigenvalues are computed with a hand-written
Francis double-shift QR iteration and cross-checked with an Aberth-Ehrlich
polynomial root finder.  Real zeros of ``J_nu`` and ``j_nu`` are found by a
geometric sign-change scan followed by Brent refinement.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq, linear_sum_assignment

from .bessel import J_reg_and_derivative, j_reg_and_derivative
from .errors import ConvergenceError, DomainError, ScanError
from .lommel import MonicPoly, V_poly
from .qseries import QContext, qpoch

__all__ = [
    "HessenbergMatrix",
    "hessenberg",
    "hessenberg_eigvals",
    "aberth_roots",
    "match_multisets",
    "laurent_zeros",
    "x_zeros",
    "ZeroTable",
    "zeros_J",
    "zeros_j",
    "m_bound",
]


# --------------------------------------------------------------------------
# Hessenberg matrix


@dataclass(frozen=True)
class HessenbergMatrix:
    """``H_n = (c_{i,j})_{0<=i,j<n}`` with ``c_{i,j} = 0`` for ``j > i+1``."""

    n: int
    entries: np.ndarray

    def row_sums(self) -> np.ndarray:
        return self.entries.sum(axis=1)

    def eigvals(self) -> np.ndarray:
        return hessenberg_eigvals(self.entries.T)


def hessenberg(ctx: QContext, nu: float, n: int) -> HessenbergMatrix:
    """Matrix of multiplication by ``x`` in the basis ``V_0, ..., V_{n-1}``.

    ``c_{i,i+1} = 1/(1-q^{nu+i})``, ``c_{i,k} = (q^nu;q)_{k-1} q^{nu+k-1} / (q^nu;q)_{i+1}``
    for ``0 < k <= i`` and ``c_{i,0} = -1/(q^nu;q)_{i+1}``.
    """
    if n < 1:
        raise DomainError("n must be >= 1")
    q = ctx.q
    poch = [1.0]  # poch[k] = (q^nu;q)_k
    for k in range(n + 1):
        poch.append(poch[-1] * (1 - q ** (nu + k)))
    if any(abs(1 - q ** (nu + i)) < 1e-14 for i in range(n)):
        raise DomainError("degenerate order: 1 - q^(nu+i) vanishes")
    H = np.zeros((n, n))
    for i in range(n):
        H[i, 0] = -1.0 / poch[i + 1]
        for k in range(1, i + 1):
            H[i, k] = poch[k - 1] * q ** (nu + k - 1) / poch[i + 1]
        if i + 1 < n:
            H[i, i + 1] = 1.0 / (1 - q ** (nu + i))
    return HessenbergMatrix(n, H)


def _balance(a: list[list[float]], n: int) -> None:
    """Diagonal similarity scaling by powers of two (1-based, in place)."""
    radix = 2.0
    sqrdx = radix * radix
    done = False
    while not done:
        done = True
        for i in range(1, n + 1):
            c = sum(abs(a[j][i]) for j in range(1, n + 1) if j != i)
            r = sum(abs(a[i][j]) for j in range(1, n + 1) if j != i)
            if c and r:
                g = r / radix
                f = 1.0
                s = c + r
                while c < g:
                    f *= radix
                    c *= sqrdx
                g = r * radix
                while c > g:
                    f /= radix
                    c /= sqrdx
                if (c + r) / f < 0.95 * s:
                    done = False
                    g = 1.0 / f
                    for j in range(1, n + 1):
                        a[i][j] *= g
                    for j in range(1, n + 1):
                        a[j][i] *= f


def hessenberg_eigvals(H, max_iter: int = 200) -> np.ndarray:
    """Eigenvalues of a real upper Hessenberg matrix by Francis double-shift QR.

    Implicit double shifts with deflation on negligible subdiagonals and
    exceptional shifts every tenth stalled iteration.  Raises
    :class:`ConvergenceError` (with the eigenvalues found so far in
    ``err.partial``) if an eigenvalue fails to converge.
    """
    H = np.asarray(H, dtype=float)
    n = H.shape[0]
    a = [[0.0] * (n + 1) for _ in range(n + 1)]
    for i in range(n):
        for j in range(n):
            a[i + 1][j + 1] = float(H[i, j])
    _balance(a, n)
    wr = [0.0] * (n + 1)
    wi = [0.0] * (n + 1)
    anorm = sum(abs(a[i][j]) for i in range(1, n + 1) for j in range(max(i - 1, 1), n + 1))
    nn = n
    t = 0.0
    while nn >= 1:
        its = 0
        while True:
            # look for a single small subdiagonal element
            l = nn
            while l >= 2:
                s = abs(a[l - 1][l - 1]) + abs(a[l][l])
                if s == 0.0:
                    s = anorm
                if abs(a[l][l - 1]) + s == s:
                    a[l][l - 1] = 0.0
                    break
                l -= 1
            x = a[nn][nn]
            if l == nn:  # one root
                wr[nn] = x + t
                wi[nn] = 0.0
                nn -= 1
                break
            y = a[nn - 1][nn - 1]
            w = a[nn][nn - 1] * a[nn - 1][nn]
            if l == nn - 1:  # two roots
                p = 0.5 * (y - x)
                qq = p * p + w
                z = math.sqrt(abs(qq))
                x += t
                if qq >= 0.0:
                    z = p + math.copysign(z, p)
                    wr[nn - 1] = wr[nn] = x + z
                    if z:
                        wr[nn] = x - w / z
                    wi[nn - 1] = wi[nn] = 0.0
                else:
                    wr[nn - 1] = wr[nn] = x + p
                    wi[nn - 1] = -z
                    wi[nn] = z
                nn -= 2
                break
            if its == max_iter:
                err = ConvergenceError("Hessenberg QR iteration did not converge")
                err.partial = np.array([complex(wr[i], wi[i]) for i in range(nn + 1, n + 1)])
                raise err
            if its and its % 10 == 0:  # exceptional shift
                t += x
                for i in range(1, nn + 1):
                    a[i][i] -= x
                s = abs(a[nn][nn - 1]) + abs(a[nn - 1][nn - 2])
                x = y = 0.75 * s
                w = -0.4375 * s * s
            its += 1
            # look for two consecutive small subdiagonal elements
            m = nn - 2
            while m >= l:
                z = a[m][m]
                r = x - z
                s = y - z
                p = (r * s - w) / a[m + 1][m] + a[m][m + 1]
                qq = a[m + 1][m + 1] - z - r - s
                r = a[m + 2][m + 1]
                s = abs(p) + abs(qq) + abs(r)
                p /= s
                qq /= s
                r /= s
                if m == l:
                    break
                u = abs(a[m][m - 1]) * (abs(qq) + abs(r))
                v = abs(p) * (abs(a[m - 1][m - 1]) + abs(z) + abs(a[m + 1][m + 1]))
                if u + v == v:
                    break
                m -= 1
            for i in range(m + 2, nn + 1):
                a[i][i - 2] = 0.0
                if i != m + 2:
                    a[i][i - 3] = 0.0
            # double QR step on rows l..nn and columns m..nn
            for k in range(m, nn):
                if k != m:
                    p = a[k][k - 1]
                    qq = a[k + 1][k - 1]
                    r = a[k + 2][k - 1] if k != nn - 1 else 0.0
                    x = abs(p) + abs(qq) + abs(r)
                    if x != 0.0:
                        p /= x
                        qq /= x
                        r /= x
                s = math.copysign(math.sqrt(p * p + qq * qq + r * r), p)
                if s != 0.0:
                    if k == m:
                        if l != m:
                            a[k][k - 1] = -a[k][k - 1]
                    else:
                        a[k][k - 1] = -s * x
                    p += s
                    x = p / s
                    y = qq / s
                    z = r / s
                    qq /= p
                    r /= p
                    for j in range(k, nn + 1):
                        p = a[k][j] + qq * a[k + 1][j]
                        if k != nn - 1:
                            p += r * a[k + 2][j]
                            a[k + 2][j] -= p * z
                        a[k + 1][j] -= p * y
                        a[k][j] -= p * x
                    mmin = nn if nn < k + 3 else k + 3
                    for i in range(l, mmin + 1):
                        p = x * a[i][k] + y * a[i][k + 1]
                        if k != nn - 1:
                            p += z * a[i][k + 2]
                            a[i][k + 2] -= p * r
                        a[i][k + 1] -= p * qq
                        a[i][k] -= p
            if l >= nn - 1:
                break
    out = np.array([complex(wr[i], wi[i]) for i in range(1, n + 1)])
    return out[np.lexsort((out.imag, out.real))]


# --------------------------------------------------------------------------
# polynomial roots


def _horner_with_derivative(coeffs, z):
    p = 0j
    dp = 0j
    for c in coeffs[::-1]:
        dp = dp * z + p
        p = p * z + c
    return p, dp


def aberth_roots(coeffs, init=None, tol: float = 1e-15, max_iter: int = 500) -> np.ndarray:
    """All roots of ``sum coeffs[k] z^k`` by Aberth-Ehrlich simultaneous iteration.

    ``init`` gives starting points; by default they are spread on a circle
    whose radius is the geometric mean of the root moduli.
    """
    c = np.asarray(coeffs, dtype=complex)
    while len(c) > 1 and c[-1] == 0:
        c = c[:-1]
    n = len(c) - 1
    if n < 1:
        return np.zeros(0, dtype=complex)
    if init is None:
        radius = abs(c[0] / c[-1]) ** (1.0 / n) if c[0] != 0 else 1.0
        z = radius * np.exp(1j * (2 * np.pi * np.arange(n) / n + 0.4))
    else:
        z = np.array(init, dtype=complex)
        if len(z) != n:
            raise DomainError("need one starting point per root")
    z = list(z)
    for _ in range(max_iter):
        biggest = 0.0
        for i in range(n):
            p, dp = _horner_with_derivative(c, z[i])
            if p == 0:
                continue
            ratio = p / dp if dp != 0 else complex(1e-3 * (1 + abs(z[i])))
            s = sum(1.0 / (z[i] - z[j]) for j in range(n) if j != i and z[i] != z[j])
            w = ratio / (1 - ratio * s)
            z[i] -= w
            biggest = max(biggest, abs(w) / max(abs(z[i]), 1e-300))
        if biggest <= tol:
            break
    else:
        raise ConvergenceError("Aberth iteration did not converge")
    z = np.array(z)
    return z[np.lexsort((z.imag, z.real))]


def match_multisets(a, b) -> float:
    """Largest relative distance after optimally pairing two equal-size sets."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != b.shape:
        raise DomainError("multisets have different sizes")
    if a.size == 0:
        return 0.0
    scale = np.maximum(np.maximum(abs(a)[:, None], abs(b)[None, :]), 1e-300)
    cost = abs(a[:, None] - b[None, :]) / scale
    rows, cols = linear_sum_assignment(cost)
    return float(cost[rows, cols].max())


def laurent_zeros(ctx: QContext, nu: float, n: int, cross_check: bool = True,
                  tol: float = 1e-8) -> np.ndarray:
    """Zeros of ``V_{n,nu}`` (in the squared variable) as eigenvalues of ``H_n``.

    With ``cross_check`` the eigenvalues are compared with the roots found by
    :func:`aberth_roots`, and each eigenvalue must make ``|V_n|`` small
    relative to the size of the terms of ``V_n``.  The ``x``-zeros of
    ``h_{n,nu}`` are ``x_zeros(result)``.
    """
    H = hessenberg(ctx, nu, n)
    eig = H.eigvals()
    if not cross_check:
        return eig
    V = V_poly(ctx, nu, n)
    start = eig * (1 + 1e-6 * np.exp(1j * np.arange(n)))
    roots = aberth_roots(V.coeffs, init=start)
    gap = match_multisets(eig, roots)
    if gap > tol:
        raise ConvergenceError(f"eigenvalues and polynomial roots differ by {gap:.2e}")
    for z in eig:
        terms = np.abs(V.coeffs) * abs(z) ** np.arange(n + 1)
        if abs(V(z)) > tol * terms.sum():
            raise ConvergenceError(f"|V_n({z})| too large")
    return eig


def x_zeros(z) -> np.ndarray:
    """Both square roots ``+-sqrt(z)`` of each squared-variable zero."""
    r = np.sqrt(np.asarray(z, dtype=complex))
    return np.concatenate([r, -r])


# --------------------------------------------------------------------------
# real zeros of J_nu and j_nu


@dataclass(frozen=True)
class ZeroTable:
    """First positive zeros of ``J_nu`` (``function='J'``) or ``j_nu`` (``'j'``)."""

    function: str
    nu: float
    zeros: np.ndarray
    brackets: list = field(default_factory=list)
    tol: float = 1e-12

    def __len__(self) -> int:
        return len(self.zeros)

    def __getitem__(self, k):
        return self.zeros[k]

    def count_below(self, s: float) -> int:
        return int(np.searchsorted(self.zeros, s))


def _scaled_pair(ctx, kind, nu):
    """Return ``f(x) -> (mant, dmant)`` sharing a positive continuous scale."""
    evaluate = J_reg_and_derivative if kind == "J" else j_reg_and_derivative

    def f(x):
        m, dm, _ = evaluate(ctx, nu, x)
        return m, dm

    return f


def _lower_bound(ctx, kind, nu):
    q = ctx.q
    if kind == "J":
        return (1 - q ** (nu + 1)) / 2
    return 1 / (1 + q ** ((nu + 1) / 2))


def _scan(ctx: QContext, kind: str, nu: float, count: int, ratio: float = 1.05,
          cap_per_zero: int = 10_000, max_depth: int = 12) -> ZeroTable:
    f = _scaled_pair(ctx, kind, nu)
    a = _lower_bound(ctx, kind, nu) * (1 - 1e-9)
    fa, da = f(a)
    zeros: list[float] = []
    brackets: list[tuple[float, float]] = []
    cells = 0

    def refine(lo, flo, hi):
        root = brentq(lambda t: f(t)[0], lo, hi, xtol=ctx.zero_tol * lo,
                      rtol=4 * np.finfo(float).eps, maxiter=500)
        zeros.append(root)
        brackets.append((lo, hi))

    def search(lo, flo, dlo, hi, fhi, dhi, depth):
        """Handle one cell, splitting it when it may hide a pair of zeros."""
        if flo * fhi < 0:
            refine(lo, flo, hi)
            return
        if fhi == 0.0:
            zeros.append(hi)
            brackets.append((lo, hi))
            return
        # same sign at both ends: a hidden pair needs |f| to turn back
        towards = flo * dlo < 0 and fhi * dhi > 0
        if not towards:
            return
        if depth >= max_depth:
            raise ScanError(f"cell [{lo}, {hi}] may hold two zeros of {kind}_{nu}")
        mid = math.sqrt(lo * hi)
        fm, dm = f(mid)
        search(lo, flo, dlo, mid, fm, dm, depth + 1)
        if len(zeros) < count:
            search(mid, fm, dm, hi, fhi, dhi, depth + 1)

    while len(zeros) < count:
        b = a * ratio
        fb, db = f(b)
        search(a, fa, da, b, fb, db, 0)
        a, fa, da = b, fb, db
        cells += 1
        if cells > cap_per_zero * count:
            raise ScanError(f"only {len(zeros)} zeros of {kind}_{nu} found")
    zeros = zeros[:count]
    zs = np.array(zeros)
    if np.any(np.diff(zs) <= 0):
        raise ScanError("zeros are not strictly increasing")
    return ZeroTable(kind, nu, zs, brackets[:count], ctx.zero_tol)


def _check_interlacing(lo: ZeroTable, hi: ZeroTable) -> None:
    # high zeros of neighbouring orders agree to machine precision
    a, b = lo.zeros, hi.zeros
    k = min(len(a) - 1, len(b))
    slack = 1 + 10 * lo.tol
    ok = np.all(a[:k] <= b[:k] * slack) and np.all(b[:k] < a[1 : k + 1] * slack)
    if not ok:
        raise ScanError(f"zeros of orders {lo.nu} and {hi.nu} do not interlace")


def zeros_J(ctx: QContext, nu: float, count: int, check_interlacing: bool = True) -> ZeroTable:
    """First ``count`` positive zeros of the Hahn-Exton function ``J_nu``, ``nu > -1``.

    The scan starts at ``(1 - q^{nu+1})/2``, below which there are no zeros.
    Interlacing with the zeros of ``J_{nu+1}`` is verified on return.
    """
    if nu <= -1:
        raise DomainError("zeros_J needs nu > -1")
    if count < 1:
        raise DomainError("count must be >= 1")
    table = _scan(ctx, "J", nu, count)
    if check_interlacing and count > 1:
        _check_interlacing(table, _scan(ctx, "J", nu + 1, count - 1))
    return table


def zeros_j(ctx: QContext, nu: float, count: int, check_interlacing: bool = True) -> ZeroTable:
    """First ``count`` positive zeros of ``j_nu``; the scan starts at ``1/(1+q^{(nu+1)/2})``."""
    if count < 1:
        raise DomainError("count must be >= 1")
    table = _scan(ctx, "j", nu, count)
    if check_interlacing and count > 1:
        _check_interlacing(table, _scan(ctx, "j", nu + 1, count - 1))
    return table


def m_bound(ctx: QContext, nu: float) -> float:
    """``M(nu,q) = -nu - 1 + 2 ln(1-q)/ln q - 1/ln q``.

    For ``n >= M`` the minimal solutions ``h^+_n`` (on ``|x| >= 1``) and
    ``h^-_n`` (on ``|x| <= 1``) have no zeros.
    """
    lq = math.log(ctx.q)
    return -nu - 1 + 2 * math.log(1 - ctx.q) / lq - 1 / lq

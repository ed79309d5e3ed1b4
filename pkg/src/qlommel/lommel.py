"""Recurrence-defined families: Laurent q-Lommel polynomials and relatives.

Every family is evaluated by running its three-term recurrence forward.
The functions accept scalars or numpy arrays for ``x``.  Minimal
(recessive) solutions are never produced by forward recurrence; they come
from the Bessel-type series instead (:func:`h_minimal`).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .bessel import J_reg, j_reg
from .errors import DomainError
from .qseries import QContext, qpoch

__all__ = [
    "LaurentCoeffs",
    "MonicPoly",
    "h_eval",
    "h_sequence",
    "h_coeffs",
    "V_poly",
    "lambda_p",
    "lambda_P",
    "p_eval",
    "p1_eval",
    "P_eval",
    "P1_eval",
    "split_even_odd",
    "u_eval",
    "al_salam_chihara",
    "q_hermite",
    "chebyshev_U",
    "h_minimal",
    "P_half_closed",
    "half_generating_function",
    "F_limit",
]

_DEGENERATE_EPS = 1e-14


# --------------------------------------------------------------------------
# containers


@dataclass(frozen=True)
class LaurentCoeffs:
    """Laurent polynomial ``sum_e coeffs[e] * x**e`` with integer exponents.

    ``degree`` is the largest absolute exponent that may carry a nonzero
    coefficient.  ``degenerate`` is set by :func:`h_coeffs` when the leading
    coefficient ``(q^nu;q)_m`` vanishes.
    """

    coeffs: Mapping[int, float]
    degree: int = -1
    degenerate: bool = False

    def __post_init__(self):
        clean = {int(e): float(c) for e, c in self.coeffs.items() if c != 0.0}
        object.__setattr__(self, "coeffs", clean)
        if self.degree < 0:
            deg = max((abs(e) for e in clean), default=0)
            object.__setattr__(self, "degree", deg)

    @classmethod
    def monomial(cls, e: int, c: float = 1.0) -> "LaurentCoeffs":
        return cls({e: c})

    def __getitem__(self, e: int) -> float:
        return self.coeffs.get(e, 0.0)

    def exponents(self) -> list[int]:
        return sorted(self.coeffs)

    def __call__(self, x):
        x = np.asarray(x) if not np.isscalar(x) else x
        total = 0.0 * x
        for e, c in self.coeffs.items():
            total = total + c * x**e
        return total

    def __mul__(self, other):
        if isinstance(other, LaurentCoeffs):
            out: dict[int, float] = {}
            for e1, c1 in self.coeffs.items():
                for e2, c2 in other.coeffs.items():
                    out[e1 + e2] = out.get(e1 + e2, 0.0) + c1 * c2
            return LaurentCoeffs(out)
        return LaurentCoeffs({e: c * other for e, c in self.coeffs.items()})

    __rmul__ = __mul__

    def __add__(self, other: "LaurentCoeffs") -> "LaurentCoeffs":
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, 0.0) + c
        return LaurentCoeffs(out)

    def shift(self, k: int) -> "LaurentCoeffs":
        """Multiply by ``x**k``."""
        return LaurentCoeffs({e + k: c for e, c in self.coeffs.items()})

    def parity_ok(self) -> bool:
        """True if only exponents of the parity of ``degree`` occur."""
        return all((e - self.degree) % 2 == 0 for e in self.coeffs)


@dataclass(frozen=True)
class MonicPoly:
    """Polynomial with ascending real coefficients.

    Despite the name the leading coefficient is whatever the family dictates:
    1 for the monic families, ``(q^nu;q)_n`` for ``p_n`` and ``V_{n,nu}``.
    """

    coeffs: np.ndarray
    degenerate: bool = False
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "coeffs", np.asarray(self.coeffs, dtype=float))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> float:
        return float(self.coeffs[-1])

    def __call__(self, x):
        # Horner, works for scalars and arrays, real or complex
        acc = 0.0 * x
        for c in self.coeffs[::-1]:
            acc = acc * x + c
        return acc


def _poly_recurrence(b, c, n: int, first=None) -> list[np.ndarray]:
    """Coefficient vectors of ``y_{k+1} = (x - b_k) y_k - c_k y_{k-1}``.

    ``y_{-1} = 0`` and ``y_0 = 1``; ``first`` overrides ``y_1``.
    """
    ys = [np.array([1.0])]
    prev = np.zeros(1)
    for k in range(n):
        cur = ys[-1]
        if k == 0 and first is not None:
            nxt = np.asarray(first, dtype=float)
        else:
            nxt = np.zeros(len(cur) + 1)
            nxt[1:] += cur
            nxt[:-1] -= b(k) * cur
            nxt[: len(prev)] -= c(k) * prev
        prev = cur
        ys.append(nxt)
    return ys


def _is_degenerate(q: float, nu: float, m: int) -> bool:
    return any(abs(1.0 - q ** (nu + j)) < _DEGENERATE_EPS for j in range(m))


# --------------------------------------------------------------------------
# Laurent q-Lommel polynomials


def h_sequence(ctx: QContext, nu: float, m: int, x):
    """List ``[h_0, ..., h_m]`` evaluated at ``x`` by forward recurrence."""
    if np.any(np.asarray(x) == 0):
        raise DomainError("h_{m,nu} has a pole at x = 0")
    q = ctx.q
    inv = 1.0 / x
    prev, cur = 0.0 * x, 1.0 + 0.0 * x
    out = [cur]
    for k in range(m):
        prev, cur = cur, (inv + x * (1.0 - q ** (nu + k))) * cur - prev
        out.append(cur)
    return out


def h_eval(ctx: QContext, nu: float, m: int, x):
    """Laurent q-Lommel polynomial ``h_{m,nu}(x;q)`` for ``m >= -1``.

    >>> ctx = QContext(0.5)
    >>> h_eval(ctx, 1.0, 1, 2.0)  # 1/x + x(1 - q^nu)
    1.5
    """
    if m < -1:
        raise DomainError("m must be >= -1")
    if m == -1:
        if np.any(np.asarray(x) == 0):
            raise DomainError("h_{m,nu} has a pole at x = 0")
        return 0.0 * x
    return h_sequence(ctx, nu, m, x)[-1]


def h_coeffs(ctx: QContext, nu: float, m: int) -> LaurentCoeffs:
    """Coefficients of ``h_{m,nu}`` from the recurrence run in coefficient space.

    Only exponents ``-m, -m+2, ..., m`` are ever populated.
    """
    if m < 0:
        raise DomainError("m must be >= 0")
    q = ctx.q
    prev: dict[int, float] = {}
    cur: dict[int, float] = {0: 1.0}
    for k in range(m):
        a = 1.0 - q ** (nu + k)
        nxt: dict[int, float] = {}
        for e, c in cur.items():
            nxt[e - 1] = nxt.get(e - 1, 0.0) + c
            nxt[e + 1] = nxt.get(e + 1, 0.0) + a * c
        for e, c in prev.items():
            nxt[e] = nxt.get(e, 0.0) - c
        prev, cur = cur, nxt
    return LaurentCoeffs(cur, degree=m, degenerate=_is_degenerate(q, nu, m))


def V_poly(ctx: QContext, nu: float, m: int) -> MonicPoly:
    """``V_{m,nu}`` with ``V_m(x^2) = x^m h_{m,nu}(x)``, built from its own recurrence."""
    if m < 0:
        raise DomainError("m must be >= 0")
    q = ctx.q
    prev = np.zeros(1)
    cur = np.array([1.0])
    for k in range(m):
        a = 1.0 - q ** (nu + k)
        nxt = np.zeros(len(cur) + 1)
        nxt[:-1] += cur
        nxt[1:] += a * cur
        nxt[1 : 1 + len(prev)] -= prev
        prev, cur = cur, nxt
    return MonicPoly(cur, degenerate=_is_degenerate(q, nu, m), name=f"V_{m}")


# --------------------------------------------------------------------------
# ordinary orthogonal families


def lambda_p(ctx: QContext, nu: float, n: int) -> float:
    """Recurrence coefficient of ``p_n``: ``q^k`` for ``n=2k``, ``q^{nu+3k+1}`` for ``n=2k+1``."""
    k, odd = divmod(n, 2)
    return ctx.q ** (nu + 3 * k + 1) if odd else ctx.q**k


def lambda_P(ctx: QContext, nu: float, n: int) -> float:
    """Recurrence coefficient of ``P_n``: ``q^k`` for ``n=2k``, ``q^{k+nu}`` for ``n=2k+1``."""
    k, odd = divmod(n, 2)
    return ctx.q ** (k + nu) if odd else ctx.q**k


def _p_family(ctx, nu, n, x, shift):
    if n < -1:
        raise DomainError("n must be >= -1")
    q = ctx.q
    prev, cur = 0.0 * x, 1.0 + 0.0 * x
    if n == -1:
        return prev
    for k in range(1, n + 1):
        j = k - 1 + shift  # index of the recurrence step
        prev, cur = cur, x * (1.0 - q ** (nu + j)) * cur - lambda_p(ctx, nu, j) * prev
    return cur


def p_eval(ctx: QContext, nu: float, n: int, x):
    """``p_n(x)``: ``p_{n+1} = x(1-q^{nu+n}) p_n - lambda_n p_{n-1}``, ``p_0 = 1``."""
    return _p_family(ctx, nu, n, x, 0)


def p1_eval(ctx: QContext, nu: float, n: int, x):
    """Associated polynomial ``p^{(1)}_n``, recurrence shifted by one step."""
    return _p_family(ctx, nu, n, x, 1)


def _P_family(ctx, nu, n, x, shift):
    if n < -1:
        raise DomainError("n must be >= -1")
    prev, cur = 0.0 * x, 1.0 + 0.0 * x
    if n == -1:
        return prev
    for k in range(n):
        prev, cur = cur, x * cur - lambda_P(ctx, nu, k + shift) * prev
    return cur


def P_eval(ctx: QContext, nu: float, n: int, x):
    """Monic ``P_n``: ``P_{n+1} = x P_n - lambda_n P_{n-1}``."""
    return _P_family(ctx, nu, n, x, 0)


def P1_eval(ctx: QContext, nu: float, n: int, x):
    """Associated monic ``P^{(1)}_n`` with ``gamma_n = lambda_{n+1}``."""
    return _P_family(ctx, nu, n, x, 1)


def split_even_odd(ctx: QContext, nu: float, n: int, family: str = "P"):
    """Even and odd parts of ``P`` (or ``P1``) as polynomials in ``x^2``.

    Returns ``(R_n, S_n)`` with ``P_{2n}(x) = R_n(x^2)`` and
    ``P_{2n+1}(x) = x S_n(x^2)``; for ``family="P1"`` the pair is
    ``(T_n, U_n)``.  Both are built from the contracted recurrences, not by
    extracting coefficients of ``P``.
    """
    if family not in ("P", "P1"):
        raise DomainError("family must be 'P' or 'P1'")
    shift = 0 if family == "P" else 1

    def a(k):  # coefficient a_k of the monic recurrence; a_0 never acts
        return 0.0 if k == 0 else lambda_P(ctx, nu, k + shift)

    even = _poly_recurrence(lambda k: a(2 * k) + a(2 * k + 1),
                            lambda k: a(2 * k - 1) * a(2 * k) if k else 0.0, n)
    odd = _poly_recurrence(lambda k: a(2 * k + 1) + a(2 * k + 2),
                           lambda k: a(2 * k) * a(2 * k + 1) if k else 0.0, n)
    names = ("R", "S") if family == "P" else ("T", "U")
    return (MonicPoly(even[n], name=f"{names[0]}_{n}"),
            MonicPoly(odd[n], name=f"{names[1]}_{n}"))


def u_eval(ctx: QContext, n: int, a, b, x):
    """``u_n(x;a,b;q)``: ``u_{k+1} = (x - a q^k) u_k - b^2 q^{2k-2} u_{k-1}``."""
    q = ctx.q
    prev, cur = 0.0 * x, 1.0 + 0.0 * x
    if n < 0:
        return prev
    for k in range(n):
        prev, cur = cur, (x - a * q**k) * cur - b * b * q ** (2 * k - 2) * prev
    return cur


def al_salam_chihara(ctx: QContext, k: int, a, b, c, x):
    """Al-Salam--Chihara polynomial ``P_k(x;q;a,b,c)`` by its recurrence.

    ``P_{n+1} = (x - a q^n) P_n - (c - b q^{n-1})(1 - q^n) P_{n-1}``.
    """
    if k < 0:
        raise DomainError("k must be >= 0")
    q = ctx.q
    prev, cur = 0.0 * x, 1.0 + 0.0 * x
    for n in range(k):
        prev, cur = cur, (x - a * q**n) * cur - (c - b * q ** (n - 1)) * (1 - q**n) * prev
    return cur


def q_hermite(ctx: QContext, n: int, x):
    """Continuous q-Hermite ``H_n(x|q)``: ``H_{k+1} = 2x H_k - (1-q^k) H_{k-1}``."""
    if n < 0:
        raise DomainError("n must be >= 0")
    q = ctx.q
    prev, cur = 0.0 * x, 1.0 + 0.0 * x
    for k in range(n):
        prev, cur = cur, 2 * x * cur - (1 - q**k) * prev
    return cur


def chebyshev_U(n: int, t):
    """Chebyshev polynomial of the second kind, ``U_{-1} = 0``, ``U_0 = 1``."""
    if n < -1:
        raise DomainError("n must be >= -1")
    prev, cur = 0.0 * t, 1.0 + 0.0 * t
    if n == -1:
        return prev
    for _ in range(n):
        prev, cur = cur, 2 * t * cur - prev
    return cur


# --------------------------------------------------------------------------
# minimal solutions


def h_minimal(ctx: QContext, nu: float, sign: str, n: int, x):
    """Minimal solutions ``h^+_{n,nu}`` (outside) and ``h^-_{n,nu}`` (inside).

    ``x^n h^+_n -> 1`` for ``|x| > 1`` and ``x^{-n} h^-_n -> 1`` for
    ``|x| < 1``.  Both satisfy the same recurrence as ``h_{n,nu}``.  The
    fractional powers of ``x`` cancel, so complex ``x`` is fine.
    """
    q = ctx.q
    if sign == "+":
        if abs(x) <= math.sqrt(q):
            raise DomainError("h^+ needs |x| > q^(1/2)")
        return qpoch(ctx, q) / qpoch(ctx, q / (x * x)) * x ** (-n) * J_reg(ctx, nu + n, 1 / x)
    if sign == "-":
        if abs(x) >= 1 / math.sqrt(q):
            raise DomainError("h^- needs |x| < q^(-1/2)")
        return x**n * j_reg(ctx, nu + n, x) / qpoch(ctx, q * x * x)
    raise DomainError("sign must be '+' or '-'")


# --------------------------------------------------------------------------
# the order-one-half case, base p = q^(1/2)


def _ppoch(p: float, k: int) -> float:
    out = 1.0
    t = p
    for _ in range(k):
        out *= 1 - t
        t *= p
    return out


def P_half_closed(ctx: QContext, n: int, x):
    """Closed-form ``P_n`` at ``nu = 1/2`` as a finite sum in ``p = q^(1/2)``."""
    if n < 0:
        raise DomainError("n must be >= 0")
    p = math.sqrt(ctx.q)
    total = 0.0 * x
    for k in range(n // 2 + 1):
        coef = (-1) ** k * p ** (k * k) * _ppoch(p, n - k) / (_ppoch(p, k) * _ppoch(p, n - 2 * k))
        total = total + coef * x ** (n - 2 * k)
    return total


def half_generating_function(ctx: QContext, z, x):
    """``sum_n P_n(x) z^n`` at ``nu = 1/2`` via ``sum_k (-1)^k z^{2k} p^{k^2} / (zx;p)_{k+1}``."""
    p = math.sqrt(ctx.q)
    total = 0.0
    den = 1.0 - z * x
    for k in range(ctx.max_terms):
        term = (-1) ** k * z ** (2 * k) * p ** (k * k) / den
        total += term
        if abs(term) <= ctx.series_tol * abs(total) and k > 2:
            return total
        den *= 1.0 - z * x * p ** (k + 1)
    return total


def F_limit(ctx: QContext, x):
    """``F(x) = sum_k (-1)^k x^{2k} p^{k^2} / (p;p)_k`` with ``p = q^(1/2)``."""
    p = math.sqrt(ctx.q)
    total = 0.0
    term = 1.0
    x2 = x * x
    for k in range(ctx.max_terms):
        total += term
        term *= -x2 * p ** (2 * k + 1) / (1 - p ** (k + 1))
        if abs(term) <= ctx.series_tol * abs(total) and abs(x2) * p ** (2 * k + 1) < 1:
            return total + term
    return total

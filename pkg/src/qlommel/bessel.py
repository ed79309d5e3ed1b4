"""Hahn-Exton q-Bessel function and its companion ``j_nu``.

Both functions are written as ``x**nu`` times an entire function of ``x``:

    J_nu(x; q) = x**nu * J_reg(x),   J_reg(y) = Phi(q y^2, q^{nu+1}) / (q;q)_inf
    j_nu(x; q) = x**nu * j_reg(x),   j_reg(x) = Phi(q^{nu+1} x^2, q x^2)

with ``Phi(z, c) = (c;q)_inf 1phi1(0; c; q, z)``.  Complex arguments always go
through the regularized forms; the power ``x**nu`` is only applied for real
positive ``x``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError
from .qseries import QContext, phi11_scaled, phi11_scaled_dy, qpoch

__all__ = [
    "BesselParams",
    "J_reg",
    "J_reg_scaled",
    "J",
    "dJ",
    "j_reg",
    "j_reg_scaled",
    "j",
    "dj",
    "J_reg_and_derivative",
    "j_reg_and_derivative",
    "wronskian_residual",
    "wronskian_shifted",
]


def _qq_inf(ctx: QContext) -> float:
    return qpoch(ctx, ctx.q)


def _finish(mant, log_scale):
    if log_scale == 0.0:
        return mant
    try:
        return mant * math.exp(log_scale)
    except OverflowError:
        return mant * math.inf


def J_reg_scaled(ctx: QContext, nu: float, y):
    """``J_reg(y)`` as ``(mantissa, log_scale)``; see :func:`J_reg`."""
    q = ctx.q
    mant, ls = phi11_scaled(ctx, q * y * y, q ** (nu + 1))
    return mant / _qq_inf(ctx), ls


def J_reg(ctx: QContext, nu: float, y):
    """Entire part of the Hahn-Exton function: ``J_nu(y) = y**nu * J_reg(y)``.

    Works for any real order; the product ``(q^{nu+1};q)_inf`` is folded into
    the series so negative integer orders need no special casing.
    """
    return _finish(*J_reg_scaled(ctx, nu, y))


def j_reg_scaled(ctx: QContext, nu: float, x):
    """``j_reg(x)`` as ``(mantissa, log_scale)``; see :func:`j_reg`."""
    q = ctx.q
    x2 = x * x
    return phi11_scaled(ctx, q ** (nu + 1) * x2, q * x2)


def j_reg(ctx: QContext, nu: float, x):
    """Entire part of the companion function: ``j_nu(x) = x**nu * j_reg(x)``.

    ``j_reg(x) = (q x^2;q)_inf 1phi1(0; q x^2; q, q^{nu+1} x^2)``, which also
    equals ``(q^{nu+1} x^2;q)_inf 1phi1(0; q^{nu+1} x^2; q, q x^2)``.
    """
    return _finish(*j_reg_scaled(ctx, nu, x))


def _check_positive(x):
    if isinstance(x, complex) or not x > 0:
        raise DomainError(f"real evaluation needs x > 0, got {x!r}")


def J(ctx: QContext, nu: float, x: float) -> float:
    """Hahn-Exton q-Bessel function ``J_nu(x; q)`` for real ``x > 0``."""
    _check_positive(x)
    mant, ls = J_reg_scaled(ctx, nu, x)
    return _finish(mant, ls + nu * math.log(x))


def j(ctx: QContext, nu: float, x: float) -> float:
    """Companion function ``j_nu(x; q)`` for real ``x > 0``."""
    _check_positive(x)
    mant, ls = j_reg_scaled(ctx, nu, x)
    return _finish(mant, ls + nu * math.log(x))


def J_reg_and_derivative(ctx: QContext, nu: float, y: float):
    """Scaled ``(J_reg, d/dy J_reg, log_scale)`` for real ``y > 0``.

    Both values share the factor ``exp(log_scale)``.  The derivative comes
    from differentiating the series term by term.
    """
    _check_positive(y)
    c = _qq_inf(ctx)
    mant, dmant, ls = phi11_scaled_dy(ctx, ctx.q, ctx.q ** (nu + 1), y, 1, 0)
    return mant / c, dmant / c, ls


def j_reg_and_derivative(ctx: QContext, nu: float, x: float):
    """Scaled ``(j_reg, d/dx j_reg, log_scale)`` for real ``x > 0``."""
    _check_positive(x)
    return phi11_scaled_dy(ctx, ctx.q ** (nu + 1), ctx.q, x, 1, 1)


def dJ(ctx: QContext, nu: float, x: float) -> float:
    """Derivative of ``J_nu(x; q)`` with respect to ``x > 0``."""
    f, df, ls = J_reg_and_derivative(ctx, nu, x)
    return _finish(nu * f / x + df, ls + nu * math.log(x))


def dj(ctx: QContext, nu: float, x: float) -> float:
    """Derivative of ``j_nu(x; q)`` with respect to ``x > 0``."""
    f, df, ls = j_reg_and_derivative(ctx, nu, x)
    return _finish(nu * f / x + df, ls + nu * math.log(x))


def wronskian_shifted(ctx: QContext, nu: float, x, m: int = 0):
    """``J_{nu+m}(1/x) j_{nu+m-1}(x) - J_{nu+m-1}(1/x) j_{nu+m}(x)``.

    Evaluated through the regularized forms, so ``x`` may be complex.  The
    value does not depend on ``m``.
    """
    if x == 0:
        raise DomainError("x must be nonzero")
    mu = nu + m
    return (J_reg(ctx, mu, 1 / x) * j_reg(ctx, mu - 1, x) / x
            - x * J_reg(ctx, mu - 1, 1 / x) * j_reg(ctx, mu, x))


def wronskian_residual(ctx: QContext, nu: float, x):
    """LHS minus RHS of the closed-form Wronskian of ``J(1/x)`` and ``j(x)``.

    The right-hand side is the theta product
    ``x^{-1} (q x^{-2};q)_inf (x^2;q)_inf / (q;q)_inf``.
    """
    lhs = wronskian_shifted(ctx, nu, x, 0)
    rhs = qpoch(ctx, ctx.q / (x * x)) * qpoch(ctx, x * x) / (x * _qq_inf(ctx))
    return lhs - rhs


@dataclass(frozen=True)
class BesselParams:
    """Order ``nu`` bundled with a :class:`QContext`.

    A thin convenience wrapper: ``BesselParams(1.5, ctx).J(0.8)`` is the same
    as ``J(ctx, 1.5, 0.8)``.
    """

    nu: float
    ctx: QContext

    def J_reg(self, y):
        return J_reg(self.ctx, self.nu, y)

    def J(self, x):
        return J(self.ctx, self.nu, x)

    def dJ(self, x):
        return dJ(self.ctx, self.nu, x)

    def j_reg(self, x):
        return j_reg(self.ctx, self.nu, x)

    def j(self, x):
        return j(self.ctx, self.nu, x)

    def dj(self, x):
        return dj(self.ctx, self.nu, x)

    def wronskian_residual(self, x):
        return wronskian_residual(self.ctx, self.nu, x)

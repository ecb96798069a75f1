"""Generating functions of sigma-canonical secondary structures.

A secondary structure on ``n`` vertices is a noncrossing set of arcs
``(i, j)``, ``i < j``, each vertex in at most one arc.  Its arc-length
condition is ``j - i >= lam``; it is sigma-canonical when every maximal stack
``(i, j), (i+1, j-1), ...`` has at least ``sigma`` arcs.

The generating function is ``T(z) = F(u z^2 / v^2) / v`` with ``F`` the
Catalan series, ``u = z^(2 sigma - 2) / (z^(2 sigma) - z^2 + 1)`` and
``v = 1 - z + u (z^2 + ... + z^lam)``.  Expanding ``F(w) = 1 + w F(w)^2``
shows that ``T`` is the root with ``T(0) = 1`` of
``u z^2 T^2 - v T + 1 = 0``, which is how :func:`T_series` computes it.
"""

from __future__ import annotations

from dataclasses import dataclass

import mpmath

from .numerics import bisect, scan_sign_change
from .series import (
    UnivariateSeries,
    ps_compose,
    ps_div,
    ps_solve_quadratic,
    ps_sqrt,
)

__all__ = [
    "ParameterError",
    "PreconditionError",
    "DomainError",
    "StructureParams",
    "u_sigma",
    "v_lambda",
    "catalan_series",
    "T_series",
    "T_series_by_composition",
    "T_eval_real",
    "T_singularity",
]


class ParameterError(ValueError):
    """Invalid structure parameters (sigma, tau, lambda)."""


class PreconditionError(ValueError):
    """A construction is used outside the range where it is valid."""


class DomainError(ValueError):
    """Real evaluation outside the disc of analyticity."""


@dataclass(frozen=True)
class StructureParams:
    """Minimum interior stack length, exterior stack length and arc length."""

    sigma: int = 1
    tau: int = 1
    lam: int = 2

    def __post_init__(self):
        for name in ("sigma", "tau", "lam"):
            value = getattr(self, name)
            if not isinstance(value, int) or value < 1:
                label = "lambda" if name == "lam" else name
                raise ParameterError(f"{label} >= 1 violated (got {value!r})")

    def check_inflation(self) -> None:
        if self.lam > self.tau + 1:
            raise PreconditionError(
                f"lambda <= tau+1 violated (lambda={self.lam}, tau={self.tau})"
            )


def _check_sigma(sigma: int) -> None:
    if not isinstance(sigma, int) or sigma < 1:
        raise ParameterError(f"sigma >= 1 violated (got {sigma!r})")


def _check_lambda(lam: int) -> None:
    if not isinstance(lam, int) or lam < 1:
        raise ParameterError(f"lambda >= 1 violated (got {lam!r})")


def u_sigma(sigma: int, order: int) -> UnivariateSeries:
    """Expansion of ``z^(2 sigma - 2) / (z^(2 sigma) - z^2 + 1)``."""
    _check_sigma(sigma)
    num = UnivariateSeries.monomial(2 * sigma - 2, order)
    den = (
        UnivariateSeries.monomial(2 * sigma, order)
        - UnivariateSeries.monomial(2, order)
        + 1
    )
    return ps_div(num, den)


def v_lambda(sigma: int, lam: int, order: int) -> UnivariateSeries:
    """``1 - z + u_sigma(z) * sum_{h=2}^{lam} z^h`` (the sum is empty for lam=1)."""
    _check_sigma(sigma)
    _check_lambda(lam)
    arcs = UnivariateSeries([0, 0] + [1] * (lam - 1), order)
    return 1 - UnivariateSeries.variable(order) + u_sigma(sigma, order) * arcs


def catalan_series(order: int) -> UnivariateSeries:
    """``F(z) = (1 - sqrt(1 - 4z)) / (2z)``, computed through the radical."""
    big = order + 1
    root = ps_sqrt(UnivariateSeries([1, -4], big))
    top = UnivariateSeries.one(big) - root
    return ps_div(top, UnivariateSeries.monomial(1, big, 2))


def T_series(sigma: int, lam: int, order: int) -> UnivariateSeries:
    """Generating function of sigma-canonical structures with arc-length >= lam."""
    _check_sigma(sigma)
    _check_lambda(lam)
    if order < 0:
        raise ParameterError("order >= 0 violated")
    u = u_sigma(sigma, order)
    v = v_lambda(sigma, lam, order)
    A = u.shift(2)
    return ps_solve_quadratic(A, -v, UnivariateSeries.one(order), 1)


def T_series_by_composition(sigma: int, lam: int, order: int) -> UnivariateSeries:
    """Same series as :func:`T_series`, via ``F(u z^2 / v^2) / v`` composition."""
    _check_sigma(sigma)
    _check_lambda(lam)
    u = u_sigma(sigma, order)
    v = v_lambda(sigma, lam, order)
    w = ps_div(u.shift(2), v * v)
    return ps_div(ps_compose(catalan_series(order), w), v)


# --------------------------------------------------------------------------
# real evaluation
# --------------------------------------------------------------------------


def _u_real(sigma, x):
    return x ** (2 * sigma - 2) / (x ** (2 * sigma) - x**2 + 1)


def _v_real(sigma, lam, x):
    u = _u_real(sigma, x)
    return 1 - x + u * mpmath.fsum(x**h for h in range(2, lam + 1))


def _radicand(sigma, lam, x):
    v = _v_real(sigma, lam, x)
    return 1 - 4 * _u_real(sigma, x) * x**2 / v**2


def T_eval_real(sigma: int, lam: int, x):
    """Value of ``T_sigma^[lam](x)`` at a real point below its singularity.

    Uses the branch ``F(w) = (1 - sqrt(1 - 4w)) / (2w)`` with ``F(0) = 1``.
    Works at the ambient :mod:`mpmath` precision.
    """
    _check_sigma(sigma)
    _check_lambda(lam)
    x = mpmath.mpf(x)
    if x < 0:
        raise DomainError(f"x >= 0 violated (x={x})")
    if x == 0:
        return mpmath.mpf(1)
    v = _v_real(sigma, lam, x)
    if v == 0:
        raise DomainError(f"v_lambda(x) != 0 violated at x={x}")
    w = _u_real(sigma, x) * x**2 / v**2
    disc = 1 - 4 * w
    if disc < 0:
        raise DomainError(f"1 - 4 (sqrt(u) x / v)^2 >= 0 violated at x={x}")
    if v < 0:
        raise DomainError(f"x={x} lies beyond the pole of 1/v_lambda")
    # 1 - sqrt(1 - 4w) = 4w / (1 + sqrt(1 - 4w)) avoids cancellation near w = 0
    F = 2 / (1 + mpmath.sqrt(disc))
    return F / v


def T_singularity(sigma: int, lam: int, step: float = 1e-3):
    """Smallest positive root of ``1 - 4 u x^2 / v^2``, the branch point of T.

    Located by a coarse scan in steps of ``step`` followed by bisection to
    the full working precision.
    """
    f = lambda x: _radicand(sigma, lam, x)  # noqa: E731
    lo, hi = scan_sign_change(f, mpmath.mpf(0), mpmath.mpf(1), step)
    return bisect(f, lo, hi)

"""Generating functions of joint structures by inflating shapes.

Every shape arc is inflated to a stem of stacks separated by secondary
segments, and further secondary segments are inserted at every free gap.  In
generating-function terms

    J(x, y, z) = T(x) T(y) G(eta(x), eta(y), eta0)

with ``T`` the secondary-structure series and ``G`` the shape series.  Rather
than expanding ``G`` and composing, the inner series are substituted into the
shape quadratic and the result is re-solved directly in ``(x, y, z)``.
"""

from __future__ import annotations

from typing import NamedTuple

from .secondary import (
    ParameterError,
    PreconditionError,
    StructureParams,
    T_series,
)
from .series import (
    TrivariateSeries,
    UnivariateSeries,
    ps_compose,
    ps_div,
    ps_seq,
    ps_solve_quadratic,
    tps_div,
    tps_solve_quadratic,
)
from .shapes import U_quadratic, U_series

__all__ = [
    "InflationPieces",
    "StemSeries",
    "RecurrenceCoefficients",
    "stem_series",
    "eta_series",
    "build_inflation",
    "joint_gf",
    "joint_series",
    "joint_series_by_composition",
    "recurrence_coefficients",
    "joint_by_recurrence",
]


class StemSeries(NamedTuple):
    """Interior stacks ``K``, induced stacks ``N`` and stems ``M = K / (1 - N)``."""

    K: UnivariateSeries
    N: UnivariateSeries
    M: UnivariateSeries


class InflationPieces(NamedTuple):
    T_x: TrivariateSeries
    T_y: TrivariateSeries
    eta_x: TrivariateSeries
    eta_y: TrivariateSeries
    eta0: TrivariateSeries
    eta: UnivariateSeries  # the univariate series behind eta_x and eta_y


class RecurrenceCoefficients(NamedTuple):
    a: list[int]
    b: list[int]
    c: list[int]


def stem_series(sigma: int, lam: int, order: int) -> StemSeries:
    T = T_series(sigma, lam, order)
    K = ps_seq(UnivariateSeries.monomial(2, order)).shift(2 * sigma)
    N = K * (T * T - 1)
    return StemSeries(K, N, K * ps_seq(N))


def eta_series(sigma: int, lam: int, order: int) -> UnivariateSeries:
    """``w^(2 sigma) T(w)^2 / (1 - w^2 - w^(2 sigma) (T(w)^2 - 1))``: a stem plus its flanking segments."""
    T = T_series(sigma, lam, order)
    T2 = T * T
    num = T2.shift(2 * sigma)
    den = 1 - UnivariateSeries.monomial(2, order) - (T2 - 1).shift(2 * sigma)
    return ps_div(num, den)


def _check_box(bounds):
    if len(bounds) != 3 or min(bounds) < 0:
        raise ParameterError("bounds must be three integers >= 0")
    return tuple(int(b) for b in bounds)


def build_inflation(params: StructureParams, bounds) -> InflationPieces:
    params.check_inflation()
    bounds = _check_box(bounds)
    N, M, _ = bounds
    order = max(N, M)
    T = T_series(params.sigma, params.lam, order)
    eta = eta_series(params.sigma, params.lam, order)
    T_x = TrivariateSeries.from_univariate(T, 0, bounds)
    T_y = TrivariateSeries.from_univariate(T, 1, bounds)
    eta_x = TrivariateSeries.from_univariate(eta, 0, bounds)
    eta_y = TrivariateSeries.from_univariate(eta, 1, bounds)
    xyz = TrivariateSeries.monomial((1, 1, 1), bounds)
    xyz_tau = xyz ** params.tau
    TT = T_x * T_y
    eta0 = tps_div(xyz_tau * TT, 1 - xyz - xyz_tau * (TT - 1))
    return InflationPieces(T_x, T_y, eta_x, eta_y, eta0, eta)


def joint_gf(params: StructureParams, bounds) -> TrivariateSeries:
    """``J_{sigma,tau}^[lam](x, y, z)`` in the box ``bounds = (N, M, H)``.

    Coefficient ``(n, m, h)`` counts joint structures with ``n`` top
    vertices, ``m`` bottom vertices and ``h`` exterior arcs.
    """
    p = build_inflation(params, bounds)
    s = p.eta_x + p.eta_y + p.eta_x * p.eta_y
    A = s * (p.eta0 + 1)
    B = -(s * (p.eta0 + 2) + 1)
    C = (1 + p.eta_x) * (1 + p.eta_y) * (1 + p.eta0)
    G = tps_solve_quadratic(A, B, C, 1)
    return p.T_x * p.T_y * G


def _check_univariate(params: StructureParams):
    if params.sigma != params.tau:
        raise PreconditionError(
            f"sigma == tau violated (sigma={params.sigma}, tau={params.tau})"
        )
    if params.lam > params.sigma + 1:
        raise PreconditionError(
            f"lambda <= sigma+1 violated (lambda={params.lam}, sigma={params.sigma})"
        )


def joint_series(params: StructureParams, order: int) -> UnivariateSeries:
    """``J_sigma^[lam](z) = T(z)^2 U(zeta(z))``, counted by total vertices ``n + m``.

    ``U(zeta)`` is obtained by solving the ``U`` equation with ``zeta``
    substituted for the variable.
    """
    _check_univariate(params)
    if order < 0:
        raise ParameterError("order >= 0 violated")
    T = T_series(params.sigma, params.lam, order)
    zeta = eta_series(params.sigma, params.lam, order)
    A = zeta * zeta + 2 * zeta
    B = -(zeta * zeta + 3 * zeta + 1)
    C = (1 + zeta) * (1 + zeta)
    return T * T * ps_solve_quadratic(A, B, C, 1)


def joint_series_by_composition(params: StructureParams, order: int) -> UnivariateSeries:
    """Same as :func:`joint_series`, but composing the expanded ``U`` with ``zeta``."""
    _check_univariate(params)
    T = T_series(params.sigma, params.lam, order)
    zeta = eta_series(params.sigma, params.lam, order)
    return T * T * ps_compose(U_series(order), zeta)


def recurrence_series(sigma: int, order: int, lam: int = 2):
    """Series ``A, B, C`` with ``A J^2 + B J + C = 0``.

    They come from substituting ``zeta`` into the ``U`` equation, writing
    ``U = J / T^2`` and clearing denominators by ``(1 - z^2 - z^(2 sigma)(T^2 - 1))^2 / T^2``.
    """
    T = T_series(sigma, lam, order)
    T2 = T * T
    z2 = UnivariateSeries.monomial(2, order)
    e = UnivariateSeries.monomial(2 * sigma, order)
    a_ = 1 - z2
    A = e * (2 - 2 * z2 + 2 * e - e * T2)
    B = -(a_ * a_ + (2 + T2) * a_ * e + (1 + T2 - T2 * T2) * e * e)
    base = 1 - z2 + e
    C = T2 * base * base
    return A, B, C


def recurrence_coefficients(sigma: int, order: int, lam: int = 2) -> RecurrenceCoefficients:
    """Integer coefficient lists of the functional equation for ``J_sigma``."""
    if not isinstance(sigma, int) or sigma < 1:
        raise ParameterError(f"sigma >= 1 violated (got {sigma!r})")
    _check_univariate(StructureParams(sigma, sigma, lam))
    A, B, C = recurrence_series(sigma, order, lam)
    return RecurrenceCoefficients(A.coeffs, B.coeffs, C.coeffs)


def joint_by_recurrence(sigma: int, s_max: int, lam: int = 2) -> list[int]:
    """``[J_sigma(0), ..., J_sigma(s_max)]`` from the quadratic recurrence.

    Uses ``a(0) = 0`` and ``b(0) = -1`` to isolate ``J(s)``.
    """
    if s_max < 0:
        raise ParameterError("s_max >= 0 violated")
    a, b, c = recurrence_coefficients(sigma, s_max, lam)
    assert a[0] == 0 and b[0] == -1
    J = [c[0]]
    sq = [J[0] * J[0]]  # sq[k] = [z^k] J^2
    for s in range(1, s_max + 1):
        val = c[s]
        for i in range(1, s + 1):
            val += b[i] * J[s - i] + a[i] * sq[s - i]
        J.append(val)
        sq.append(sum(J[j] * J[s - j] for j in range(s + 1)))
    return J

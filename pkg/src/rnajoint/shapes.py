"""Shape generating function ``G(u, v, z)`` and its diagonal ``U(z)``.

``u``, ``v`` and ``z`` count top interior arcs, bottom interior arcs and
exterior arcs of a shape.  ``G`` is the root with ``G(0, 0, 0) = 1`` of

    (u+v+uv)(z+1) G^2 - ((u+v+uv)(z+2) + 1) G + (1+u)(1+v)(1+z) = 0.
"""

from __future__ import annotations

from typing import NamedTuple

import mpmath

from .numerics import bisect
from .series import (
    TrivariateSeries,
    UnivariateSeries,
    tps_div,
    tps_solve_quadratic,
    ps_solve_quadratic,
)

__all__ = [
    "ShapeCoefficients",
    "ShapeComponents",
    "shape_coefficients",
    "shape_gf",
    "shape_grammar_components",
    "U_series",
    "U_quadratic",
    "U_radicand",
    "rho",
]


class ShapeCoefficients(NamedTuple):
    A: TrivariateSeries
    B: TrivariateSeries
    C: TrivariateSeries


class ShapeComponents(NamedTuple):
    """Generating functions of the classes in the shape grammar."""

    G: TrivariateSeries
    G_T: TrivariateSeries  # tight shapes
    G_C: TrivariateSeries  # closed shapes
    G_RC: TrivariateSeries  # right closed shapes
    G_DT: TrivariateSeries  # double tight shapes
    G_tri_down: TrivariateSeries
    G_tri_up: TrivariateSeries
    G_square: TrivariateSeries
    I: TrivariateSeries  # interaction segments: 1 + z


def _poly(terms, bounds):
    return TrivariateSeries.from_polynomial(terms, bounds)


def shape_coefficients(bounds) -> ShapeCoefficients:
    bounds = tuple(bounds)
    s = _poly({(1, 0, 0): 1, (0, 1, 0): 1, (1, 1, 0): 1}, bounds)  # u + v + uv
    z = _poly({(0, 0, 1): 1}, bounds)
    A = s * (z + 1)
    B = -(s * (z + 2) + 1)
    C = _poly({(0, 0, 0): 1, (1, 0, 0): 1}, bounds) * _poly(
        {(0, 0, 0): 1, (0, 1, 0): 1}, bounds
    ) * (z + 1)
    return ShapeCoefficients(A, B, C)


def shape_gf(bounds) -> TrivariateSeries:
    """``G(u, v, z)`` inside the box ``bounds = (T1, T2, H)``."""
    A, B, C = shape_coefficients(bounds)
    G = tps_solve_quadratic(A, B, C, 1)
    assert G[0, 0, 0] == 1
    return G


def shape_grammar_components(bounds) -> ShapeComponents:
    """Solve the four grammar steps for every intermediate class.

    Steps 3 and 4 give ``G_C = s (z + G_DT)`` and ``G_DT = G - I - G_C`` with
    ``s = u + v + uv``, hence ``G_C = s (G - 1) / (1 + s)``.
    """
    bounds = tuple(bounds)
    G = shape_gf(bounds)
    u = _poly({(1, 0, 0): 1}, bounds)
    v = _poly({(0, 1, 0): 1}, bounds)
    z = _poly({(0, 0, 1): 1}, bounds)
    s = u + v + u * v
    I = 1 + z
    G_C = tps_div(s * (G - 1), 1 + s)
    G_DT = G - I - G_C
    G_down = u * z + u * G_DT
    G_up = v * z + v * G_DT
    G_sq = u * v * z + u * v * G_DT
    G_RC = G * G_C
    G_T = z + G_C
    return ShapeComponents(G, G_T, G_C, G_RC, G_DT, G_down, G_up, G_sq, I)


def U_quadratic(order: int):
    """Coefficients ``(z^2+2z, -(z^2+3z+1), (1+z)^2)`` of the equation for ``U``."""
    A = UnivariateSeries([0, 2, 1], order)
    B = UnivariateSeries([-1, -3, -1], order)
    C = UnivariateSeries([1, 2, 1], order)
    return A, B, C


def U_series(order: int) -> UnivariateSeries:
    """``U(z) = G(z, z, z)``: shapes counted by their total number of arcs."""
    A, B, C = U_quadratic(order)
    return ps_solve_quadratic(A, B, C, 1)


def U_radicand(x):
    """``1 - 2x - 9x^2 - 10x^3 - 3x^4``, the discriminant of the ``U`` equation."""
    return 1 - 2 * x - 9 * x**2 - 10 * x**3 - 3 * x**4


def rho(dps: int | None = None):
    """Dominant singularity of ``U``: the smallest positive root of :func:`U_radicand`."""
    with mpmath.workdps(dps or max(mpmath.mp.dps, 50)):
        lo, hi = mpmath.mpf(0), mpmath.mpf(1) / 3
        assert U_radicand(lo) > 0 > U_radicand(hi)
        r = bisect(U_radicand, lo, hi)
    return +r

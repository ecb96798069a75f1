"""Dominant singularities, growth rates and asymptotic constants of ``J_sigma^[lam]``.

``J(z) = T(z)^2 U(zeta(z))`` is a supercritical composition: its dominant
singularity ``gamma`` solves ``zeta(gamma) = rho``, where ``rho`` is the
square-root singularity of ``U``.  Near ``rho``,
``U(z) = u0 + u1 (rho - z)^(1/2) + O(rho - z)``, and transfer gives

    J(s) ~ c s^(-3/2) gamma^(-s),     c = T(gamma)^2 u1 (zeta'(gamma) gamma)^(1/2) / Gamma(-1/2).

All computations use :mod:`mpmath` at ``DEFAULT_DPS`` significant digits
unless told otherwise (environment variable ``RNAJOINT_PRECISION``).
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import mpmath

from .joint import eta_series, joint_by_recurrence
from .numerics import NoSignChangeError, bisect, richardson_derivative, scan_sign_change
from .secondary import (
    DomainError,
    PreconditionError,
    StructureParams,
    T_eval_real,
    T_singularity,
)
from .shapes import rho

__all__ = [
    "DEFAULT_DPS",
    "NotApplicableError",
    "SingularityReport",
    "zeta_real",
    "solve_gamma",
    "u_singular_coefficients",
    "zeta_derivative",
    "zeta_derivative_by_series",
    "asymptotic_constant",
    "singularity_report",
    "asymptotic_estimate",
    "compare_table",
    "growth_rate_grid",
]


def _env_dps(default: int = 50) -> int:
    # the CLI reports malformed values; the library just keeps the default
    try:
        return max(int(os.environ.get("RNAJOINT_PRECISION", default)), 20)
    except ValueError:
        return default


DEFAULT_DPS = _env_dps()
SCAN_STEP = 1e-3


class NotApplicableError(PreconditionError):
    """The composition formula does not hold for these parameters."""


def _params(params) -> StructureParams:
    if not isinstance(params, StructureParams):
        sigma, lam = params
        params = StructureParams(sigma=sigma, tau=sigma, lam=lam)
    if params.sigma != params.tau:
        raise PreconditionError(
            f"sigma == tau violated (sigma={params.sigma}, tau={params.tau})"
        )
    if params.lam > params.sigma + 1:
        raise NotApplicableError(
            f"lambda <= sigma+1 violated (lambda={params.lam}, sigma={params.sigma})"
        )
    return params


def zeta_real(sigma: int, lam: int, x):
    """``x^(2 sigma) T(x)^2 / (1 - x^2 - x^(2 sigma) (T(x)^2 - 1))`` for real ``x``."""
    x = mpmath.mpf(x)
    T2 = T_eval_real(sigma, lam, x) ** 2
    e = x ** (2 * sigma)
    den = 1 - x**2 - e * (T2 - 1)
    if den <= 0:
        raise DomainError(f"x={x} lies beyond the pole of zeta")
    return e * T2 / den


@dataclass(frozen=True)
class SingularityReport:
    sigma: int
    lam: int
    rho: mpmath.mpf
    gamma: mpmath.mpf
    growth_rate: mpmath.mpf
    constant_c: mpmath.mpf
    zeta_at_gamma: mpmath.mpf
    zeta_prime_at_gamma: mpmath.mpf
    t0: mpmath.mpf
    u1: mpmath.mpf
    u0: mpmath.mpf
    t_singularity: mpmath.mpf

    def to_dict(self, decimals: int = 5, digits: int = 30) -> dict:
        def rounded(x):
            return round(float(x), decimals)

        return {
            "sigma": self.sigma,
            "lambda": self.lam,
            "rho": rounded(self.rho),
            "gamma": rounded(self.gamma),
            "growth_rate": rounded(self.growth_rate),
            "constant_c": rounded(self.constant_c),
            "diagnostics": {
                "zeta_at_gamma": mpmath.nstr(self.zeta_at_gamma, digits),
                "zeta_residual": mpmath.nstr(abs(self.zeta_at_gamma - self.rho), 5),
                "zeta_prime_at_gamma": mpmath.nstr(self.zeta_prime_at_gamma, digits),
                "t0": mpmath.nstr(self.t0, digits),
                "u0": mpmath.nstr(self.u0, digits),
                "u1": mpmath.nstr(self.u1, digits),
                "t_singularity": mpmath.nstr(self.t_singularity, digits),
            },
            "precise": {
                "rho": mpmath.nstr(self.rho, digits),
                "gamma": mpmath.nstr(self.gamma, digits),
                "growth_rate": mpmath.nstr(self.growth_rate, digits),
                "constant_c": mpmath.nstr(self.constant_c, digits),
            },
        }


def solve_gamma(params, dps: int | None = None):
    """Smallest positive root of ``zeta(z) = rho`` inside the disc of analyticity of ``T``."""
    p = _params(params)
    with mpmath.workdps(dps or DEFAULT_DPS):
        r = rho()
        x_T = T_singularity(p.sigma, p.lam, SCAN_STEP)
        f = lambda x: zeta_real(p.sigma, p.lam, x) - r  # noqa: E731
        try:
            lo, hi = scan_sign_change(f, mpmath.mpf(0), x_T, SCAN_STEP)
        except NoSignChangeError as exc:
            raise DomainError(
                f"zeta(z) = rho has no root below the singularity of T "
                f"(sigma={p.sigma}, lambda={p.lam}): {exc}"
            ) from exc
        gamma = bisect(f, lo, hi)
        if not gamma < x_T:
            raise DomainError(
                f"root of zeta(z) = rho is not strictly inside the disc of T "
                f"(gamma={mpmath.nstr(gamma, 10)}, singularity={mpmath.nstr(x_T, 10)})"
            )
    return +gamma


def u_singular_coefficients(dps: int | None = None):
    """``(u0, u1)`` in ``U(z) = u0 + u1 (rho - z)^(1/2) + O(rho - z)``."""
    with mpmath.workdps(dps or DEFAULT_DPS):
        r = rho()
        dP = -2 - 18 * r - 30 * r**2 - 12 * r**3
        den = 2 * r * (r + 2)
        u0 = (1 + 3 * r + r**2) / den
        u1 = -mpmath.sqrt(-dP) / den
    return +u0, +u1


def zeta_derivative(sigma: int, lam: int, x, dps: int | None = None):
    """``zeta'(x)`` by Richardson-extrapolated central differences."""
    with mpmath.workdps(dps or DEFAULT_DPS):
        d = richardson_derivative(lambda t: zeta_real(sigma, lam, t), x)
    return +d


def zeta_derivative_by_series(sigma: int, lam: int, x, order: int = 200):
    """``zeta'(x)`` from the truncated expansion of ``zeta`` (an independent check)."""
    dz = eta_series(sigma, lam, order).derivative()
    x = mpmath.mpf(x)
    acc = mpmath.mpf(0)
    for c in reversed(dz.coeffs):
        acc = acc * x + c
    return acc


def singularity_report(params, dps: int | None = None) -> SingularityReport:
    p = _params(params)
    dps = dps or DEFAULT_DPS
    with mpmath.workdps(dps):
        r = rho()
        gamma = solve_gamma(p, dps)
        x_T = T_singularity(p.sigma, p.lam, SCAN_STEP)
        g1 = zeta_derivative(p.sigma, p.lam, gamma, dps)
        if g1 == 0:
            raise DomainError("zeta'(gamma) vanishes")
        t0 = T_eval_real(p.sigma, p.lam, gamma) ** 2
        u0, u1 = u_singular_coefficients(dps)
        c = t0 * u1 * mpmath.sqrt(g1 * gamma) / mpmath.gamma(mpmath.mpf(-1) / 2)
        return SingularityReport(
            sigma=p.sigma,
            lam=p.lam,
            rho=r,
            gamma=gamma,
            growth_rate=1 / gamma,
            constant_c=c,
            zeta_at_gamma=zeta_real(p.sigma, p.lam, gamma),
            zeta_prime_at_gamma=g1,
            t0=t0,
            u1=u1,
            u0=u0,
            t_singularity=x_T,
        )


def asymptotic_constant(params, dps: int | None = None):
    return singularity_report(params, dps).constant_c


def asymptotic_estimate(params, s: int, report: SingularityReport | None = None):
    """``c s^(-3/2) gamma^(-s)``."""
    if s < 1:
        raise ValueError("s >= 1 violated")
    rep = report or singularity_report(params)
    with mpmath.workdps(max(mpmath.mp.dps, 30)):
        return rep.constant_c * mpmath.mpf(s) ** mpmath.mpf(-1.5) * rep.growth_rate**s


def compare_table(params, s_max: int) -> list[tuple[int, int, mpmath.mpf, mpmath.mpf]]:
    """Rows ``(s, exact, estimate, exact / estimate)`` for ``s = 1..s_max``."""
    p = _params(params)
    if not 1 <= s_max <= 2000:
        raise ValueError("1 <= s_max <= 2000 violated")
    rep = singularity_report(p)
    exact = joint_by_recurrence(p.sigma, s_max, p.lam)
    rows = []
    with mpmath.workdps(30):
        for s in range(1, s_max + 1):
            est = asymptotic_estimate(p, s, rep)
            rows.append((s, exact[s], est, mpmath.mpf(exact[s]) / est))
    return rows


def growth_rate_grid(sigmas, lams, dps: int | None = None) -> dict:
    """``{(sigma, lam): SingularityReport or None}``; ``None`` marks cells with lam > sigma + 1."""
    out = {}
    for lam in lams:
        for sigma in sigmas:
            try:
                out[(sigma, lam)] = singularity_report((sigma, lam), dps)
            except NotApplicableError:
                out[(sigma, lam)] = None
    return out

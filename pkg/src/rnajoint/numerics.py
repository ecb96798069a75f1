"""Derivative-free root bracketing and numerical differentiation on mpmath reals."""

from __future__ import annotations

import mpmath

__all__ = ["NoSignChangeError", "scan_sign_change", "bisect", "richardson_derivative"]


class NoSignChangeError(ValueError):
    pass


def scan_sign_change(f, lo, hi, step):
    """First subinterval ``[a, a + step]`` of ``[lo, hi]`` on which ``f`` changes sign.

    Points where ``f`` raises :class:`ValueError` or :class:`ZeroDivisionError`
    end the scan: the function has left its domain without a sign change.
    """
    step = mpmath.mpf(step)
    a = mpmath.mpf(lo)
    fa = f(a)
    if fa == 0:
        return a, a
    k = 1
    while True:
        b = min(mpmath.mpf(lo) + k * step, mpmath.mpf(hi))
        try:
            fb = f(b)
        except (ValueError, ZeroDivisionError) as exc:
            raise NoSignChangeError(f"left the domain at x={mpmath.nstr(b, 8)}: {exc}") from exc
        if fb == 0 or (fa < 0) != (fb < 0):
            return a, b
        if b >= hi:
            raise NoSignChangeError(f"no sign change on [{lo}, {hi}]")
        a, fa = b, fb
        k += 1


def bisect(f, lo, hi, tol=None):
    """Bisection on a sign-changing bracket down to width ``tol``.

    ``tol`` defaults to ``10**(-dps + 5)`` at the current working precision.
    """
    lo, hi = mpmath.mpf(lo), mpmath.mpf(hi)
    if tol is None:
        tol = mpmath.mpf(10) ** (-mpmath.mp.dps + 5)
    flo, fhi = f(lo), f(hi)
    if flo == 0:
        return lo
    if fhi == 0:
        return hi
    if (flo < 0) == (fhi < 0):
        raise NoSignChangeError("bracket endpoints have the same sign")
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if mid == lo or mid == hi:
            break
        fm = f(mid)
        if fm == 0:
            return mid
        if (fm < 0) == (flo < 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return (lo + hi) / 2


def richardson_derivative(f, x, h=None, levels=3):
    """Central-difference derivative with Richardson extrapolation.

    Uses step sizes ``h, h/2, ..., h/2**(levels-1)`` and eliminates the
    leading ``h^2, h^4, ...`` error terms.
    """
    x = mpmath.mpf(x)
    if h is None:
        h = mpmath.mpf(10) ** (-mpmath.mp.dps // 6)
    table = []
    for k in range(levels):
        hk = h / 2**k
        table.append([(f(x + hk) - f(x - hk)) / (2 * hk)])
    for j in range(1, levels):
        factor = mpmath.mpf(4) ** j
        for k in range(j, levels):
            prev, cur = table[k - 1][j - 1], table[k][j - 1]
            table[k].append((factor * cur - prev) / (factor - 1))
    return table[-1][-1]

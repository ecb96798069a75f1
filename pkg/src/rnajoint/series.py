"""Truncated power series with exact rational coefficients.

Two containers are provided: :class:`UnivariateSeries` (one variable, truncated
at a fixed order) and :class:`TrivariateSeries` (three variables ``x, y, z``
truncated to a box ``n <= N, m <= M, h <= H``).  Coefficients are Python
``int`` whenever the value is integral and :class:`fractions.Fraction`
otherwise, so arithmetic is exact and integer-valued generating functions stay
on the fast ``int`` path.

Both containers are immutable.  The ``ps_*`` / ``tps_*`` functions are the
primary interface; the arithmetic operators delegate to them.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "SeriesError",
    "OrderMismatchError",
    "ValuationError",
    "BranchError",
    "CompositionError",
    "RootSelectionError",
    "DegeneracyError",
    "UnivariateSeries",
    "TrivariateSeries",
    "ps_add",
    "ps_sub",
    "ps_mul",
    "ps_div",
    "ps_sqrt",
    "ps_compose",
    "ps_seq",
    "ps_solve_quadratic",
    "tps_add",
    "tps_sub",
    "tps_mul",
    "tps_div",
    "tps_seq",
    "tps_solve_quadratic",
    "rational_to_str",
    "rational_from_str",
]

_MAX_NEWTON_STEPS = 64


class SeriesError(ValueError):
    """Base class for power-series errors."""


class OrderMismatchError(SeriesError):
    pass


class ValuationError(SeriesError):
    pass


class BranchError(SeriesError):
    pass


class CompositionError(SeriesError):
    pass


class RootSelectionError(SeriesError):
    pass


class DegeneracyError(SeriesError):
    pass


def _q(x):
    """Normalise a rational scalar: integral values become ``int``."""
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, Rational):
        return _q(Fraction(x.numerator, x.denominator))
    raise TypeError(f"coefficients must be exact rationals, got {type(x).__name__}")


def _qdiv(a, b):
    if isinstance(a, int) and isinstance(b, int) and a % b == 0:
        return a // b
    return _q(Fraction(a) / b)


def _normalise_array(arr: np.ndarray) -> np.ndarray:
    flat = arr.reshape(-1)
    for k, v in enumerate(flat):
        if not isinstance(v, int):
            flat[k] = _q(v)
    return arr


def rational_to_str(x) -> str:
    x = _q(x)
    return str(x)


def rational_from_str(s: str):
    return _q(Fraction(s))


# --------------------------------------------------------------------------
# univariate
# --------------------------------------------------------------------------


class UnivariateSeries:
    """Power series ``sum c_k z^k`` known for ``k = 0..order``."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable, order: int | None = None):
        c = [_q(v) for v in coeffs]
        if order is None:
            order = len(c) - 1
        if order < 0:
            raise ValueError("order must be >= 0")
        if len(c) > order + 1:
            c = c[: order + 1]
        c.extend([0] * (order + 1 - len(c)))
        arr = np.empty(order + 1, dtype=object)
        arr[:] = c
        self._c = arr

    @classmethod
    def _wrap(cls, arr: np.ndarray) -> "UnivariateSeries":
        obj = cls.__new__(cls)
        obj._c = _normalise_array(arr)
        return obj

    @classmethod
    def zero(cls, order: int) -> "UnivariateSeries":
        return cls([], order)

    @classmethod
    def one(cls, order: int) -> "UnivariateSeries":
        return cls([1], order)

    @classmethod
    def monomial(cls, k: int, order: int, coeff=1) -> "UnivariateSeries":
        c = [0] * (order + 1)
        if k <= order:
            c[k] = coeff
        return cls(c, order)

    @classmethod
    def variable(cls, order: int) -> "UnivariateSeries":
        return cls.monomial(1, order)

    @property
    def order(self) -> int:
        return len(self._c) - 1

    @property
    def coeffs(self) -> list:
        return list(self._c)

    def __getitem__(self, k):
        return self._c[k]

    def __len__(self) -> int:
        return len(self._c)

    def __iter__(self):
        return iter(self._c)

    def valuation(self) -> int | None:
        """Index of the first nonzero coefficient, ``None`` for the zero series."""
        for k, v in enumerate(self._c):
            if v != 0:
                return k
        return None

    def is_zero(self) -> bool:
        return self.valuation() is None

    def truncate(self, order: int) -> "UnivariateSeries":
        if order > self.order:
            raise OrderMismatchError(f"cannot extend order {self.order} to {order}")
        return UnivariateSeries._wrap(self._c[: order + 1].copy())

    def shift(self, k: int) -> "UnivariateSeries":
        """Multiply by ``z**k`` (truncating)."""
        arr = np.zeros(self.order + 1, dtype=object)
        if k <= self.order:
            arr[k:] = self._c[: self.order + 1 - k]
        return UnivariateSeries._wrap(arr)

    def evaluate(self, x):
        """Horner evaluation of the truncated polynomial at ``x``."""
        acc = 0
        for c in reversed(self._c):
            acc = acc * x + c
        return acc

    def derivative(self) -> "UnivariateSeries":
        """Formal derivative; the result has order ``order - 1``."""
        if self.order == 0:
            return UnivariateSeries([0], 0)
        return UnivariateSeries([k * self._c[k] for k in range(1, self.order + 1)])

    def to_json(self) -> list[str]:
        return [rational_to_str(v) for v in self._c]

    @classmethod
    def from_json(cls, data: Sequence[str]) -> "UnivariateSeries":
        return cls([rational_from_str(s) for s in data])

    def __eq__(self, other):
        if not isinstance(other, UnivariateSeries):
            return NotImplemented
        return self.order == other.order and all(a == b for a, b in zip(self._c, other._c))

    def __hash__(self):
        return hash(tuple(self._c))

    def __repr__(self):
        return f"UnivariateSeries({list(self._c)!r})"

    def _coerce(self, other) -> "UnivariateSeries":
        if isinstance(other, UnivariateSeries):
            return other
        return UnivariateSeries([other], self.order)

    def __add__(self, other):
        return ps_add(self, self._coerce(other))

    __radd__ = __add__

    def __sub__(self, other):
        return ps_sub(self, self._coerce(other))

    def __rsub__(self, other):
        return ps_sub(self._coerce(other), self)

    def __neg__(self):
        return UnivariateSeries._wrap(-self._c)

    def __mul__(self, other):
        if isinstance(other, UnivariateSeries):
            return ps_mul(self, other)
        return UnivariateSeries._wrap(self._c * _q(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, UnivariateSeries):
            return ps_div(self, other)
        other = _q(other)
        return UnivariateSeries._wrap(np.array([_qdiv(v, other) for v in self._c], dtype=object))

    def __rtruediv__(self, other):
        return ps_div(self._coerce(other), self)

    def __pow__(self, k: int):
        if k < 0:
            return ps_div(UnivariateSeries.one(self.order), self**-k)
        result = UnivariateSeries.one(self.order)
        base = self
        while k:
            if k & 1:
                result = ps_mul(result, base)
            k >>= 1
            if k:
                base = ps_mul(base, base)
        return result


def _check_orders(a: UnivariateSeries, b: UnivariateSeries) -> None:
    if a.order != b.order:
        raise OrderMismatchError(f"series orders differ: {a.order} != {b.order}")


def ps_add(a: UnivariateSeries, b: UnivariateSeries) -> UnivariateSeries:
    _check_orders(a, b)
    return UnivariateSeries._wrap(a._c + b._c)


def ps_sub(a: UnivariateSeries, b: UnivariateSeries) -> UnivariateSeries:
    _check_orders(a, b)
    return UnivariateSeries._wrap(a._c - b._c)


def ps_mul(a: UnivariateSeries, b: UnivariateSeries) -> UnivariateSeries:
    """Cauchy product truncated at the common order."""
    _check_orders(a, b)
    n = a.order + 1
    return UnivariateSeries._wrap(np.convolve(a._c, b._c)[:n].copy())


def _inverse(b: UnivariateSeries) -> UnivariateSeries:
    b0 = b[0]
    n = b.order + 1
    out = np.zeros(n, dtype=object)
    out[0] = _qdiv(1, b0)
    bc = b._c
    for k in range(1, n):
        s = np.dot(bc[1 : k + 1], out[k - 1 :: -1][:k])
        out[k] = _qdiv(-s, b0)
    return UnivariateSeries._wrap(out)


def ps_div(a: UnivariateSeries, b: UnivariateSeries) -> UnivariateSeries:
    """Quotient ``a / b``.

    If ``b`` has valuation ``v > 0``, ``a`` must have valuation at least ``v``.
    The common factor ``z**v`` is cancelled exactly; the top ``v`` coefficients
    of the quotient are then undetermined, so the result has order
    ``a.order - v``.
    """
    _check_orders(a, b)
    vb = b.valuation()
    if vb is None:
        raise ValuationError("division by the zero series")
    if vb > 0:
        va = a.valuation()
        if va is not None and va < vb:
            raise ValuationError(
                f"dividend valuation {va} is smaller than divisor valuation {vb}"
            )
        order = a.order - vb
        a = UnivariateSeries(a._c[vb:], order)
        b = UnivariateSeries(b._c[vb:], order)
    return ps_mul(a, _inverse(b))


def ps_sqrt(a: UnivariateSeries) -> UnivariateSeries:
    """Square root with positive constant term."""
    a0 = Fraction(a[0])
    if a0 == 0:
        raise BranchError("square root of a series with zero constant term is unsupported")
    if a0 < 0:
        raise BranchError(f"constant term {a0} is negative")
    rn, rd = math.isqrt(a0.numerator), math.isqrt(a0.denominator)
    if rn * rn != a0.numerator or rd * rd != a0.denominator:
        raise BranchError(f"constant term {a0} is not the square of a rational")
    n = a.order + 1
    r = np.zeros(n, dtype=object)
    r[0] = _q(Fraction(rn, rd))
    two_r0 = 2 * r[0]
    for k in range(1, n):
        s = np.dot(r[1:k], r[k - 1 : 0 : -1]) if k > 1 else 0
        r[k] = _qdiv(a[k] - s, two_r0)
    return UnivariateSeries._wrap(r)


def ps_compose(outer: UnivariateSeries, inner: UnivariateSeries) -> UnivariateSeries:
    """``outer(inner(z))`` by Horner's scheme, truncated at ``outer.order``."""
    if inner.order < outer.order:
        raise OrderMismatchError("inner series has lower order than outer series")
    if inner[0] != 0:
        raise CompositionError("inner series must have zero constant term")
    inner = inner.truncate(outer.order)
    acc = UnivariateSeries.zero(outer.order)
    for c in reversed(outer.coeffs):
        acc = ps_mul(acc, inner) + c
    return acc


def ps_seq(a: UnivariateSeries) -> UnivariateSeries:
    """``1 / (1 - a)``: the sequence construction."""
    if a[0] != 0:
        raise SeriesError("sequence construction needs a series with zero constant term")
    return ps_div(UnivariateSeries.one(a.order), UnivariateSeries.one(a.order) - a)


def _quadratic_start(A0, B0, C0, f0):
    f0 = _q(f0)
    if A0 * f0 * f0 + B0 * f0 + C0 != 0:
        raise RootSelectionError(f"f0={f0} does not solve the constant-term equation")
    d0 = 2 * A0 * f0 + B0
    if d0 == 0:
        raise DegeneracyError("derivative of the quadratic vanishes at f0")
    return f0


def ps_solve_quadratic(A, B, C, f0) -> UnivariateSeries:
    """Power-series root of ``A f^2 + B f + C = 0`` with ``f(0) = f0``.

    Newton iteration with precision doubling: each step doubles the number
    of correct coefficients, working only at the order needed so far.
    """
    _check_orders(A, B)
    _check_orders(A, C)
    f0 = _quadratic_start(A[0], B[0], C[0], f0)
    N = A.order
    f = UnivariateSeries([f0], 0)
    prec = 1  # number of coefficients of f known to be correct
    for _ in range(_MAX_NEWTON_STEPS):
        prec = min(2 * prec, N + 1)
        order = prec - 1
        a, b, c = A.truncate(order), B.truncate(order), C.truncate(order)
        f = UnivariateSeries(f.coeffs, order)
        residual = (a * f + b) * f + c
        if residual.is_zero():
            if prec == N + 1:
                return f
            continue
        f = f - residual * _inverse(2 * a * f + b)
    raise DegeneracyError("Newton iteration did not converge")  # pragma: no cover


def _newton_quadratic(A, B, C, f):
    # the inverse g of 2Af + B is refined alongside f, one Newton step each
    g = _tps_inverse(2 * A * f + B)
    for _ in range(_MAX_NEWTON_STEPS):
        af = A * f
        residual = af * f + B * f + C
        if residual.is_zero():
            return f
        f = f - residual * g
        d = 2 * A * f + B
        g = g * (2 - d * g)
    raise DegeneracyError("Newton iteration did not converge")  # pragma: no cover


# --------------------------------------------------------------------------
# trivariate
# --------------------------------------------------------------------------


class TrivariateSeries:
    """Power series in ``(x, y, z)`` truncated to a box ``(N, M, H)``.

    Coefficients live in a dense object array; ``coeffs`` gives the sparse
    ``{(n, m, h): value}`` view.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs: dict | None, bounds: tuple[int, int, int]):
        N, M, H = bounds
        if min(bounds) < 0:
            raise ValueError("bounds must be >= 0")
        arr = np.zeros((N + 1, M + 1, H + 1), dtype=object)
        for (n, m, h), v in (coeffs or {}).items():
            if n < 0 or m < 0 or h < 0:
                raise ValueError(f"negative exponent in {(n, m, h)}")
            if n <= N and m <= M and h <= H:
                arr[n, m, h] = _q(v)
        self._c = arr

    @classmethod
    def _wrap(cls, arr: np.ndarray) -> "TrivariateSeries":
        obj = cls.__new__(cls)
        obj._c = _normalise_array(arr)
        return obj

    @classmethod
    def constant(cls, value, bounds) -> "TrivariateSeries":
        return cls({(0, 0, 0): value}, bounds)

    @classmethod
    def monomial(cls, exps, bounds, coeff=1) -> "TrivariateSeries":
        return cls({tuple(exps): coeff}, bounds)

    @classmethod
    def from_univariate(cls, s: UnivariateSeries, axis: int, bounds) -> "TrivariateSeries":
        """Promote a univariate series to a series in ``x`` (0), ``y`` (1) or ``z`` (2)."""
        if s.order < bounds[axis]:
            raise OrderMismatchError(
                f"univariate order {s.order} is below the box bound {bounds[axis]}"
            )
        coeffs = {}
        for k in range(bounds[axis] + 1):
            key = [0, 0, 0]
            key[axis] = k
            coeffs[tuple(key)] = s[k]
        return cls(coeffs, bounds)

    @classmethod
    def from_polynomial(cls, terms: dict, bounds) -> "TrivariateSeries":
        return cls(terms, bounds)

    @property
    def bounds(self) -> tuple[int, int, int]:
        N, M, H = self._c.shape
        return (N - 1, M - 1, H - 1)

    @property
    def coeffs(self) -> dict:
        return {tuple(int(i) for i in idx): self._c[idx] for idx in zip(*np.nonzero(self._c != 0))}

    def __getitem__(self, key):
        n, m, h = key
        N, M, H = self.bounds
        if n > N or m > M or h > H:
            raise IndexError(f"{key} outside bounds {self.bounds}")
        return self._c[n, m, h]

    def array(self) -> np.ndarray:
        return self._c.copy()

    def is_zero(self) -> bool:
        return not np.any(self._c != 0)

    def truncate(self, bounds) -> "TrivariateSeries":
        N, M, H = bounds
        if N > self.bounds[0] or M > self.bounds[1] or H > self.bounds[2]:
            raise OrderMismatchError(f"cannot extend {self.bounds} to {tuple(bounds)}")
        return TrivariateSeries._wrap(self._c[: N + 1, : M + 1, : H + 1].copy())

    def specialize(self) -> UnivariateSeries:
        """Collapse to a univariate series in ``s = n + m`` (with ``z = 1``).

        Only coefficients with ``n + m <= min(N, M)`` are complete in a box, so
        the result is truncated at that order.
        """
        N, M, _ = self.bounds
        order = min(N, M)
        out = [0] * (order + 1)
        for (n, m, _h), v in self.coeffs.items():
            if n + m <= order:
                out[n + m] += v
        return UnivariateSeries(out, order)

    def swap_xy(self) -> "TrivariateSeries":
        return TrivariateSeries._wrap(np.ascontiguousarray(self._c.transpose(1, 0, 2)).copy())

    def to_json(self) -> dict:
        return {
            "bounds": list(self.bounds),
            "coeffs": [[n, m, h, rational_to_str(v)] for (n, m, h), v in sorted(self.coeffs.items())],
        }

    def __eq__(self, other):
        if not isinstance(other, TrivariateSeries):
            return NotImplemented
        return self.bounds == other.bounds and bool(np.all(self._c == other._c))

    def __hash__(self):
        return hash((self.bounds, tuple(sorted(self.coeffs.items()))))

    def __repr__(self):
        return f"TrivariateSeries({self.coeffs!r}, bounds={self.bounds})"

    def _coerce(self, other) -> "TrivariateSeries":
        if isinstance(other, TrivariateSeries):
            return other
        return TrivariateSeries.constant(other, self.bounds)

    def __add__(self, other):
        return tps_add(self, self._coerce(other))

    __radd__ = __add__

    def __sub__(self, other):
        return tps_sub(self, self._coerce(other))

    def __rsub__(self, other):
        return tps_sub(self._coerce(other), self)

    def __neg__(self):
        return TrivariateSeries._wrap(-self._c)

    def __mul__(self, other):
        if isinstance(other, TrivariateSeries):
            return tps_mul(self, other)
        return TrivariateSeries._wrap(self._c * _q(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return tps_div(self, self._coerce(other))

    def __rtruediv__(self, other):
        return tps_div(self._coerce(other), self)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not supported; use tps_div")
        result = TrivariateSeries.constant(1, self.bounds)
        for _ in range(k):
            result = tps_mul(result, self)
        return result


def _check_bounds(a: TrivariateSeries, b: TrivariateSeries) -> None:
    if a.bounds != b.bounds:
        raise OrderMismatchError(f"series bounds differ: {a.bounds} != {b.bounds}")


def tps_add(a: TrivariateSeries, b: TrivariateSeries) -> TrivariateSeries:
    _check_bounds(a, b)
    return TrivariateSeries._wrap(a._c + b._c)


def tps_sub(a: TrivariateSeries, b: TrivariateSeries) -> TrivariateSeries:
    _check_bounds(a, b)
    return TrivariateSeries._wrap(a._c - b._c)


def tps_mul(a: TrivariateSeries, b: TrivariateSeries) -> TrivariateSeries:
    """Product truncated independently in each variable."""
    _check_bounds(a, b)
    N, M, H = a.bounds
    # loop over the sparser operand
    if np.count_nonzero(a._c != 0) > np.count_nonzero(b._c != 0):
        a, b = b, a
    out = np.zeros(a._c.shape, dtype=object)
    bc = b._c
    for i, j, k in zip(*np.nonzero(a._c != 0)):
        out[i:, j:, k:] += a._c[i, j, k] * bc[: N + 1 - i, : M + 1 - j, : H + 1 - k]
    return TrivariateSeries._wrap(out)


def _tps_inverse(b: TrivariateSeries) -> TrivariateSeries:
    b0 = b._c[0, 0, 0]
    if b0 == 0:
        raise ValuationError("series with zero constant term is not invertible")
    g = TrivariateSeries.constant(_qdiv(1, b0), b.bounds)
    for _ in range(_MAX_NEWTON_STEPS):
        err = 1 - b * g
        if err.is_zero():
            return g
        g = g + g * err
    raise DegeneracyError("inverse iteration did not converge")  # pragma: no cover


def tps_div(a: TrivariateSeries, b: TrivariateSeries) -> TrivariateSeries:
    """Quotient ``a / b``; ``b`` must have a nonzero constant term."""
    _check_bounds(a, b)
    return tps_mul(a, _tps_inverse(b))


def tps_seq(a: TrivariateSeries) -> TrivariateSeries:
    if a._c[0, 0, 0] != 0:
        raise SeriesError("sequence construction needs a series with zero constant term")
    one = TrivariateSeries.constant(1, a.bounds)
    return tps_div(one, one - a)


def tps_solve_quadratic(A, B, C, f0) -> TrivariateSeries:
    """Trivariate analogue of :func:`ps_solve_quadratic`."""
    _check_bounds(A, B)
    _check_bounds(A, C)
    f0 = _quadratic_start(A._c[0, 0, 0], B._c[0, 0, 0], C._c[0, 0, 0], f0)
    return _newton_quadratic(A, B, C, TrivariateSeries.constant(f0, A.bounds))

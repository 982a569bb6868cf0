"""Truncated power series over the complex numbers.

A :class:`TruncatedSeries` of order ``N`` holds the coefficients of
``1, z, ..., z**N``; everything above ``z**N`` is unknown, not zero.  All
operations work modulo ``z**(N+1)`` and never look past index ``N``.

    >>> k = divide(TruncatedSeries([0, 1, 0, 0, 0]), TruncatedSeries([1, -2, 1, 0, 0]))
    >>> k.coeffs.real
    array([0., 1., 2., 3., 4.])

The logarithmic coefficients of a normalized ``f(z) = z + a2 z**2 + ...``
are read off ``log(f(z)/z) = 2 * sum(gamma_n z**n)``.  Dividing by ``z`` costs
one order, so a series exact to order ``N`` determines ``gamma_1..gamma_{N-1}``
and nothing more; :func:`log_coefficients` reports exactly those.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

__all__ = [
    "DEFAULT_ORDER",
    "SeriesError",
    "TruncatedSeries",
    "LogCoefficients",
    "multiply",
    "divide",
    "derivative",
    "integrate_from_zero",
    "log1",
    "exp1",
    "sqrt1",
    "log_coefficients",
    "gamma_from_a",
]

DEFAULT_ORDER = 32


class SeriesError(ValueError):
    """Raised when a series operation is applied outside its domain."""


@dataclass(frozen=True)
class TruncatedSeries:
    """Power series ``sum(coeffs[k] z**k)`` known up to ``z**order``."""

    coeffs: np.ndarray

    def __init__(self, coeffs, order: int | None = None):
        c = np.asarray(coeffs, dtype=complex).ravel()
        if order is not None:
            if order < 0:
                raise SeriesError("order must be nonnegative")
            if c.size < order + 1:
                c = np.concatenate([c, np.zeros(order + 1 - c.size, dtype=complex)])
            else:
                c = c[: order + 1]
        if c.size == 0:
            raise SeriesError("a series needs at least one coefficient")
        c = c.copy()
        c.flags.writeable = False
        object.__setattr__(self, "coeffs", c)

    @property
    def order(self) -> int:
        return self.coeffs.size - 1

    @classmethod
    def zero(cls, order: int) -> "TruncatedSeries":
        return cls(np.zeros(order + 1, dtype=complex))

    @classmethod
    def one(cls, order: int) -> "TruncatedSeries":
        return cls([1.0], order)

    @classmethod
    def identity(cls, order: int) -> "TruncatedSeries":
        """The series ``z``."""
        return cls([0.0, 1.0], order)

    def __getitem__(self, k):
        return self.coeffs[k]

    def __len__(self):
        return self.coeffs.size

    def __repr__(self):
        return f"TruncatedSeries(order={self.order}, coeffs={self.coeffs!r})"

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return np.array_equal(self.coeffs, other.coeffs)

    def __hash__(self):
        return hash(self.coeffs.tobytes())

    def _coerce(self, other) -> "TruncatedSeries":
        if isinstance(other, TruncatedSeries):
            _check_same_order(self, other)
            return other
        return TruncatedSeries([complex(other)], self.order)

    def __add__(self, other):
        return TruncatedSeries(self.coeffs + self._coerce(other).coeffs)

    __radd__ = __add__

    def __sub__(self, other):
        return TruncatedSeries(self.coeffs - self._coerce(other).coeffs)

    def __rsub__(self, other):
        return TruncatedSeries(self._coerce(other).coeffs - self.coeffs)

    def __neg__(self):
        return TruncatedSeries(-self.coeffs)

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            return multiply(self, other)
        return TruncatedSeries(self.coeffs * complex(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, TruncatedSeries):
            return divide(self, other)
        return TruncatedSeries(self.coeffs / complex(other))

    def shift_down(self) -> "TruncatedSeries":
        """Divide by ``z``; requires a vanishing constant term.

        The result has order ``N - 1`` because ``[z**N] (s/z)`` would need
        the unknown coefficient of ``z**(N+1)``.
        """
        if self.coeffs[0] != 0:
            raise SeriesError(f"cannot divide by z: constant term is {self.coeffs[0]}")
        if self.order == 0:
            raise SeriesError("cannot divide an order-0 series by z")
        return TruncatedSeries(self.coeffs[1:])

    def shift_up(self) -> "TruncatedSeries":
        """Multiply by ``z``; the order grows by one."""
        return TruncatedSeries(np.concatenate([[0.0], self.coeffs]))

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise SeriesError(f"cannot extend a series of order {self.order} to {order}")
        return TruncatedSeries(self.coeffs[: order + 1])

    def rotate(self, theta: float) -> "TruncatedSeries":
        """Return the coefficients of ``exp(-i theta) f(exp(i theta) z)``."""
        k = np.arange(self.coeffs.size)
        return TruncatedSeries(self.coeffs * np.exp(1j * theta * (k - 1)))

    def __call__(self, z):
        """Evaluate the truncated polynomial at ``z`` (scalar or array)."""
        z = np.asarray(z, dtype=complex)
        out = np.zeros_like(z)
        for c in self.coeffs[::-1]:
            out = out * z + c
        return out

    def to_json(self) -> str:
        return json.dumps([[float(c.real), float(c.imag)] for c in self.coeffs])

    @classmethod
    def from_json(cls, text: str) -> "TruncatedSeries":
        pairs = json.loads(text)
        return cls([complex(re, im) for re, im in pairs])


@dataclass(frozen=True)
class LogCoefficients:
    """``gammas[k]`` is the logarithmic coefficient ``gamma_k``; index 0 is unused."""

    gammas: np.ndarray

    def __getitem__(self, k):
        if k < 1 or k >= self.gammas.size:
            raise IndexError(f"gamma_{k} is not determined by this truncation")
        return self.gammas[k]

    @property
    def count(self) -> int:
        return self.gammas.size - 1

    def as_array(self) -> np.ndarray:
        """``gamma_1 .. gamma_count`` as an array."""
        return self.gammas[1:].copy()


def _check_same_order(a: TruncatedSeries, b: TruncatedSeries) -> None:
    if a.order != b.order:
        raise SeriesError(f"order mismatch: {a.order} vs {b.order}")


def multiply(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    _check_same_order(a, b)
    return TruncatedSeries(np.convolve(a.coeffs, b.coeffs)[: a.order + 1])


def divide(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Quotient ``a / b`` by forward substitution; ``b`` must be a unit."""
    _check_same_order(a, b)
    b0 = b.coeffs[0]
    if b0 == 0:
        raise SeriesError("non-unit divisor")
    n = a.order + 1
    bc = b.coeffs
    q = np.zeros(n, dtype=complex)
    for k in range(n):
        # sum_{j=1..k} b_j q_{k-j}
        q[k] = (a.coeffs[k] - np.dot(bc[1 : k + 1], q[k - 1 :: -1][:k])) / b0
    return TruncatedSeries(q)


def derivative(a: TruncatedSeries) -> TruncatedSeries:
    """Termwise derivative; the top coefficient becomes 0 (it is unknown)."""
    k = np.arange(1, a.order + 1)
    return TruncatedSeries(np.concatenate([a.coeffs[1:] * k, [0.0]]))


def integrate_from_zero(a: TruncatedSeries) -> TruncatedSeries:
    """Antiderivative vanishing at 0, kept at the same order (drops ``a[N]``)."""
    k = np.arange(1, a.order + 1)
    return TruncatedSeries(np.concatenate([[0.0], a.coeffs[:-1] / k]))


def exp1(s: TruncatedSeries) -> TruncatedSeries:
    """``exp(s)`` for ``s(0) = 0`` via ``k E_k = sum_j j s_j E_{k-j}``."""
    if s.coeffs[0] != 0:
        raise SeriesError(f"exp1 needs constant term 0, got {s.coeffs[0]}")
    n = s.order + 1
    js = np.arange(n) * s.coeffs
    e = np.zeros(n, dtype=complex)
    e[0] = 1.0
    for k in range(1, n):
        e[k] = np.dot(js[1 : k + 1], e[k - 1 :: -1][:k]) / k
    return TruncatedSeries(e)


def log1(s: TruncatedSeries) -> TruncatedSeries:
    """``log(s)`` for ``s(0) = 1``, from ``L' = s'/s`` and ``L(0) = 0``.

    Solved coefficientwise as ``k L_k = k s_k - sum_{j<k} j L_j s_{k-j}``,
    which uses every known coefficient of ``s`` (no top-order loss).
    """
    if s.coeffs[0] != 1:
        raise SeriesError(f"log of non-unit: constant term is {s.coeffs[0]}")
    n = s.order + 1
    sc = s.coeffs
    jl = np.zeros(n, dtype=complex)  # j * L_j
    for k in range(1, n):
        jl[k] = k * sc[k] - np.dot(jl[1:k], sc[k - 1 : 0 : -1])
    k = np.arange(n)
    k[0] = 1
    out = jl / k
    return TruncatedSeries(out)


def sqrt1(s: TruncatedSeries) -> TruncatedSeries:
    """Principal square root with ``Q(0) = 1``; needs ``s(0) = 1``."""
    if s.coeffs[0] != 1:
        raise SeriesError(f"sqrt1 needs constant term 1, got {s.coeffs[0]}")
    n = s.order + 1
    q = np.zeros(n, dtype=complex)
    q[0] = 1.0
    for k in range(1, n):
        q[k] = (s.coeffs[k] - np.dot(q[1:k], q[k - 1 : 0 : -1])) / 2
    return TruncatedSeries(q)


def _check_normalized(f: TruncatedSeries, tol: float = 1e-12) -> None:
    if f.order < 2:
        raise SeriesError("need order >= 2 to extract logarithmic coefficients")
    if abs(f.coeffs[0]) > tol or abs(f.coeffs[1] - 1) > tol:
        raise SeriesError(
            f"series is not normalized (f(0)={f.coeffs[0]}, f'(0)={f.coeffs[1]})"
        )


def log_coefficients(f: TruncatedSeries) -> LogCoefficients:
    """Logarithmic coefficients ``gamma_1 .. gamma_{N-1}`` of ``f = z + ...``.

    Parameters
    ----------
    f : TruncatedSeries
        Normalized series of order ``N >= 2`` with ``f(0) = 0`` and ``f'(0) = 1``.

    Returns
    -------
    LogCoefficients
        ``N - 1`` coefficients; ``gamma_N`` would depend on the unknown
        ``a_{N+1}`` and is not reported.

    Examples
    --------
    >>> f = TruncatedSeries([0, 1, 1, 1, 1])      # z/(1-z)
    >>> log_coefficients(f).as_array().real
    array([0.5       , 0.25      , 0.16666667])
    """
    _check_normalized(f)
    q = TruncatedSeries(np.concatenate([[1.0], f.coeffs[2:]]))
    return LogCoefficients(log1(q).coeffs / 2)


def gamma_from_a(a2, a3, a4):
    """First three logarithmic coefficients from ``a2, a3, a4``."""
    g1 = a2 / 2
    g2 = (a3 - a2 * a2 / 2) / 2
    g3 = (a4 - a2 * a3 + a2**3 / 3) / 2
    return g1, g2, g3


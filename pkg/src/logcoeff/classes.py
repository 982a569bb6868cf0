"""Starlike, odd starlike and close-to-convex functions as truncated series.

The chain used throughout is

    Q (Carathéodory)  ->  h starlike,      z h'/h = Q
    h                 ->  g odd starlike,  g(z) = sqrt(h(z^2))
    g, P              ->  f,               z f' = g P

so every constructed ``f`` is close-to-convex with respect to an odd
starlike function and ``|b_3| <= 1`` holds structurally.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import caratheodory as cara
from .caratheodory import HerglotzAtoms
from .series import (
    DEFAULT_ORDER,
    SeriesError,
    TruncatedSeries,
    derivative,
    exp1,
    integrate_from_zero,
    log_coefficients,
    sqrt1,
)

IDENTITY_TOL = 1e-12


@dataclass(frozen=True)
class OddStarlike:
    g: TruncatedSeries

    def __post_init__(self):
        c = self.g.coeffs
        if abs(c[0]) > 1e-14 or abs(c[1] - 1) > 1e-14:
            raise ValueError("odd starlike g must satisfy g(0)=0, g'(0)=1")
        if np.any(np.abs(c[0::2]) > 1e-14):
            raise ValueError("odd starlike g has nonzero even coefficients")

    @property
    def b3(self) -> complex:
        return complex(self.g.coeffs[3]) if self.g.order >= 3 else 0j

    @property
    def order(self) -> int:
        return self.g.order


@dataclass(frozen=True)
class CloseToConvexFn:
    """``f`` with ``z f' = g P``; ``residual`` is the largest coefficient mismatch."""

    f: TruncatedSeries
    g: OddStarlike
    P: HerglotzAtoms
    residual: float

    @property
    def a(self) -> np.ndarray:
        return self.f.coeffs

    def log_coefficients(self):
        return log_coefficients(self.f)


def starlike_from_herglotz(Q: HerglotzAtoms, order: int = DEFAULT_ORDER) -> TruncatedSeries:
    """Starlike ``h`` with ``z h'(z)/h(z) = Q(z)``.

    ``h = z exp(int_0^z (Q(s) - 1)/s ds)``, exact through ``z**order``.
    """
    if order < 4:
        raise ValueError("order must be >= 4")
    q = cara.to_series(Q, order)
    # (Q-1)/z at the same order; its top entry is never read by the integral
    w = TruncatedSeries(np.concatenate([q.coeffs[1:], [0.0]]))
    e = exp1(integrate_from_zero(w))
    return TruncatedSeries(np.concatenate([[0.0], e.coeffs[:-1]]))


def odd_starlike(h: TruncatedSeries, order: int | None = None) -> OddStarlike:
    """Odd starlike ``g(z) = z sqrt(h(z^2)/z^2)``.

    ``order`` defaults to ``h.order``; ``g`` is exact through ``z**order`` as
    long as ``h.order >= order // 2 + 1``.
    """
    if abs(h.coeffs[0]) > 1e-14 or abs(h.coeffs[1] - 1) > 1e-14:
        raise SeriesError("h must satisfy h(0)=0, h'(0)=1")
    order = h.order if order is None else order
    need = (order - 1) // 2 + 1
    if h.order < need:
        raise SeriesError(f"h of order {h.order} cannot produce g of order {order}")
    s = np.zeros(order, dtype=complex)  # h(z^2)/z^2 to order - 1
    idx = np.arange(0, order, 2)
    s[idx] = h.coeffs[idx // 2 + 1]
    root = sqrt1(TruncatedSeries(s))
    g = np.concatenate([[0.0], root.coeffs])
    g[0::2] = 0.0
    return OddStarlike(TruncatedSeries(g))


def odd_koebe(order: int = DEFAULT_ORDER) -> OddStarlike:
    """``z/(1 - z^2)``, the extremal odd starlike function (``b_3 = 1``)."""
    g = np.zeros(order + 1)
    g[1::2] = 1.0
    return OddStarlike(TruncatedSeries(g))


def odd_with_b3(b3: float, order: int = DEFAULT_ORDER) -> OddStarlike:
    """Odd starlike function with real third coefficient ``b3 in [-1, 1]``.

    Built from ``Q`` with mass ``(1+b3)/2`` at 1 and ``(1-b3)/2`` at -1.
    """
    if not -1 - 1e-12 <= b3 <= 1 + 1e-12:
        raise ValueError(f"b3 must lie in [-1, 1], got {b3}")
    b3 = min(max(b3, -1.0), 1.0)
    Q = HerglotzAtoms([(1 + b3) / 2, (1 - b3) / 2], [1.0, -1.0])
    return odd_starlike(starlike_from_herglotz(Q, order // 2 + 2), order)


def assemble(g: OddStarlike, P: HerglotzAtoms, order: int | None = None) -> CloseToConvexFn:
    """Close-to-convex ``f`` solving ``z f'(z) = g(z) P(z)``."""
    order = g.order if order is None else order
    if order != g.order:
        raise SeriesError(f"order mismatch: g has {g.order}, asked for {order}")
    gp = g.g * cara.to_series(P, order)
    k = np.arange(order + 1)
    k[0] = 1
    a = gp.coeffs / k
    a[0] = 0.0
    f = TruncatedSeries(a)
    zf_prime = derivative(f).shift_up().truncate(order)
    residual = float(np.max(np.abs(zf_prime.coeffs - gp.coeffs)))
    if residual > IDENTITY_TOL * max(1.0, float(np.max(np.abs(gp.coeffs)))):
        raise ArithmeticError(f"z f' = g P fails by {residual}")
    return CloseToConvexFn(f, g, P, residual)


def a234(b3, c1, c2, c3):
    return c1 / 2, (b3 + c2) / 3, (b3 * c1 + c3) / 4


def gamma123_formulas(b3, c1, c2, c3):
    """``gamma_1..gamma_3`` of ``f`` with ``z f' = g P`` from ``b_3`` and ``c_1..c_3``."""
    g1 = c1 / 4
    g2 = b3 / 6 + (c2 - 3 * c1 * c1 / 8) / 6
    g3 = (2 * c1 * b3 + c1**3 - 4 * c1 * c2 + 6 * c3) / 48
    return g1, g2, g3


def log_derivative_grid(g: TruncatedSeries, n_angles: int = 64, n_radii: int = 8,
                        max_radius: float = 0.95) -> np.ndarray:
    """``z g'(z)/g(z)`` on a polar grid (radii ``max_radius * j/n_radii``).

    The truncated polynomial is evaluated directly, so the tail past
    ``g.order`` must be negligible at ``max_radius``.
    """
    radii = max_radius * np.arange(1, n_radii + 1) / n_radii
    angles = 2 * np.pi * np.arange(n_angles) / n_angles
    z = radii[:, None] * np.exp(1j * angles)[None, :]
    dg = derivative(g)
    return z * dg(z) / g(z)


def positivity_spot_check(g: TruncatedSeries, **grid) -> dict:
    """Falsification aid: minimum of ``Re z g'/g`` on a polar grid."""
    vals = log_derivative_grid(g, **grid)
    m = float(vals.real.min())
    return {"min_real": m, "passed": m > 0}

"""Carathéodory functions as finite Herglotz mixtures.

Every function handled here has the form

    P(z) = sum_k w_k (1 + u_k z) / (1 - u_k z),   w_k >= 0, sum w_k = 1, |u_k| = 1,

so ``Re P > 0`` on the unit disk holds by construction and the Taylor
coefficients are simply ``c_n = 2 sum_k w_k u_k**n``.

Besides sampling and coefficient extraction the module carries the three
classical facts the coefficient estimates rest on: ``|c_n| <= 2``, the
Ma-Minda estimate for ``|c_2 - mu c_1**2|`` and the Libera-Zlotkiewicz
parametrization of ``c_2, c_3`` by ``c_1`` and two points ``x, t`` of the
closed disk.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .series import TruncatedSeries

WEIGHT_TOL = 1e-12
POINT_TOL = 1e-12
BOUND_TOL = 1e-9
DEGENERATE_TOL = 1e-12


class DegenerateTripleError(ValueError):
    """``c_1`` sits at the kernel point mass, where ``x`` is undefined."""


@dataclass(frozen=True)
class HerglotzAtoms:
    """Convex combination of boundary kernels ``(1 + u z)/(1 - u z)``."""

    weights: np.ndarray
    points: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float).ravel()
        u = np.asarray(self.points, dtype=complex).ravel()
        if w.size == 0 or w.size != u.size:
            raise ValueError("need the same positive number of weights and points")
        if np.any(w < 0):
            raise ValueError("weights must be nonnegative")
        if abs(w.sum() - 1) > WEIGHT_TOL:
            raise ValueError(f"weights sum to {w.sum()!r}, not 1")
        if np.any(np.abs(np.abs(u) - 1) > POINT_TOL):
            raise ValueError("atom points must lie on the unit circle")
        w.flags.writeable = False
        u.flags.writeable = False
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "points", u)

    @classmethod
    def from_angles(cls, weights, thetas) -> "HerglotzAtoms":
        return cls(weights, np.exp(1j * np.asarray(thetas, dtype=float)))

    def __len__(self):
        return self.weights.size

    def rotate(self, theta: float) -> "HerglotzAtoms":
        """``P(e^{i theta} z)``; multiplies ``c_n`` by ``e^{i n theta}``."""
        return HerglotzAtoms(self.weights, self.points * np.exp(1j * theta))

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)[..., None]
        return np.sum(self.weights * (1 + self.points * z) / (1 - self.points * z), axis=-1)

    def to_dict(self) -> dict:
        return {
            "atoms": [
                {"w": float(w), "theta": float(np.angle(u))}
                for w, u in zip(self.weights, self.points)
            ]
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> "HerglotzAtoms":
        atoms = data["atoms"]
        return cls.from_angles([a["w"] for a in atoms], [a["theta"] for a in atoms])

    @classmethod
    def from_json(cls, text: str) -> "HerglotzAtoms":
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True)
class CoefficientTriple:
    """``c_1, c_2, c_3`` together with recovered Libera-Zlotkiewicz parameters.

    ``t`` is ``None`` when ``|x|`` is at 1 and the ``c_3`` identity no longer
    involves ``t``.
    """

    c1: complex
    c2: complex
    c3: complex
    x: Optional[complex] = None
    t: Optional[complex] = None
    flags: tuple = field(default=())
    t_error: float = 0.0

    @property
    def consistent(self) -> bool:
        return not self.flags


def kernel(point: complex = 1.0) -> HerglotzAtoms:
    """Single kernel ``(1 + u z)/(1 - u z)``; ``u = 1`` gives ``(1+z)/(1-z)``."""
    return HerglotzAtoms([1.0], [point])


def coefficients(P: HerglotzAtoms, n_max: int) -> np.ndarray:
    """``c_1 .. c_{n_max}`` as a complex array (index 0 holds ``c_1``)."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    n = np.arange(1, n_max + 1)[:, None]
    return 2 * np.sum(P.weights * P.points**n, axis=1)


def to_series(P: HerglotzAtoms, order: int) -> TruncatedSeries:
    if order == 0:
        return TruncatedSeries([1.0])
    return TruncatedSeries(np.concatenate([[1.0], coefficients(P, order)]))


def triple(P: HerglotzAtoms) -> CoefficientTriple:
    c1, c2, c3 = coefficients(P, 3)
    return CoefficientTriple(c1, c2, c3)


def normalize_c1(P: HerglotzAtoms) -> HerglotzAtoms:
    """Rotate ``P`` so that ``c_1`` is real and nonnegative."""
    c1 = coefficients(P, 1)[0]
    if c1 == 0:
        return P
    return P.rotate(-np.angle(c1))


def check_coefficient_bound(P: HerglotzAtoms, n_max: int = 10, tol: float = BOUND_TOL) -> dict:
    """``|c_n| <= 2`` for ``n <= n_max``."""
    mods = np.abs(coefficients(P, n_max))
    return {"max_abs": float(mods.max()), "bound": 2.0, "violated": bool(mods.max() > 2 + tol)}


def ma_minda_bound(mu):
    return 2 * np.maximum(1.0, np.abs(2 * np.asarray(mu) - 1))


def check_ma_minda(P: HerglotzAtoms, mu, tol: float = BOUND_TOL) -> dict:
    """Compare ``|c_2 - mu c_1^2|`` against ``2 max(1, |2 mu - 1|)``.

    ``mu`` may be an array; the report then holds arrays and ``violated`` is
    true if any entry fails.
    """
    c1, c2 = coefficients(P, 2)
    mu = np.asarray(mu, dtype=complex)
    value = np.abs(c2 - mu * c1 * c1)
    bound = ma_minda_bound(mu)
    return {
        "value": value,
        "bound": bound,
        "margin": bound - value,
        "violated": bool(np.any(value > bound + tol)),
    }


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise ValueError(message)


def lz_forward(c1: float, x: complex, t: complex, tol: float = 1e-12):
    """``(c_2, c_3)`` from ``c_1 in [0, 2]`` and ``|x|, |t| <= 1``."""
    c1c = complex(c1)
    _require(abs(c1c.imag) <= tol, f"c1 must be real, got {c1}")
    c1 = c1c.real
    _require(-tol <= c1 <= 2 + tol, f"c1 must lie in [0, 2], got {c1}")
    _require(abs(x) <= 1 + tol, f"|x| must be <= 1, got {abs(x)}")
    _require(abs(t) <= 1 + tol, f"|t| must be <= 1, got {abs(t)}")
    d = 4 - c1 * c1
    c2 = (c1 * c1 + x * d) / 2
    c3 = (c1**3 + 2 * d * c1 * x - c1 * d * x * x + 2 * d * (1 - abs(x) ** 2) * t) / 4
    return c2, c3


def lz_recover(c1, c2, c3, tol: float = BOUND_TOL) -> CoefficientTriple:
    """Invert :func:`lz_forward` for a triple with real ``0 <= c_1 < 2``.

    Raises
    ------
    DegenerateTripleError
        If ``c_1 >= 2 - 1e-12``.

    Notes
    -----
    The returned triple carries ``flags`` naming any of ``|x| > 1`` or
    ``|t| > 1`` (beyond ``tol``); a flagged triple cannot come from a
    Carathéodory function.  ``t`` is a quotient by ``1 - |x|^2``, so when
    ``|x|`` is close to 1 rounding in ``c_3`` is amplified; ``t_error`` is a
    first-order bound on that amplification and is added to ``tol`` before
    flagging ``|t|``.
    """
    c1c = complex(c1)
    _require(abs(c1c.imag) <= 1e-12, f"c1 must be real (rotate first), got {c1}")
    c1r = c1c.real
    _require(c1r >= -1e-12, f"c1 must be nonnegative, got {c1r}")
    if c1r >= 2 - DEGENERATE_TOL:
        raise DegenerateTripleError("degenerate: kernel point mass")
    d = 4 - c1r * c1r
    x = (2 * c2 - c1r * c1r) / d
    flags = []
    if abs(x) > 1 + tol:
        flags.append("|x|>1")
    t = None
    if abs(x) < 1 - DEGENERATE_TOL:
        num = 4 * c3 - c1r**3 - 2 * d * c1r * x + c1r * d * x * x
        den = 2 * d * (1 - abs(x) ** 2)
        t = num / den
        scale = 4 * abs(c3) + c1r**3 + 2 * d * c1r * abs(x) + c1r * d * abs(x) ** 2
        t_error = 16 * np.finfo(float).eps * (scale + abs(t) * 2 * d) / den
        if abs(t) > 1 + tol + t_error:
            flags.append("|t|>1")
        return CoefficientTriple(c1r, c2, c3, x=x, t=t, flags=tuple(flags), t_error=t_error)
    return CoefficientTriple(c1r, c2, c3, x=x, t=t, flags=tuple(flags))


def extremal_parameters():
    """``(lambda, alpha)`` of the sharp Carathéodory function for ``gamma_3``."""
    s46 = np.sqrt(46.0)
    return (s46 - 4) / 10, -(1 + s46) / 18


def extremal_P() -> HerglotzAtoms:
    """Three-atom ``P`` whose ``c_1, c_2, c_3`` make the ``gamma_3`` estimate sharp.

    Atoms ``(1 - 2 lam, 1), (lam, u), (lam, conj u)`` with
    ``lam = (sqrt 46 - 4)/10`` and ``u = alpha + i sqrt(1 - alpha^2)``,
    ``alpha = -(1 + sqrt 46)/18``.
    """
    lam, alpha = extremal_parameters()
    u = complex(alpha, np.sqrt(1 - alpha * alpha))
    return HerglotzAtoms([1 - 2 * lam, lam, lam], [1.0, u, u.conjugate()])


def extremal_triple() -> CoefficientTriple:
    """Closed forms of ``c_1, c_2, c_3`` and ``x`` (with ``t = 1``)."""
    s46 = np.sqrt(46.0)
    return CoefficientTriple(
        (8 - s46) / 3,
        (134 - 19 * s46) / 27,
        2 * (721 - 71 * s46) / 243,
        x=(11 - s46) / 75,
        t=1.0,
    )


def sample(rng_seed, atom_count: int = 3) -> HerglotzAtoms:
    """Random ``P``: flat Dirichlet weights, uniform points on the circle.

    ``rng_seed`` is anything :func:`numpy.random.default_rng` accepts, e.g.
    ``(seed, worker_index)`` for per-worker streams.
    """
    if atom_count < 1:
        raise ValueError("atom_count must be >= 1")
    rng = np.random.default_rng(rng_seed)
    return sample_from(rng, atom_count)


def sample_from(rng: np.random.Generator, atom_count: int = 3) -> HerglotzAtoms:
    w = rng.dirichlet(np.ones(atom_count)) if atom_count > 1 else np.ones(1)
    w = w / w.sum()
    theta = rng.uniform(0.0, 2 * np.pi, atom_count)
    return HerglotzAtoms.from_angles(w, theta)

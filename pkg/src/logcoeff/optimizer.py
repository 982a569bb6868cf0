"""The ``48 |gamma_3|`` majorant and its maximization over the box ``R``.

With ``c = c_1 in [0, 2]`` (after rotation), ``x = r e^{i theta}`` and
``p = cos theta`` the estimate reads ``48 |gamma_3| <= F(c, r, p)`` where

    F   = psi(c, r) + |phi(c, r, p)|
    psi = 2c + 3 (4 - c^2)(1 - r^2)
    phi = A + B e^{i theta} - C e^{2 i theta},
          A = c^3/2,  B = c (4 - c^2) r,  C = (3/2) c (4 - c^2) r^2.

``|phi|`` is computed from the expanded modulus

    |phi|^2 = A^2 + B^2 + C^2 + 2 A B p - 2 A C (2 p^2 - 1) - 2 B C p,

which only involves ``p``.  The box is ``R = [0, 2] x [0, 1] x [-1, 1]``
and its six faces are named ``c0, c2, r0, r1, pneg, ppos``.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .sturm import SEXTIC, refine_root

BOX = ((0.0, 2.0), (0.0, 1.0), (-1.0, 1.0))
FACES = ("interior", "c0", "c2", "r0", "r1", "pneg", "ppos")
CLAMP_WINDOW = 1e-12
RADICAND_ABORT = 1e-12
FACE_TOL = 1e-9

SQRT46 = math.sqrt(46.0)
SQRT82 = math.sqrt(82.0)
GLOBAL_MAX = 4.0 / 81.0 * (95.0 + 23.0 * SQRT46)
GAMMA3_BOUND = (95.0 + 23.0 * SQRT46) / 972.0
GLOBAL_ARGMAX = ((8.0 - SQRT46) / 3.0, (11.0 - SQRT46) / 75.0, 1.0)
PNEG_MAX = 4.0 / 81.0 * (41.0 * SQRT82 - 121.0)
PNEG_ARGMAX = ((SQRT82 - 8.0) / 3.0, (SQRT82 - 5.0) / 57.0, -1.0)
R0_MAX = 8.0 + 16.0 * math.sqrt(6.0) / 9.0
R0_ARGMAX_C = 2.0 / 3.0 * (3.0 - math.sqrt(6.0))


class RadicandError(ArithmeticError):
    """``|phi|^2`` came out clearly negative: an implementation fault."""


@dataclass(frozen=True)
class ObjectivePoint:
    c: float
    r: float
    p: float

    def __post_init__(self):
        for name in "crp":
            object.__setattr__(self, name, float(getattr(self, name)))
        for name, v, (lo, hi) in zip("crp", (self.c, self.r, self.p), BOX):
            if not lo - 1e-12 <= v <= hi + 1e-12:
                raise ValueError(f"{name}={v} outside [{lo}, {hi}]")

    def as_tuple(self):
        return (self.c, self.r, self.p)


@dataclass
class MaxReport:
    argmax: ObjectivePoint
    value: float
    face: str
    residuals: dict = field(default_factory=dict)
    closed_form: Optional[float] = None

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "argmax": asdict(self.argmax),
            "face": self.face,
            "closed_form": self.closed_form,
            "residuals": self.residuals,
        }


def psi(c, r):
    c = np.asarray(c, dtype=float)
    r = np.asarray(r, dtype=float)
    return 2 * c + 3 * (4 - c * c) * (1 - r * r)


def _abc(c, r):
    d = 4 - c * c
    return c**3 / 2, c * d * r, 1.5 * c * d * r * r


def phi_radicand(c, r, p):
    c, r, p = (np.asarray(v, dtype=float) for v in (c, r, p))
    A, B, C = _abc(c, r)
    return A * A + B * B + C * C + 2 * A * B * p - 2 * A * C * (2 * p * p - 1) - 2 * B * C * p


def phi_abs(c, r, p):
    """``|phi(c, r, p)|``; tiny negative radicands (>= -1e-12) are clamped to 0."""
    rad = phi_radicand(c, r, p)
    if np.any(rad < -RADICAND_ABORT):
        raise RadicandError(f"negative radicand {np.min(rad)}")
    return np.sqrt(np.where(rad < 0, 0.0, rad))


def F(c, r=None, p=None):
    """Objective ``psi + |phi|``; accepts an :class:`ObjectivePoint` or arrays."""
    if isinstance(c, ObjectivePoint):
        c, r, p = c.as_tuple()
    return psi(c, r) + phi_abs(c, r, p)


def grad_F(c, r, p):
    """Analytic ``(dF/dc, dF/dr, dF/dp)``; ``nan`` where ``phi = 0``."""
    c, r, p = float(c), float(r), float(p)
    d = 4 - c * c
    A, B, C = _abc(c, r)
    Ac, Ar = 1.5 * c * c, 0.0
    Bc, Br = (4 - 3 * c * c) * r, c * d
    Cc, Cr = 1.5 * (4 - 3 * c * c) * r * r, 3 * c * d * r
    q = 2 * p * p - 1

    def dR(Ax, Bx, Cx):
        return (2 * A * Ax + 2 * B * Bx + 2 * C * Cx + 2 * p * (Ax * B + A * Bx)
                - 2 * q * (Ax * C + A * Cx) - 2 * p * (Bx * C + B * Cx))

    Rc, Rr = dR(Ac, Bc, Cc), dR(Ar, Br, Cr)
    Rp = 2 * A * B - 8 * A * C * p - 2 * B * C
    m = float(phi_abs(c, r, p))
    if m == 0.0:
        return (math.nan, math.nan, math.nan)
    return (
        2 - 6 * c * (1 - r * r) + Rc / (2 * m),
        -6 * r * d + Rr / (2 * m),
        Rp / (2 * m),
    )


def eta(c, r, which: int):
    """Printed face polynomials: ``which=1`` for ``p=-1``, ``which=2`` for ``p=1``.

    Both equal ``2 phi`` (signed) on their face, so ``|eta| = 2 |phi|``.
    """
    c = np.asarray(c, dtype=float)
    r = np.asarray(r, dtype=float)
    if which == 1:
        return c**3 * (3 * r * r + 2 * r + 1) - 4 * c * r * (3 * r + 2)
    if which == 2:
        return c**3 * (3 * r * r - 2 * r + 1) - 4 * c * r * (3 * r - 2)
    raise ValueError("which must be 1 or 2")


# -- local refinement ---------------------------------------------------------

def pattern_search(fun: Callable[[np.ndarray], float], x0, lo, hi, step: float,
                   tol: float = 1e-10, max_iter: int = 200_000):
    """Maximize ``fun`` by coordinate moves of size ``step``, halving on stalls.

    Coordinates with ``lo == hi`` stay fixed.  Returns ``(x, fun(x))``.
    """
    x = np.clip(np.asarray(x0, dtype=float), lo, hi)
    lo = np.asarray(lo, dtype=float)
    hi = np.asarray(hi, dtype=float)
    free = np.nonzero(hi > lo)[0]
    fx = fun(x)
    h = float(step)
    it = 0
    while h >= tol and it < max_iter:
        improved = False
        for i in free:
            for s in (1.0, -1.0):
                y = x.copy()
                y[i] = min(max(x[i] + s * h, lo[i]), hi[i])
                if y[i] == x[i]:
                    continue
                fy = fun(y)
                it += 1
                if fy > fx:
                    x, fx = y, fy
                    improved = True
                    break
        if not improved:
            h *= 0.5
    return x, fx


def _scalar_F(x) -> float:
    return float(F(x[0], x[1], x[2]))


# -- faces ----------------------------------------------------------------------

def classify_face(point, tol: float = FACE_TOL) -> str:
    c, r, p = point.as_tuple() if isinstance(point, ObjectivePoint) else point
    checks = (
        ("c0", abs(c) <= tol), ("c2", abs(c - 2) <= tol),
        ("r0", abs(r) <= tol), ("r1", abs(r - 1) <= tol),
        ("pneg", abs(p + 1) <= tol), ("ppos", abs(p - 1) <= tol),
    )
    for name, hit in checks:
        if hit:
            return name
    return "interior"


_FACE_FIX = {"c0": (0, 0.0), "c2": (0, 2.0), "r0": (1, 0.0), "r1": (1, 1.0),
             "pneg": (2, -1.0), "ppos": (2, 1.0)}


def face_box(face: str):
    lo = np.array([b[0] for b in BOX])
    hi = np.array([b[1] for b in BOX])
    i, v = _FACE_FIX[face]
    lo[i] = hi[i] = v
    return lo, hi


def _grid_axes(lo, hi, step):
    axes = []
    for a, b in zip(lo, hi):
        n = 1 if b == a else int(round((b - a) / step)) + 1
        axes.append(np.linspace(a, b, n))
    return axes


def _lex_best(cands):
    """Pick the best ``(value, x)``; values within 1e-12 tie and go lexicographic."""
    top = max(v for v, _ in cands)
    tied = [x for v, x in cands if v >= top - 1e-12]
    x = min(tied, key=lambda t: tuple(t))
    return float(_scalar_F(x)), np.asarray(x)


def _top_cells(axes, n_top: int, threads: int):
    """Grid sweep; returns up to ``n_top`` best ``(value, (c, r, p))`` cells."""
    cs, rs, ps = axes
    block = max(1, 2_000_000 // (rs.size * ps.size))
    starts = range(0, cs.size, block)

    def sweep(i0):
        c = cs[i0 : i0 + block][:, None, None]
        vals = F(c, rs[None, :, None], ps[None, None, :])
        flat = vals.ravel()
        k = min(n_top, flat.size)
        kth = np.partition(-flat, k - 1)[k - 1]
        idx = np.nonzero(-flat <= kth)[0]
        # C order of the flat index is lexicographic in (c, r, p)
        idx = idx[np.lexsort((idx, -flat[idx]))][:k]
        out = []
        for j in idx:
            ic, ir, ip = np.unravel_index(j, vals.shape)
            out.append((float(flat[j]), (float(cs[i0 + ic]), float(rs[ir]), float(ps[ip]))))
        return out

    if threads > 1 and len(starts) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(sweep, starts))
    else:
        parts = [sweep(i) for i in starts]
    cells = [cell for part in parts for cell in part]
    cells.sort(key=lambda vc: (-vc[0], vc[1]))
    return cells[:n_top]


def _refine_cells(cells, lo, hi, step, tol):
    refined = []
    for _, x0 in cells:
        x, fx = pattern_search(_scalar_F, x0, lo, hi, step, tol)
        refined.append((fx, tuple(float(v) for v in x)))
    return _lex_best(refined)


@dataclass
class FaceMax:
    face: str
    closed_form: float
    numeric: float
    argmax: ObjectivePoint
    closed_argmax: Optional[tuple] = None

    def row(self) -> dict:
        return {
            "face": self.face,
            "closed_form": self.closed_form,
            "numeric": self.numeric,
            "c": self.argmax.c,
            "r": self.argmax.r,
            "p": self.argmax.p,
        }


def r1_critical_point(tol: float = 1e-14):
    """Stationary point of ``F(c, 1, p)``: root of the sextic in ``(0, 2)``."""
    c = refine_root(SEXTIC, 0.0, 2.0, tol)
    p = 2 * (c * c - 3) / (3 * c * c)
    return c, p


def face_closed_forms() -> dict:
    """Face maxima in closed form, with the maximizer (``p`` or ``r`` free where noted)."""
    c1, p1 = r1_critical_point()
    return {
        "c0": (12.0, (0.0, 0.0, -1.0)),
        "c2": (8.0, (2.0, 0.0, -1.0)),
        "r0": (R0_MAX, (R0_ARGMAX_C, 0.0, -1.0)),
        "r1": (float(F(c1, 1.0, p1)), (c1, 1.0, p1)),
        "pneg": (PNEG_MAX, PNEG_ARGMAX),
        "ppos": (GLOBAL_MAX, GLOBAL_ARGMAX),
    }


def face_maxima(grid_step: float = 1e-3, refine_tol: float = 1e-10,
                n_top: int = 10, threads: int | None = None) -> list[FaceMax]:
    """Maximum of ``F`` on each face: grid search plus pattern-search refinement."""
    threads = threads or os.cpu_count() or 1
    closed = face_closed_forms()
    out = []
    for face in ("c0", "c2", "r0", "r1", "pneg", "ppos"):
        lo, hi = face_box(face)
        cells = _top_cells(_grid_axes(lo, hi, grid_step), n_top, threads)
        value, x = _refine_cells(cells, lo, hi, grid_step, refine_tol)
        cf, carg = closed[face]
        out.append(FaceMax(face, cf, value, ObjectivePoint(*x), carg))
    return out


def edge_maxima(n: int = 20001, tol: float = 1e-13) -> dict:
    """Extrema of ``F(c, 1, -1)`` and ``F(c, 1, 1)`` over ``c in [0, 2]``.

    For each edge returns the largest stationary maximum in ``(0, 2)``
    (``local``) and the maximum over the closed interval (``global``).  On
    ``p = 1`` the two differ: the stationary maximum is ``16 sqrt3 / 9`` while
    the corner ``c = 2`` gives 8.
    """
    result = {}
    cs = np.linspace(0.0, 2.0, n)
    for label, p in (("pneg", -1.0), ("ppos", 1.0)):
        vals = F(cs, 1.0, p)
        inner = np.nonzero((vals[1:-1] >= vals[:-2]) & (vals[1:-1] >= vals[2:]))[0] + 1
        best = None
        for i in inner:
            x, fx = pattern_search(lambda y: float(F(y[0], 1.0, p)), [cs[i]], [0.0], [2.0],
                                   cs[1] - cs[0], tol)
            if 0.0 < x[0] < 2.0 and (best is None or fx > best[0]):
                best = (fx, float(x[0]))
        g = int(np.argmax(vals))
        gx, gf = pattern_search(lambda y: float(F(y[0], 1.0, p)), [cs[g]], [0.0], [2.0],
                                cs[1] - cs[0], tol)
        result[label] = {
            "local": {"value": best[0], "c": best[1]},
            "global": {"value": float(gf), "c": float(gx[0])},
        }
    return result


EDGE_CLOSED_FORMS = {
    "pneg": (16 * math.sqrt(3) / 3, 2 * math.sqrt(3) / 3),
    "ppos": (16 * math.sqrt(3) / 9, 2 * math.sqrt(3) / 3),
}


# -- stationarity -------------------------------------------------------------

def critical_equations(point) -> dict:
    """Residuals of the stationarity relations that apply at ``point``.

    * ``r = 1`` (``p`` interior): ``p - 2(c^2-3)/(3c^2)``, the scalar relation
      ``2c - 3c^3 + sqrt(6(c^2+2))``, the sextic value, and ``dF/dc, dF/dp``;
    * ``p = +-1``: ``dF/dc, dF/dr``;
    * interior: ``p - (3c^2r^2 + c^2 - 12r^2)/(6c^2 r)``,
      ``(4-c^2) r (sqrt(6(c^2+2)) - 6)`` and the gradient.
    """
    if not isinstance(point, ObjectivePoint):
        point = ObjectivePoint(*point)
    c, r, p = point.as_tuple()
    if c <= 0:
        raise ValueError("degenerate point: singular denominator c^2 (c = 0)")
    g = grad_F(c, r, p)
    face = classify_face(point)
    if abs(r - 1) <= FACE_TOL and abs(abs(p) - 1) > FACE_TOL:
        return {
            "face": "r1",
            "p_relation": p - 2 * (c * c - 3) / (3 * c * c),
            "scalar_relation": 2 * c - 3 * c**3 + math.sqrt(6 * (c * c + 2)),
            "sextic": float(SEXTIC(c)),
            "dF_dc": g[0],
            "dF_dp": g[2],
        }
    if abs(abs(p) - 1) <= FACE_TOL:
        return {"face": "ppos" if p > 0 else "pneg", "dF_dc": g[0], "dF_dr": g[1]}
    if r <= 0:
        raise ValueError("degenerate point: singular denominator r (r = 0)")
    return {
        "face": face,
        "p_relation": p - (3 * c * c * r * r + c * c - 12 * r * r) / (6 * c * c * r),
        "r_relation": (4 - c * c) * r * (math.sqrt(6 * (c * c + 2)) - 6),
        "dF_dc": g[0],
        "dF_dr": g[1],
        "dF_dp": g[2],
    }


def projected_gradient(point, lo=None, hi=None) -> dict:
    """KKT residuals for a maximum: gradient components not blocked by the box."""
    x = np.asarray(point.as_tuple() if isinstance(point, ObjectivePoint) else point)
    lo = np.array([b[0] for b in BOX]) if lo is None else np.asarray(lo)
    hi = np.array([b[1] for b in BOX]) if hi is None else np.asarray(hi)
    g = grad_F(*x)
    out = {}
    for name, xi, gi, a, b in zip(("dF_dc", "dF_dr", "dF_dp"), x, g, lo, hi):
        if a == b:
            res = 0.0
        elif abs(xi - b) <= FACE_TOL:
            res = max(-gi, 0.0)
        elif abs(xi - a) <= FACE_TOL:
            res = max(gi, 0.0)
        else:
            res = abs(gi)
        out[name] = float(res)
    return out


# -- global ---------------------------------------------------------------------

def maximize_global(grid_step: float = 5e-3, refine_tol: float = 1e-10,
                    box: Sequence[tuple] | None = None, n_top: int = 10,
                    threads: int | None = None) -> MaxReport:
    """Grid sweep over the box, then pattern search from the ``n_top`` best cells.

    The result does not depend on ``threads``: partial results are merged in
    grid order and ties are broken lexicographically on ``(c, r, p)``.
    """
    if grid_step > 1e-2:
        raise ValueError("grid_step must be <= 1e-2")
    box = BOX if box is None else box
    lo = np.array([b[0] for b in box], dtype=float)
    hi = np.array([b[1] for b in box], dtype=float)
    if np.any(lo > hi) or np.any(lo < [b[0] for b in BOX]) or np.any(hi > [b[1] for b in BOX]):
        raise ValueError(f"box {box} is not a sub-box of R")
    threads = threads or os.cpu_count() or 1
    cells = _top_cells(_grid_axes(lo, hi, grid_step), n_top, threads)
    value, x = _refine_cells(cells, lo, hi, grid_step, refine_tol)
    pt = ObjectivePoint(*x)
    full = box is BOX or (np.allclose(lo, [b[0] for b in BOX]) and np.allclose(hi, [b[1] for b in BOX]))
    return MaxReport(
        argmax=pt,
        value=value,
        face=classify_face(pt),
        residuals=projected_gradient(pt, lo, hi),
        closed_form=GLOBAL_MAX if full else None,
    )


def gamma3_bound(**kwargs) -> dict:
    """Numerical ``max F / 48`` next to the closed form ``(95 + 23 sqrt46)/972``."""
    rep = maximize_global(**kwargs)
    return {"numeric": rep.value / 48, "closed_form": GAMMA3_BOUND, "report": rep}

"""Seeded ensembles of close-to-convex functions and bound checks.

Each sample draws two Herglotz mixtures from its own generator
``default_rng([seed, index])``: ``Q`` builds the odd starlike ``g`` and ``P``
is the Carathéodory factor of ``z f' = g P``.  The first three logarithmic
coefficients are then computed twice, once from ``b_3, c_1, c_2, c_3`` and
once from the series of ``f``, and compared against the sharp bounds
``1/2, 1/2, (95 + 23 sqrt46)/972``.
"""
from __future__ import annotations

import csv
import io
import math
import time
from dataclasses import dataclass, field
from typing import Iterable, Optional

import numpy as np

from . import caratheodory as cara
from . import classes
from .caratheodory import HerglotzAtoms
from .optimizer import GAMMA3_BOUND, pattern_search
from .series import DEFAULT_ORDER

GAMMA_BOUNDS = (0.5, 0.5, GAMMA3_BOUND)
TOL = 1e-9
AGREEMENT_TOL = 1e-11
N_MU = 20


@dataclass
class SampleRecord:
    seed: int
    index: int
    b3: complex
    c1: complex
    c2: complex
    c3: complex
    gamma_abs: tuple
    margins: tuple
    gammas: np.ndarray = field(repr=False)
    formula_gap: float = 0.0
    P: Optional[HerglotzAtoms] = field(default=None, repr=False)
    params: Optional[dict] = None

    @property
    def violated(self) -> bool:
        return min(self.margins) < -TOL


def evaluate(g: classes.OddStarlike, P: HerglotzAtoms, seed: int = -1, index: int = 0,
             params: dict | None = None) -> SampleRecord:
    """Run both gamma paths for one ``(g, P)`` pair."""
    fn = classes.assemble(g, P)
    gam = fn.log_coefficients().as_array()
    c1, c2, c3 = cara.coefficients(P, 3)
    b3 = g.b3
    formula = np.array(classes.gamma123_formulas(b3, c1, c2, c3))
    gap = float(np.max(np.abs(np.abs(formula) - np.abs(gam[:3]))))
    gabs = tuple(float(abs(v)) for v in gam[:3])
    margins = tuple(b - v for b, v in zip(GAMMA_BOUNDS, gabs))
    return SampleRecord(seed, index, b3, c1, c2, c3, gabs, margins, gam, gap, P, params)


def _draw(seed: int, index: int, order: int, q_atoms: int, p_atoms: int):
    rng = np.random.default_rng([seed, index])
    Q = cara.sample_from(rng, q_atoms)
    P = cara.sample_from(rng, p_atoms)
    h = classes.starlike_from_herglotz(Q, max(order // 2 + 2, 4))
    g = classes.odd_starlike(h, order)
    return g, P, rng


def run_ensemble(n_samples: int, seed: int = 0, order: int = DEFAULT_ORDER,
                 q_atoms: int = 3, p_atoms: int = 3) -> list[SampleRecord]:
    """``n_samples`` independent members of the class, in index order."""
    if n_samples < 1:
        raise ValueError("n_samples must be >= 1")
    out = []
    for i in range(n_samples):
        g, P, _ = _draw(seed, i, order, q_atoms, p_atoms)
        out.append(evaluate(g, P, seed, i))
    return out


def de_branges_margins(gammas, n_max: int = 8) -> np.ndarray:
    """``sum (n-k+1)/k - sum k (n-k+1)|gamma_k|^2`` for ``n = 1..n_max``.

    This is the weighted form, with equality for the Koebe function; dropping
    the factor ``k`` on the left gives a weaker inequality implied by it.
    """
    g2 = np.abs(np.asarray(gammas)[:n_max]) ** 2
    out = np.empty(n_max)
    for n in range(1, n_max + 1):
        k = np.arange(1, n + 1)
        out[n - 1] = np.sum((n - k + 1) / k) - np.sum(k * (n - k + 1) * g2[:n])
    return out


def duren_leung_margin(gammas, k_max: int = 10) -> float:
    """``pi^2/6 - sum_{k <= k_max} |gamma_k|^2``."""
    return math.pi**2 / 6 - float(np.sum(np.abs(np.asarray(gammas)[:k_max]) ** 2))


def classical_checks(records: Iterable, n_branges: int = 8, k_leung: int = 10,
                     tol: float = TOL) -> dict:
    """de Branges partial sums and the ``pi^2/6`` bound over records or gamma arrays."""
    worst_b, worst_l, vb, vl, count = math.inf, math.inf, 0, 0, 0
    for rec in records:
        gam = rec.gammas if isinstance(rec, SampleRecord) else np.asarray(rec)
        if gam.size < max(n_branges, k_leung):
            raise ValueError("series order too low: need gamma_1..gamma_10 (order >= 12)")
        mb = de_branges_margins(gam, n_branges)
        ml = duren_leung_margin(gam, k_leung)
        worst_b = min(worst_b, float(mb.min()))
        worst_l = min(worst_l, ml)
        vb += int(np.any(mb < -tol))
        vl += int(ml < -tol)
        count += 1
    return {
        "count": count,
        "de_branges_violations": vb,
        "de_branges_min_margin": worst_b,
        "duren_leung_violations": vl,
        "duren_leung_min_margin": worst_l,
    }


def _random_mu(rng: np.random.Generator, n: int) -> np.ndarray:
    rad = 2 * np.sqrt(rng.uniform(0, 1, n))
    return rad * np.exp(2j * np.pi * rng.uniform(0, 1, n))


def verify(n_samples: int, seed: int = 0, order: int = DEFAULT_ORDER, q_atoms: int = 3,
           p_atoms: int = 3, n_coeff: int = 10, csv_out=None) -> dict:
    """Ensemble run plus every lemma and classical check; returns a summary.

    ``csv_out`` (path or text stream) receives one row per sample.
    """
    t0 = time.perf_counter()
    tally = {
        "theorem": [0, 0, 0],
        "coefficient_bound": 0,
        "ma_minda": 0,
        "formula_series_disagreement": 0,
    }
    min_margin = [math.inf] * 3
    max_gap = 0.0
    max_c = 0.0
    min_mm = math.inf
    records = []
    for i in range(n_samples):
        g, P, rng = _draw(seed, i, order, q_atoms, p_atoms)
        rec = evaluate(g, P, seed, i)
        records.append(rec)
        for j in range(3):
            min_margin[j] = min(min_margin[j], rec.margins[j])
            tally["theorem"][j] += rec.margins[j] < -TOL
        max_gap = max(max_gap, rec.formula_gap)
        tally["formula_series_disagreement"] += rec.formula_gap > AGREEMENT_TOL
        cb = cara.check_coefficient_bound(P, n_coeff)
        max_c = max(max_c, cb["max_abs"])
        tally["coefficient_bound"] += cb["violated"]
        mm = cara.check_ma_minda(P, _random_mu(rng, N_MU))
        min_mm = min(min_mm, float(mm["margin"].min()))
        tally["ma_minda"] += mm["violated"]
    classic = classical_checks(records) if order >= 12 else None
    if csv_out is not None:
        write_csv(records, csv_out)
    violations = sum(tally["theorem"]) + tally["coefficient_bound"] + tally["ma_minda"]
    violations += tally["formula_series_disagreement"]
    if classic:
        violations += classic["de_branges_violations"] + classic["duren_leung_violations"]
    return {
        "samples": n_samples,
        "seed": seed,
        "order": order,
        "violations": int(violations),
        "theorem_violations": [int(v) for v in tally["theorem"]],
        "min_margins": min_margin,
        "coefficient_bound_violations": int(tally["coefficient_bound"]),
        "max_abs_c": max_c,
        "ma_minda_violations": int(tally["ma_minda"]),
        "ma_minda_min_margin": min_mm,
        "max_formula_series_gap": max_gap,
        "formula_series_disagreements": int(tally["formula_series_disagreement"]),
        "classical": classic,
        "max_abs_gamma": [max(r.gamma_abs[j] for r in records) for j in range(3)],
        "seconds": time.perf_counter() - t0,
    }


CSV_FIELDS = [
    "seed", "index", "b3_re", "b3_im",
    "c1_re", "c1_im", "c2_re", "c2_im", "c3_re", "c3_im",
    "gamma1", "gamma2", "gamma3", "margin1", "margin2", "margin3",
]


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def record_row(rec: SampleRecord) -> list[str]:
    row = [str(rec.seed), str(rec.index)]
    for z in (rec.b3, rec.c1, rec.c2, rec.c3):
        z = complex(z)
        row += [_fmt(z.real), _fmt(z.imag)]
    row += [_fmt(v) for v in rec.gamma_abs]
    row += [_fmt(v) for v in rec.margins]
    return row


def write_csv(records: Iterable[SampleRecord], out) -> None:
    if isinstance(out, (str, bytes)) or hasattr(out, "__fspath__"):
        with open(out, "w", newline="", encoding="utf-8") as fh:
            write_csv(records, fh)
        return
    w = csv.writer(out, lineterminator="\n")
    w.writerow(CSV_FIELDS)
    for rec in records:
        w.writerow(record_row(rec))


def records_to_csv(records: Iterable[SampleRecord]) -> str:
    buf = io.StringIO()
    write_csv(records, buf)
    return buf.getvalue()


# -- near-extremal search -------------------------------------------------------

_PARAM_LO = np.array([0.0, 0.0, -1.0])
_PARAM_HI = np.array([0.5, math.pi, 1.0])


def _family_c(lam: float, angle: float) -> np.ndarray:
    n = np.arange(1, 4)
    return 2 * ((1 - 2 * lam) + 2 * lam * np.cos(n * angle))


def family_gamma3(x) -> float:
    """``|gamma_3|`` for ``P`` with atoms ``(1-2 lam, 1), (lam, e^{+-i angle})``, real ``b_3``."""
    lam, angle, b3 = x
    c1, c2, c3 = _family_c(lam, angle)
    return abs(classes.gamma123_formulas(b3, c1, c2, c3)[2])


def family_member(lam: float, angle: float, b3: float, order: int = 16):
    u = complex(math.cos(angle), math.sin(angle))
    P = HerglotzAtoms([1 - 2 * lam, lam, lam], [1.0, u, u.conjugate()])
    return classes.odd_with_b3(b3, order), P


def extremal_family_parameters() -> np.ndarray:
    lam, alpha = cara.extremal_parameters()
    return np.array([lam, math.acos(alpha), 1.0])


def near_extremal_search(n_restarts: int = 20, seed: int = 0, start=None,
                         spread: float = 0.1, tol: float = 1e-12,
                         order: int = 16) -> SampleRecord:
    """Hill-climb ``|gamma_3|`` over ``(lambda, arg u, b_3)`` from perturbed starts.

    Restart 0 begins at ``start`` (default: the extremal parameters); the
    others add Gaussian noise of size ``spread`` to the extremal parameters.
    The best point is re-evaluated through the full series pipeline.
    """
    rng = np.random.default_rng(seed)
    base = extremal_family_parameters()
    best = None
    for i in range(n_restarts):
        if i == 0:
            x0 = base if start is None else np.asarray(start, dtype=float)
        else:
            x0 = base + spread * rng.standard_normal(3)
        x0 = np.clip(x0, _PARAM_LO, _PARAM_HI)
        x, fx = pattern_search(family_gamma3, x0, _PARAM_LO, _PARAM_HI, 0.05, tol)
        if best is None or fx > best[1]:
            best = (x, fx)
    lam, angle, b3 = (float(v) for v in best[0])
    g, P = family_member(lam, angle, b3, order)
    return evaluate(g, P, seed, -1, params={"lambda": lam, "angle": angle, "b3": b3})

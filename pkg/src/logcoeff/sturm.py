"""Sturm sequences, real-root counting and bisection refinement.

Polynomials are dense, real, in ascending order of degree.  Arithmetic is
double precision with coefficients below ``PRUNE_TOL`` (relative to the
largest coefficient of the same polynomial) treated as zero.

    >>> sextic = RealPolynomial([-12, 0, -2, 0, -12, 0, 9])
    >>> count_roots(sextic, 0, 2)
    1
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

PRUNE_TOL = 1e-14
ENDPOINT_SHIFT = 1e-9


class RootIsolationError(ValueError):
    pass


def _trim(c: np.ndarray) -> np.ndarray:
    c = np.asarray(c, dtype=float).ravel()
    if c.size == 0:
        return np.zeros(1)
    scale = np.max(np.abs(c))
    if scale == 0:
        return np.zeros(1)
    nz = np.nonzero(np.abs(c) > PRUNE_TOL * scale)[0]
    return c[: nz[-1] + 1].copy()


@dataclass(frozen=True)
class RealPolynomial:
    """``sum(coeffs[k] x**k)``; the leading coefficient is nonzero after trimming."""

    coeffs: np.ndarray

    def __init__(self, coeffs):
        c = _trim(coeffs)
        c.flags.writeable = False
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def from_descending(cls, coeffs) -> "RealPolynomial":
        return cls(np.asarray(coeffs, dtype=float)[::-1])

    @property
    def degree(self) -> int:
        if self.coeffs.size == 1 and self.coeffs[0] == 0:
            return -1
        return self.coeffs.size - 1

    def is_zero(self) -> bool:
        return self.degree < 0

    def __call__(self, x):
        return np.polynomial.polynomial.polyval(x, self.coeffs)

    def __neg__(self):
        return RealPolynomial(-self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, RealPolynomial):
            return NotImplemented
        return np.array_equal(self.coeffs, other.coeffs)

    def __hash__(self):
        return hash(self.coeffs.tobytes())

    def derivative(self) -> "RealPolynomial":
        if self.coeffs.size == 1:
            return RealPolynomial([0.0])
        return RealPolynomial(self.coeffs[1:] * np.arange(1, self.coeffs.size))

    def leading(self) -> float:
        return float(self.coeffs[-1])

    def __repr__(self):
        return f"RealPolynomial({self.coeffs.tolist()})"


def remainder(a: RealPolynomial, b: RealPolynomial) -> RealPolynomial:
    """Remainder of ``a`` divided by ``b`` (schoolbook long division)."""
    if b.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    r = a.coeffs.astype(float).copy()
    db = b.degree
    lb = b.leading()
    for k in range(a.degree - db, -1, -1):
        q = r[k + db] / lb
        r[k : k + db + 1] -= q * b.coeffs
        r[k + db] = 0.0
    r = r[:db] if db > 0 else np.zeros(1)
    # cancellation leaves tiny residue; prune relative to the dividend's scale
    scale = max(np.max(np.abs(a.coeffs)), 1.0)
    r[np.abs(r) <= PRUNE_TOL * scale] = 0.0
    return RealPolynomial(r)


def sturm_sequence(p: RealPolynomial) -> list[RealPolynomial]:
    """``p, p', -rem(p_0, p_1), ...`` stopping at a constant or a zero remainder.

    A zero remainder means ``p`` has a repeated root; the sequence then ends
    at ``gcd(p, p')`` and still counts distinct roots.
    """
    if p.degree < 1:
        raise ValueError("Sturm sequence needs degree >= 1")
    seq = [p, p.derivative()]
    while seq[-1].degree > 0:
        r = remainder(seq[-2], seq[-1])
        if r.is_zero():
            break
        seq.append(-r)
    return seq


def sign_variations(values) -> int:
    s = np.sign(np.asarray(values, dtype=float))
    s = s[s != 0]
    return int(np.count_nonzero(s[1:] != s[:-1]))


def _variations_at(seq: list[RealPolynomial], x: float) -> int:
    return sign_variations([q(x) for q in seq])


def count_roots(p: RealPolynomial, a: float, b: float, seq=None) -> int:
    """Number of distinct real roots of ``p`` in the open interval ``(a, b)``.

    An endpoint that is an exact root is moved inward by ``1e-9``.
    """
    if not a < b:
        raise ValueError(f"need a < b, got ({a}, {b})")
    if p(a) == 0:
        a = a + ENDPOINT_SHIFT
    if p(b) == 0:
        b = b - ENDPOINT_SHIFT
    if p(a) == 0 or p(b) == 0 or not a < b:
        raise RootIsolationError("root at endpoint")
    seq = sturm_sequence(p) if seq is None else seq
    return _variations_at(seq, a) - _variations_at(seq, b)


def refine_root(p: RealPolynomial, a: float, b: float, tol: float = 1e-12) -> float:
    """Bisect an isolating interval down to width ``tol``; returns the midpoint.

    Each halving keeps the half whose Sturm count is 1, so roots of even
    multiplicity are handled as well as sign changes.
    """
    seq = sturm_sequence(p)
    n = count_roots(p, a, b, seq)
    if n != 1:
        raise RootIsolationError(f"interval ({a}, {b}) holds {n} roots, need exactly 1")
    while b - a > tol:
        m = 0.5 * (a + b)
        if m <= a or m >= b:
            break
        if p(m) == 0:
            return m
        if count_roots(p, a, m, seq) == 1:
            b = m
        else:
            a = m
    return 0.5 * (a + b)


def isolate_roots(p: RealPolynomial, a: float, b: float, tol: float = 1e-12) -> list[float]:
    """All distinct real roots in ``(a, b)``, each refined to ``tol``."""
    seq = sturm_sequence(p)
    stack = [(a, b)]
    roots = []
    while stack:
        lo, hi = stack.pop()
        n = count_roots(p, lo, hi, seq)
        if n == 0:
            continue
        if n == 1:
            roots.append(refine_root(p, lo, hi, tol))
            continue
        if hi - lo <= tol:
            roots.append(0.5 * (lo + hi))
            continue
        m = 0.5 * (lo + hi)
        if p(m) == 0:
            roots.append(m)
            m_lo, m_hi = m - ENDPOINT_SHIFT * 1e-3, m + ENDPOINT_SHIFT * 1e-3
            stack += [(lo, m_lo), (m_hi, hi)]
        else:
            stack += [(lo, m), (m, hi)]
    return sorted(roots)


SEXTIC = RealPolynomial([-12.0, 0.0, -2.0, 0.0, -12.0, 0.0, 9.0])
"""``9 c^6 - 12 c^4 - 2 c^2 - 12``: squared stationarity condition on the ``|x| = 1`` face."""

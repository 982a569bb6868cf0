import math

import numpy as np
import pytest
import sympy

from logcoeff.sturm import (
    SEXTIC,
    RealPolynomial,
    RootIsolationError,
    count_roots,
    isolate_roots,
    refine_root,
    remainder,
    sturm_sequence,
)


def sign_scan(p, a, b, step=1e-4):
    xs = np.arange(a, b + step / 2, step)
    s = np.sign(p(xs))
    s = s[s != 0]
    return int(np.count_nonzero(s[1:] != s[:-1]))


def test_trim_and_degree():
    p = RealPolynomial([1, 2, 0, 1e-20])
    assert p.degree == 1
    assert RealPolynomial([0, 0]).degree == -1


def test_remainder_matches_numpy(rng):
    for _ in range(30):
        a = RealPolynomial(rng.uniform(-5, 5, 7))
        b = RealPolynomial(rng.uniform(-5, 5, 4))
        _, ref = np.polynomial.polynomial.polydiv(a.coeffs, b.coeffs)
        np.testing.assert_allclose(remainder(a, b).coeffs, RealPolynomial(ref).coeffs, atol=1e-10)


def test_sequence_quadratic():
    seq = sturm_sequence(RealPolynomial([-1, 0, 1]))
    assert [q.coeffs.tolist() for q in seq] == [[-1, 0, 1], [0, 2], [1]]


def test_sequence_sextic_matches_symbolic():
    x = sympy.symbols("x")
    ref = sympy.sturm(9 * x**6 - 12 * x**4 - 2 * x**2 - 12)
    seq = sturm_sequence(SEXTIC)
    assert len(seq) == len(ref) == 7
    for ours, theirs in zip(seq, ref):
        coeffs = np.array([float(c) for c in sympy.Poly(theirs, x).all_coeffs()[::-1]])
        # sympy returns monic members; only positive rescaling is allowed
        np.testing.assert_allclose(ours.coeffs / abs(ours.leading()), coeffs / abs(coeffs[-1]),
                                   rtol=1e-10, atol=1e-12)


def test_sequence_repeated_root_truncates():
    seq = sturm_sequence(RealPolynomial([0, 0, 0, 1]))
    assert len(seq) == 2
    assert count_roots(RealPolynomial([0, 0, 0, 1]), -1, 1) == 1


def test_sequence_needs_degree():
    with pytest.raises(ValueError):
        sturm_sequence(RealPolynomial([3]))


def test_count_sextic():
    assert count_roots(SEXTIC, 0, 2) == 1
    # even polynomial: mirrored root
    assert count_roots(SEXTIC, -2, 2) == 2


def test_count_no_real_roots():
    assert count_roots(RealPolynomial([1, 0, 1]), -3, 3) == 0


def test_count_endpoint_root_is_excluded():
    p = RealPolynomial([-1, 0, 1])
    assert count_roots(p, 1, 3) == 0
    assert count_roots(p, -1, 1) == 0
    assert count_roots(p, -1, 2) == 1


def test_count_bad_interval():
    with pytest.raises(ValueError):
        count_roots(SEXTIC, 1, 1)


def test_count_vs_sign_scan():
    rng = np.random.default_rng(5)
    for _ in range(10):
        p = RealPolynomial(rng.uniform(-5, 5, 6))  # degree 5
        assert count_roots(p, -10, 10) == sign_scan(p, -10, 10)


def test_refine_sextic_root():
    c = refine_root(SEXTIC, 0, 2, 1e-6)
    assert c == pytest.approx(1.3584, abs=5e-4)
    p = 2 * (c * c - 3) / (3 * c * c)
    assert p == pytest.approx(-0.4172, abs=5e-4)


def test_refine_sqrt2():
    assert refine_root(RealPolynomial([-2, 0, 1]), 1, 2, 1e-12) == pytest.approx(math.sqrt(2), abs=1e-12)


def test_refine_requires_single_root():
    with pytest.raises(RootIsolationError):
        refine_root(SEXTIC, -2, 2, 1e-6)
    with pytest.raises(RootIsolationError):
        refine_root(RealPolynomial([1, 0, 1]), -1, 1, 1e-6)


def test_refine_residual_bound():
    rng = np.random.default_rng(8)
    tol = 1e-9
    for _ in range(30):
        p = RealPolynomial(rng.uniform(-5, 5, 5))
        for r in isolate_roots(p, -10, 10, tol):
            dp = p.derivative()
            assert abs(p(r)) <= abs(dp(r)) * tol + 1e-9


def test_isolate_matches_numpy_roots():
    rng = np.random.default_rng(9)
    for _ in range(30):
        c = rng.uniform(-5, 5, 7)
        p = RealPolynomial(c)
        ref = np.roots(c[::-1])
        ref = np.sort(ref[(np.abs(ref.imag) < 1e-9) & (np.abs(ref.real) < 10)].real)
        got = isolate_roots(p, -10, 10, 1e-12)
        np.testing.assert_allclose(got, ref, atol=1e-7)

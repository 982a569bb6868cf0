import io
import math

import numpy as np
import pytest

from logcoeff import caratheodory as cara
from logcoeff import classes, verifier
from logcoeff.optimizer import GAMMA3_BOUND
from logcoeff.series import TruncatedSeries, log_coefficients


def test_ensemble_small_is_sound():
    recs = verifier.run_ensemble(300, seed=7)
    assert [r.index for r in recs] == list(range(300))
    assert not any(r.violated for r in recs)
    assert max(r.formula_gap for r in recs) <= verifier.AGREEMENT_TOL


def test_ensemble_rejects_empty():
    with pytest.raises(ValueError):
        verifier.run_ensemble(0)


def test_ensemble_deterministic():
    a = verifier.records_to_csv(verifier.run_ensemble(50, seed=3))
    b = verifier.records_to_csv(verifier.run_ensemble(50, seed=3))
    c = verifier.records_to_csv(verifier.run_ensemble(50, seed=4))
    assert a == b and a != c
    assert a.splitlines()[0].split(",") == verifier.CSV_FIELDS


def test_sample_prefix_independent_of_count():
    short = verifier.run_ensemble(5, seed=11)
    long = verifier.run_ensemble(20, seed=11)
    assert verifier.records_to_csv(short) == verifier.records_to_csv(long[:5])


def test_extremal_margin_zero():
    rec = verifier.evaluate(classes.odd_koebe(32), cara.extremal_P())
    assert rec.margins[2] == pytest.approx(0, abs=1e-9)
    assert rec.gamma_abs[2] == pytest.approx(GAMMA3_BOUND, abs=1e-9)


def test_koebe_kernel_gamma1_margin_zero():
    rec = verifier.evaluate(classes.odd_koebe(16), cara.kernel())
    assert rec.margins[0] == pytest.approx(0, abs=1e-12)
    assert not rec.violated


def test_classical_checks_koebe_equality():
    n = 16
    koebe = TruncatedSeries(np.arange(n + 1, dtype=float))
    gam = log_coefficients(koebe).as_array()
    np.testing.assert_allclose(verifier.de_branges_margins(gam, 8), 0, atol=1e-9)
    rep = verifier.classical_checks([gam])
    assert rep["de_branges_violations"] == 0 and rep["duren_leung_violations"] == 0
    k = np.arange(1, 11)
    assert rep["duren_leung_min_margin"] == pytest.approx(math.pi**2 / 6 - np.sum(1 / k**2))


def test_weighted_form_implies_unweighted():
    rng = np.random.default_rng(0)
    for _ in range(200):
        gam = rng.normal(size=8) * 0.4
        n = 8
        k = np.arange(1, n + 1)
        plain = np.sum((n - k + 1) / k) - np.sum((n - k + 1) * gam**2)
        assert plain >= verifier.de_branges_margins(gam, n)[-1] - 1e-15


def test_classical_checks_identity():
    gam = log_coefficients(TruncatedSeries.identity(16)).as_array()
    assert np.all(gam == 0)
    rep = verifier.classical_checks([gam])
    assert rep["duren_leung_min_margin"] == pytest.approx(math.pi**2 / 6)
    assert rep["de_branges_min_margin"] == pytest.approx(1.0)


def test_classical_checks_detects_violation_and_order():
    gam = np.zeros(12, dtype=complex)
    gam[0] = 1.5
    assert verifier.de_branges_margins(gam, 1)[0] == pytest.approx(1 - 2.25)
    rep = verifier.classical_checks([gam])
    assert rep["de_branges_violations"] == 1 and rep["duren_leung_violations"] == 1
    with pytest.raises(ValueError, match="order"):
        verifier.classical_checks([np.zeros(5)])


def test_verify_summary():
    buf = io.StringIO()
    s = verifier.verify(200, seed=5, csv_out=buf)
    assert s["violations"] == 0
    assert s["theorem_violations"] == [0, 0, 0]
    assert all(m >= -verifier.TOL for m in s["min_margins"])
    assert s["max_abs_c"] <= 2 + 1e-12
    assert s["ma_minda_min_margin"] >= 0
    assert s["classical"]["count"] == 200
    assert len(buf.getvalue().splitlines()) == 201


def test_verify_low_order_skips_classical():
    s = verifier.verify(10, seed=0, order=8)
    assert s["classical"] is None and s["violations"] == 0


def test_write_csv_to_path(tmp_path):
    recs = verifier.run_ensemble(3, seed=1)
    path = tmp_path / "out.csv"
    verifier.write_csv(recs, path)
    assert path.read_text(encoding="utf-8") == verifier.records_to_csv(recs)


def test_family_gamma3_at_extremal():
    x = verifier.extremal_family_parameters()
    assert verifier.family_gamma3(x) == pytest.approx(GAMMA3_BOUND, abs=1e-12)


def test_near_extremal_from_exact_start():
    rec = verifier.near_extremal_search(n_restarts=1)
    assert rec.gamma_abs[2] == pytest.approx(GAMMA3_BOUND, abs=1e-10)
    assert rec.margins[2] >= -1e-9


def test_near_extremal_from_far_start():
    rec = verifier.near_extremal_search(n_restarts=1, start=(0.5, math.pi / 2, 0.0))
    assert rec.gamma_abs[2] <= GAMMA3_BOUND + 1e-9


def test_near_extremal_many_restarts():
    rec = verifier.near_extremal_search(n_restarts=100, seed=2)
    assert rec.gamma_abs[2] == pytest.approx(GAMMA3_BOUND, abs=1e-6)
    assert rec.gamma_abs[2] <= GAMMA3_BOUND + 1e-9
    assert set(rec.params) == {"lambda", "angle", "b3"}

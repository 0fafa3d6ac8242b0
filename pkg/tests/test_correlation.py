import cmath
import math

import numpy as np
import pytest

from sidelcorr.correlation import (
    autocorrelation,
    correlate,
    full_correlation,
    sidelnikov_bound_check,
    sidelnikov_upper_bound,
    welch_bound,
)
from sidelcorr.errors import BadMultiplier, DegenerateFamily, ShapeMismatch
from sidelcorr.gf import build_field
from sidelcorr.sequences import Sequence, constant_multiple, sidelnikov


def _naive(a, b, tau):
    v, M = a.length, a.M
    return sum(cmath.exp(2j * math.pi * (a.digits[t] - b.digits[(t + tau) % v]) / M) for t in range(v))


@pytest.mark.parametrize("pm,M", [((7, 1), 3), ((13, 1), 4), ((3, 2), 8), ((5, 2), 6), ((3, 4), 4)])
def test_correlation_matches_float_sum(pm, M):
    F = build_field(*pm)
    s = sidelnikov(F, M)
    a, b = constant_multiple(s, 1), constant_multiple(s, M - 1)
    vec = full_correlation(a, b)
    for tau in range(F.q - 1):
        assert abs(vec[tau].to_complex() - _naive(a, b, tau)) < 1e-9
        assert vec[tau] == correlate(a, b, tau)


def test_autocorrelation_peak_and_sidelobes():
    for pm, M in [((7, 1), 6), ((3, 4), 8), ((29, 1), 7)]:
        F = build_field(*pm)
        mags = autocorrelation(sidelnikov(F, M)).magnitudes()
        assert mags[0] == pytest.approx(F.q - 1)
        assert mags[1:].max() <= 4 + 1e-9


def test_bound_figures():
    assert welch_bound(3, 3124) == pytest.approx(45.63, abs=0.01)
    assert sidelnikov_upper_bound(5**5) == pytest.approx(58.90, abs=0.01)
    assert welch_bound(3, 80) == pytest.approx(math.sqrt(80**2 * 2 / 239))
    assert welch_bound(1, 10) == 0
    with pytest.raises(DegenerateFamily):
        welch_bound(1, 1)


def test_bound_check(gf81):
    rep = sidelnikov_bound_check(gf81, 4, 1, 2)
    assert rep.passed and rep.max_abs <= 12 + 1e-9
    assert rep.to_json()["pass"] is True
    with pytest.raises(BadMultiplier):
        sidelnikov_bound_check(gf81, 4, 2, 2)


def test_shape_mismatch():
    with pytest.raises(ShapeMismatch):
        correlate(Sequence(2, (0, 1)), Sequence(3, (0, 1)), 0)


def test_csv_is_deterministic(gf7):
    s = sidelnikov(gf7, 2)
    text = full_correlation(s, s).to_csv()
    assert text.splitlines()[:2] == ["tau,c0,re,im", "0,6,6.000000,0.000000"]
    assert text == full_correlation(s, s).to_csv()


def test_chunking_does_not_change_counts(monkeypatch, gf81):
    import sidelcorr.correlation as corr

    s = sidelnikov(gf81, 4)
    ref = full_correlation(s, constant_multiple(s, 3)).coeffs
    monkeypatch.setattr(corr, "_CHUNK_ELEMS", 100)
    assert np.array_equal(corr.full_correlation(s, constant_multiple(s, 3)).coeffs, ref)


def test_lag_histogram_regrouping_matches_direct_sum(gf81):
    from sidelcorr.correlation import lag_histogram, multiple_correlation

    s = sidelnikov(gf81, 8)
    hist = lag_histogram(s)
    assert hist.sum(axis=1).tolist() == [80] * 80
    for c1, c2 in [(1, 2), (3, 5), (7, 1), (2, 2)]:
        direct = full_correlation(constant_multiple(s, c1), constant_multiple(s, c2))
        assert np.array_equal(multiple_correlation(hist, 8, c1, c2).coeffs, direct.coeffs)

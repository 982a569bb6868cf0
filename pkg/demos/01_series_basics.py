"""Truncated power series and logarithmic coefficients.

Run with ``python demos/01_series_basics.py``.
"""
import numpy as np

from logcoeff.series import TruncatedSeries, exp1, log1, log_coefficients

# %% The Koebe function z/(1-z)^2 has a_n = n, and its logarithmic
# coefficients are exactly 1/n.
order = 10
koebe = TruncatedSeries(np.arange(order + 1, dtype=float))
gam = log_coefficients(koebe)
print("Koebe gamma_n:", np.round(gam.as_array().real, 12))
print("1/n          :", np.round(1 / np.arange(1, order), 12))

# %% exp and log are inverse to each other on series with constant term 1
s = TruncatedSeries([1.0, 0.3, -0.2j, 0.05, 0.0, 0.1], order=8)
roundtrip = exp1(log1(s))
print("max |exp(log s) - s| =", np.max(np.abs((roundtrip - s).coeffs)))

# %% Rotation f(z) -> e^{-i t} f(e^{i t} z) keeps |gamma_n|
rotated = koebe.rotate(0.7)
print("rotated |gamma_n| :", np.round(np.abs(log_coefficients(rotated).as_array()), 12))

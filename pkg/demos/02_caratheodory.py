"""Carathéodory functions from Herglotz atoms, and the classical lemmas.

Run with ``python demos/02_caratheodory.py``.
"""
import numpy as np

from logcoeff import caratheodory as cara

# A random three-atom mixture: weights on the simplex, points on the circle.
P = cara.sample(2024, atom_count=3)
print(P.to_json())
c = cara.coefficients(P, 6)
print("|c_1..c_6| =", np.round(np.abs(c), 6), "(all <= 2)")

# Real part stays positive on the disk (it is a mixture of positive kernels)
z = 0.99 * np.exp(1j * np.linspace(0, 2 * np.pi, 7))
print("Re P on |z| = 0.99:", np.round(P(z).real, 4))

# Ma-Minda: |c_2 - mu c_1^2| <= 2 max(1, |2 mu - 1|)
mu = np.array([0.0, 0.375, 1.0, 1.5 + 0.5j])
rep = cara.check_ma_minda(P, mu)
print("Ma-Minda margins:", np.round(rep["margin"], 6))

# Libera-Zlotkiewicz: after rotating c_1 onto [0, 2], c_2 and c_3 are
# described by two points x, t of the closed disk.
Pn = cara.normalize_c1(P)
tr = cara.triple(Pn)
rec = cara.lz_recover(tr.c1.real, tr.c2, tr.c3)
print(f"c1 = {rec.c1:.6f}, |x| = {abs(rec.x):.6f}, |t| = {abs(rec.t):.6f}")
print("forward map gives back c2, c3:", np.allclose(cara.lz_forward(rec.c1, rec.x, rec.t), (tr.c2, tr.c3)))

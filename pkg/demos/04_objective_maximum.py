"""Maximizing the majorant F(c, r, p) = psi(c, r) + |phi(c, r, p)| over the box.

``48 |gamma_3| <= F``, so the global maximum of F divided by 48 is the
gamma_3 bound.  The grid sweep plus pattern search finds it on the face
``p = 1``; the other faces and the interior are lower.

Run with ``python demos/04_objective_maximum.py``.
"""
import time

from logcoeff import optimizer, sturm

t0 = time.perf_counter()
rep = optimizer.maximize_global()
print(f"max F = {rep.value:.12f} on face {rep.face} ({time.perf_counter() - t0:.1f}s)")
print("argmax (c, r, p):", rep.argmax.as_tuple())
print("closed form     :", optimizer.GLOBAL_MAX, "-> gamma_3 <=", rep.value / 48)

print("\nFace maxima")
for fm in optimizer.face_maxima(grid_step=2e-3):
    print(f"  {fm.face:5s} numeric {fm.numeric:.9f}   closed {fm.closed_form:.9f}")

# On r = 1 the stationarity conditions reduce to one sextic in c; a Sturm
# sequence shows it has a single root in (0, 2).
print("\nroots of 9c^6 - 12c^4 - 2c^2 - 12 in (0, 2):", sturm.count_roots(sturm.SEXTIC, 0, 2))
c = sturm.refine_root(sturm.SEXTIC, 0, 2)
print(f"c = {c:.10f}, p = {2 * (c * c - 3) / (3 * c * c):.10f}")

# No interior critical point: the reduced relation sqrt(6(c^2+2)) = 6 needs c = 2
print("interior residual at c = 1.9:", optimizer.critical_equations((1.9, 0.5, 0.0))["r_relation"])

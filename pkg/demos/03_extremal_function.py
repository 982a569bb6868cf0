"""The function that makes the gamma_3 bound sharp.

``g(z) = z/(1-z^2)`` is the odd Koebe function and ``P`` is a three-atom
Carathéodory function.  Solving ``z f'(z) = g(z) P(z)`` and taking
``log(f/z)`` gives ``|gamma_3| = (95 + 23 sqrt 46)/972``.

Run with ``python demos/03_extremal_function.py``.
"""
import numpy as np

from logcoeff import caratheodory as cara
from logcoeff import classes
from logcoeff.optimizer import GAMMA3_BOUND

P = cara.extremal_P()
lam, alpha = cara.extremal_parameters()
print(f"lambda = {lam:.12f}, alpha = cos(arg u) = {alpha:.12f}")
for w, u in zip(P.weights, P.points):
    print(f"  atom weight {w:.6f} at angle {np.angle(u):+.6f}")

fn = classes.assemble(classes.odd_koebe(24), P)
print("f coefficients a_1..a_5:", np.round(fn.f.coeffs[1:6].real, 10))
gam = fn.log_coefficients()
print(f"|gamma_3| from the series = {abs(gam[3]):.15f}")
print(f"closed-form bound         = {GAMMA3_BOUND:.15f}")

# The same number from the coefficient formulas
c1, c2, c3 = cara.coefficients(P, 3)
g1, g2, g3 = classes.gamma123_formulas(1.0, c1, c2, c3)
print(f"|gamma_3| from b_3, c_1, c_2, c_3 = {abs(g3):.15f}")

# Equality for gamma_1 and gamma_2 needs different P
g = classes.odd_koebe(24)
print("gamma_1 with (1+z)/(1-z):    ", classes.assemble(g, cara.kernel()).log_coefficients()[1].real)
two = cara.HerglotzAtoms([0.5, 0.5], [1.0, -1.0])
print("gamma_2 with (1+z^2)/(1-z^2):", classes.assemble(g, two).log_coefficients()[2].real)

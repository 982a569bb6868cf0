"""Random members of the class against every bound.

Each sample draws an odd starlike ``g`` and a Carathéodory ``P`` from a
seeded generator, solves for ``f`` and checks the three bounds, the
coefficient lemmas and the classical logarithmic-coefficient inequalities.

Run with ``python demos/05_ensemble.py``.
"""
import json

import numpy as np

from logcoeff import verifier

summary = verifier.verify(2000, seed=1)
print(json.dumps({k: summary[k] for k in ("samples", "violations", "min_margins", "max_abs_gamma")},
                 indent=2))

# How close do random samples get?  The gamma_3 margins are far from zero
# because the extremal P is a measure-zero configuration.
recs = verifier.run_ensemble(2000, seed=1)
m3 = np.array([r.margins[2] for r in recs])
print("gamma_3 margin quantiles:", np.round(np.quantile(m3, [0, 0.01, 0.5]), 4))

# A local search over the extremal family climbs right up to the bound
best = verifier.near_extremal_search(n_restarts=30, seed=3)
print("near-extremal |gamma_3| =", best.gamma_abs[2], best.params)

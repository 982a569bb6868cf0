"""Sharp bounds for the first three logarithmic coefficients of functions that
are close-to-convex with respect to odd starlike functions.

Submodules
----------
series        truncated complex power series, logarithmic coefficients
caratheodory  Herglotz mixtures, coefficient lemmas, the extremal ``P``
classes       starlike / odd starlike / close-to-convex constructions
sturm         Sturm sequences and real-root isolation
optimizer     the ``48 |gamma_3|`` majorant, face analysis, global maximum
verifier      seeded ensembles and bound checks
cli           ``logcoeff`` command-line tool
"""
from .caratheodory import HerglotzAtoms, extremal_P
from .optimizer import GAMMA3_BOUND, GLOBAL_MAX, maximize_global
from .series import TruncatedSeries, log_coefficients

__all__ = [
    "GAMMA3_BOUND",
    "GLOBAL_MAX",
    "HerglotzAtoms",
    "TruncatedSeries",
    "extremal_P",
    "log_coefficients",
    "maximize_global",
]

__version__ = "0.1.0"

"""Fisher information for joint (beta, mu) estimation in ideal and weakly
interacting quantum gases: polylogarithm special functions, equation-of-state
inversion, discrete mode sums, condensation formulas, interaction corrections
and a grand-canonical Monte Carlo estimator harness."""

from ._qgf import *  # noqa: F401,F403
from ._qgf import __version__  # noqa: F401

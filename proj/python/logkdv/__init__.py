"""Spectra, linearized and regularized nonlinear flows around the Gaussian
solitary wave of the logarithmic KdV equation."""

from ._logkdv import *  # noqa: F401,F403
from ._logkdv import __version__  # noqa: F401

"""Fastest-decay Fokker-Planck coefficients for a prescribed Gaussian equilibrium."""

from ._fpopt import *  # noqa: F401,F403
from ._fpopt import __version__  # noqa: F401

"""Capacity bounds and Monte Carlo checks for random network models."""

from ._rgcap import *  # noqa: F401,F403
from ._rgcap import __version__  # noqa: F401

"""Piecewise-linear bounds of the normal first-order loss function."""

from ._losslin import *  # noqa: F401,F403
from ._losslin import __version__  # noqa: F401

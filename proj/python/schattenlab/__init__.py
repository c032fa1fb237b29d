"""Exact and asymptotic geometry, samplers and limit laws of rectangular
Schatten-p balls."""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401

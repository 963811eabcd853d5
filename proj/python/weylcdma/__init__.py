"""Weyl spreading sequences, optimal phase assignment and asynchronous CDMA simulation."""

from ._core import *  # noqa: F401,F403
from ._core import __version__, DegeneratePhaseError  # noqa: F401

"""Memristor-circuit chaos toolbox: python bindings over the C++ core."""

from ._mcg import *  # noqa: F401,F403
from ._mcg import __version__  # noqa: F401

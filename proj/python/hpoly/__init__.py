"""Homogeneous polynomial norms, certified sup norms and scaling experiments."""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401

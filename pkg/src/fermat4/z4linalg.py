"""Alias of :mod:`fermat4.z4`."""

from .z4 import *  # noqa: F401,F403

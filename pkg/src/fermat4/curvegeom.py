"""Alias of :mod:`fermat4.curve`."""

from .curve import *  # noqa: F401,F403

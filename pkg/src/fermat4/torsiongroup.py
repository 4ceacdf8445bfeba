"""Alias of :mod:`fermat4.torsion`."""

from .torsion import *  # noqa: F401,F403

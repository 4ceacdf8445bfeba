"""Alias of :mod:`fermat4.galois`."""

from .galois import *  # noqa: F401,F403

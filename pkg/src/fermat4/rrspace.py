"""Alias of :mod:`fermat4.divisors`."""

from .divisors import *  # noqa: F401,F403

"""Alias of :mod:`fermat4.fields`."""

from .fields import *  # noqa: F401,F403

"""Typed exceptions for the array facade, mapped from engine error codes.

Callers only ever see :class:`BindingError` subclasses, so the facade's
error contract does not depend on engine internals.
"""

from __future__ import annotations

import functools

from octile.errors import OctileError


class BindingError(Exception):
    """Base class for all facade errors."""


class UnsupportedInput(BindingError):
    """Input array has an unsupported dtype or shape."""


class InvalidArgument(BindingError):
    """A parameter (tile size, strategy, edge policy, ...) is invalid."""


class EngineFailure(BindingError):
    """The engine failed for a non-argument reason (storage, io, ...)."""


_CODE_MAP = {
    "unsupported-dtype": UnsupportedInput,
    "shape": UnsupportedInput,
    "invalid-tile-size": InvalidArgument,
    "image-too-small": InvalidArgument,
    "invalid-grid": InvalidArgument,
    "bounds": InvalidArgument,
}


def map_engine_errors(func):
    """Re-raise engine errors as the binding-level type for their code."""

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except OctileError as exc:
            raise _CODE_MAP.get(exc.code, EngineFailure)(str(exc)) from exc

    return wrapper

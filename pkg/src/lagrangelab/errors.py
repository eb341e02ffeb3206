"""Exception taxonomy shared across the package.

The CLI maps these onto exit codes: UsageError (and its CapExceeded
subclass) -> 1, StructuralError -> 2, InternalInvariantError -> 3.
"""

from __future__ import annotations

__all__ = ["LagrangeLabError", "UsageError", "CapExceeded", "StructuralError",
           "InternalInvariantError"]


class LagrangeLabError(Exception):
    """Base class for all package-specific errors."""


class UsageError(LagrangeLabError):
    """Malformed input or a request the tool cannot serve (bad schema,
    unparseable numbers, sizes beyond the exact-enumeration caps)."""


class CapExceeded(UsageError):
    """An exact-enumeration resource cap was hit; raising the cap via the
    relevant parameter may make the computation possible."""


class StructuralError(LagrangeLabError):
    """Input parsed fine but is geometrically rejected (empty, unbounded,
    degenerate, rank-deficient, singular quadric configuration...)."""


class InternalInvariantError(LagrangeLabError):
    """A theorem-level cross-check failed; indicates a bug, not bad input."""

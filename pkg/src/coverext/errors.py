"""Exception types shared across the package."""

from __future__ import annotations


class CoverextError(Exception):
    """Base class for all package-specific failures."""


class SchemaError(CoverextError):
    """A scenario or wire payload failed structural validation."""


class NumericFailure(CoverextError):
    """A numerical routine could not reach its accuracy or consistency target."""


class DegenerateCover(CoverextError):
    """The polynomial data does not define a finite branched cover."""


class NotSmooth(CoverextError):
    """A differential quantity was requested where the function is not smooth."""


class SurjectivityError(CoverextError):
    """An induced map that must be onto provably is not."""


class CapExceeded(CoverextError):
    """A bounded enumeration hit its cap before finishing."""

"""Exceptions shared across the package."""


class ArrpartError(Exception):
    """Base class for all package errors."""


class DimensionError(ArrpartError):
    """Vectors or forms over mismatched ambient dimensions."""


class InputError(ArrpartError):
    """Malformed user input (files, CLI arguments, degenerate data)."""


class FlagError(ArrpartError):
    """Flag generation exhausted its retry budget or a verified flag
    turned out to be defective downstream."""


class NotInComplement(ArrpartError):
    """A queried complex point lies on a complexified hyperplane."""


class InternalDisagreement(ArrpartError):
    """The two independent classification routes returned different
    pieces; never resolved silently."""


class LevelMismatch(ArrpartError):
    """An operation restricted to a single level received strata (or an
    index tuple) from different levels."""

#!/usr/bin/env python3


__all__ = ["OL2RError", "ConfigurationError", "LetorParseError", "FullRankExhausted"]


class OL2RError(Exception):
    """Base class for errors raised by the online learning to rank
    library."""


class ConfigurationError(OL2RError, ValueError):
    """An experiment or algorithm setting is invalid."""


class LetorParseError(OL2RError, ValueError):
    """A LETOR record could not be parsed.

    :param str message: What went wrong.
    :param int line_number: The 1-based line of the offending record,
        or None when the problem is not tied to a line.
    """
    def __init__(self, message, line_number=None):
        if line_number is not None:
            message = "line {}: {}".format(line_number, message)
        super().__init__(message)
        self.line_number = line_number


class FullRankExhausted(OL2RError):
    """The discouraged gradients span the whole parameter space, so
    their null space is empty."""

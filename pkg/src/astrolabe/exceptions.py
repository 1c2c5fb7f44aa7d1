"""Exception taxonomy shared across the package.

Geometry degeneracies, astronomical domain errors, and input-file parse
failures each get their own class so callers (and the command line tool)
can map them to distinct outcomes.  Everything derives from
:class:`AstrolabeError` except :class:`EmptyModelWarning`, which is a
warning category, not an error.
"""


class AstrolabeError(Exception):
    """Base class for errors raised by this package."""


class CollinearPoints(AstrolabeError):
    """Three points admit no finite circumcircle."""


class TooFewPoints(AstrolabeError):
    """A circle fit needs at least three points."""


class CoincidentCircles(AstrolabeError):
    """Two circles coincide; their intersection is not a point set."""


class DomainError(AstrolabeError):
    """Input lies outside the mathematical domain of an operation."""


class ArcticLatitude(DomainError):
    """Hour lines are undefined: a tropic never crosses the horizon."""


class OutsidePlate(AstrolabeError):
    """A projected point falls on or beyond the plate boundary."""


class DuplicateStarName(AstrolabeError):
    """A star catalog contains the same name twice."""


class UndefinedBearing(AstrolabeError):
    """Great-circle bearing is undefined (coincident or antipodal points)."""


class NoSolution(AstrolabeError):
    """No altitude in [0, 90] degrees satisfies the requested azimuth."""


class ScenarioInfeasible(AstrolabeError):
    """A readout scenario cannot occur (sun below horizon, or never sets)."""


class ParseError(AstrolabeError):
    """An input file is malformed.  Carries 1-based line and column."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" (line {line}" + (f", column {column}" if column is not None else "") + ")"
        super().__init__(message + where)


class UnknownKey(AstrolabeError):
    """A config file key is not recognized."""


class EmptyModelWarning(UserWarning):
    """A render call received a model with no layers to draw."""

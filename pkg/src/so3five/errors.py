"""Exception hierarchy shared by every module of the package."""


class So3FiveError(Exception):
    """Base class for all errors raised by so3five."""


class EnvironmentMismatch(So3FiveError):
    """Polynomials over different variable environments were combined, or an
    unknown variable name was used."""


class ShapeError(So3FiveError):
    pass


class DegreeLimitExceeded(So3FiveError):
    """An intermediate polynomial exceeded the total-degree guard."""


class InconsistencyError(So3FiveError):
    """A linear or polynomial system that must be solvable is not.

    Seeing this almost always means a matrix was transcribed wrong.
    """


class StructureError(So3FiveError):
    """Input does not define a valid irreducible SO(3) structure."""


class LookupFailure(So3FiveError, KeyError):
    pass

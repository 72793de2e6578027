"""Exception types shared across the package."""


class HomcatError(Exception):
    pass


class InfiniteGroup(HomcatError):
    """Enumeration of a Coxeter group exceeded the configured cap."""


class MalformedMatrix(HomcatError):
    """A Coxeter matrix or type string is not well formed."""


class SystemMismatch(HomcatError):
    """Elements from two different Coxeter systems were combined."""


class NotACosetRepresentative(HomcatError):
    pass


class FixtureMissing(HomcatError):
    pass


class FixtureError(HomcatError):
    """A fixture file exists but cannot be parsed."""


class ConventionError(HomcatError):
    """An index or ordering convention disagrees with a reference fixture."""

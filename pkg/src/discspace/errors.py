"""Exception hierarchy shared by every module."""


class DiscSpaceError(Exception):
    pass


class InvalidParameterError(DiscSpaceError, ValueError):
    """A disc parameter lies outside the open unit disc, or a size is degenerate."""


class DegenerateSequenceError(DiscSpaceError, ValueError):
    """A zero sequence is empty or contains repeated points."""


class SpecParseError(DiscSpaceError, ValueError):
    """Malformed function-description or config document.

    ``path`` locates the offending node, e.g. ``$.sum[1].mobius``.
    """

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


class NumericFailureError(DiscSpaceError, ArithmeticError):
    pass

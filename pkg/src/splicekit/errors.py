"""Exception types shared across the package."""


class InputError(ValueError):
    """A caller violated a documented precondition."""


class ParseError(InputError):
    """Malformed splice or plumbing file.

    Carries the 1-based line number (and column when known) of the offending
    token so command-line users can locate the problem.
    """

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        prefix = ""
        if line is not None:
            prefix = f"line {line}: " if column is None else f"line {line}, col {column}: "
        super().__init__(prefix + message)


class InconsistencyError(InputError):
    """The cutting procedure met a diagram outside its supported class.

    Raised when a cut would require regluing data the diagram does not
    determine (a rest-side generator other than 1 at the cut edge).
    """

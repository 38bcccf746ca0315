class InputError(ValueError):
    """Bad problem input or out-of-range parameter."""


class ScoreFileError(InputError):
    def __init__(self, message, lineno=None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class InfeasibleError(InputError):
    """No DAG has a finite score (some node has no listed parent set)."""


class ResourceLimitError(RuntimeError):
    """A run would exceed the configured table-size budget."""

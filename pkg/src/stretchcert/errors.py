"""Exception types shared by every pipeline stage."""

from contextlib import contextmanager


class StretchCertError(Exception):
    """Base class. ``stage`` names the pipeline step that raised, if known."""

    exit_status = 1

    def __init__(self, message, stage=None):
        super().__init__(message)
        self.stage = stage

    def __str__(self):
        msg = super().__str__()
        return f"[{self.stage}] {msg}" if self.stage else msg


class PreconditionError(StretchCertError, ValueError):
    exit_status = 2


class SearchExhausted(StretchCertError):
    """A bounded search finished without a hit; raising the bound may help."""

    exit_status = 3


class VerificationError(StretchCertError):
    """An exact invariant check failed. Indicates a bug or a corrupt certificate."""

    exit_status = 1


@contextmanager
def stage(name):
    """Tag any StretchCertError escaping the block with ``name`` (innermost wins)."""
    try:
        yield
    except StretchCertError as exc:
        if exc.stage is None:
            exc.stage = name
        raise

"""Exception hierarchy.

Every error raised for bad user input derives from ``InputError`` so the CLI
can map it to exit code 2; everything else signals a failed computation.
"""


class ClusterCodeError(Exception):
    """Base class for all package errors."""


class InputError(ClusterCodeError, ValueError):
    """Malformed or inconsistent input."""


class PauliParseError(InputError):
    """A Pauli string could not be parsed."""

    def __init__(self, text: str, position: int, reason: str):
        self.text = text
        self.position = position
        super().__init__(f"cannot parse {text!r} at position {position}: {reason}")


class ValidationError(InputError):
    """A value violates a documented invariant."""


class StateError(ClusterCodeError):
    """The stabilizer state is not in the form an operation requires."""


class ContradictionError(ClusterCodeError):
    """A forced measurement outcome contradicts a deterministic one."""


class CorrectionError(ClusterCodeError):
    """No Pauli frame maps one signed group onto another."""


class SynthesisInfeasible(ClusterCodeError):
    """No adjacency matrix realizes the requested code."""


class SynthesisMismatch(ClusterCodeError):
    """The measured cluster does not reproduce the target group."""

    def __init__(self, message: str, achieved: list[str], target: list[str]):
        self.achieved = achieved
        self.target = target
        super().__init__(f"{message}\n  achieved: {achieved}\n  target:   {target}")

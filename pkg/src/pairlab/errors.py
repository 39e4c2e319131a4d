"""Exception types shared across the toolkit."""


class PairlabError(Exception):
    """Base class for all toolkit-specific failures."""


class SizeCapError(PairlabError):
    """A requested object exceeds the configured desk-scale caps."""


class DivisibilityError(PairlabError):
    """A divisibility precondition (r | n, r | q^k - 1, ...) does not hold."""


class DomainError(PairlabError):
    """An input lies outside the mathematical domain of an operation."""


class PoleError(PairlabError):
    """Evaluation hit a pole of the function."""


class IndeterminateError(PairlabError):
    """Evaluation hit a 0/0 configuration; the caller should perturb."""


class InconclusiveError(PairlabError):
    """A verification had no admissible point to check (support exhaustion)."""


class ConsistencyError(PairlabError):
    """An internal invariant that should be unreachable failed."""

"""Exception types shared across the package."""


class EggDropError(Exception):
    """Base class for all package errors."""


class DomainError(EggDropError):
    """Arguments violate an operation's stated hypotheses."""


class OutOfRegionError(EggDropError):
    """A drop point lies outside the search region."""


class OutOfEggsError(EggDropError):
    """A query was attempted with no intact egg remaining."""


class ContradictionError(EggDropError):
    """A knowledge-state update emptied the consistent set."""


class InsufficientEggsError(EggDropError):
    """The requested classification is impossible with the given egg budget."""


class AmbiguousResultError(EggDropError):
    """The final knowledge state does not force a unique answer.

    Carries the surviving candidates so callers can record, not hide, the
    ambiguity.
    """

    def __init__(self, message, candidates=(), trace=None):
        super().__init__(message)
        self.candidates = tuple(candidates)
        self.trace = trace


class StrategyError(EggDropError):
    """A strategy finished in a state its own knowledge does not support."""


class AuditSizeError(DomainError):
    """An exhaustive audit exceeds the configured truth-space cap."""

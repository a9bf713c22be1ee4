"""Exception types shared across the package."""


class AlgebraError(Exception):
    """Base class for every error raised by grickart."""


class SizeError(AlgebraError):
    """A construction or search would exceed a configured bound."""


class UnsupportedError(AlgebraError):
    """The operation needs an enumerable base ring (not the integer backend)."""


class ValidationError(AlgebraError):
    """A table fails an axiom; ``axiom`` names it and ``witness`` is the bad tuple."""

    def __init__(self, axiom, witness=()):
        self.axiom = axiom
        self.witness = tuple(int(w) for w in witness)
        super().__init__(f"{axiom} fails at {self.witness}")

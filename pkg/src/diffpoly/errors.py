class DiffPolyError(Exception):
    """Base class for all errors raised by diffpoly."""


class BoundExceeded(DiffPolyError):
    def __init__(self, what: str, size: int, cap: int, flag: str = "--order-cap"):
        self.what, self.size, self.cap, self.flag = what, size, cap, flag
        super().__init__(f"{what}: size {size} exceeds cap {cap} (raise it with {flag})")


class RingAxiomError(DiffPolyError):
    def __init__(self, axiom: str, witness: tuple):
        self.axiom, self.witness = axiom, witness
        super().__init__(f"ring axiom '{axiom}' fails at {witness}")


class IdealError(DiffPolyError):
    pass


class DerivationError(DiffPolyError):
    """A map failed one of the derivation laws; ``witness`` is the offending pair."""

    def __init__(self, law: str, witness: tuple, detail: str = ""):
        self.law, self.witness, self.detail = law, witness, detail
        msg = f"{law} violated at {witness}"
        super().__init__(f"{msg}: {detail}" if detail else msg)


class NotQuasiDuo(DiffPolyError):
    pass


class InvariantError(DiffPolyError):
    """Two independent computations disagreed. Indicates a bug, not bad input."""

"""Exception hierarchy shared by all engines."""


class PBZError(Exception):
    """Base class for every error raised by pbzlat."""


class ValidationError(PBZError):
    """An input table fails one of the structural axioms.

    ``witness`` holds the first offending element, pair or triple in
    lexicographic element order.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotAPartialOrder(ValidationError):
    pass


class NotALattice(ValidationError):
    pass


class InvolutionViolation(ValidationError):
    pass


class BZAxiomViolation(ValidationError):
    """One or more Brouwer-complement axioms fail.

    ``violations`` maps each failing axiom id ("pka", "1".."4") to its first
    witness; ``axiom`` is the first failing id in that order.
    """

    def __init__(self, violations):
        self.violations = dict(violations)
        self.axiom = next(iter(self.violations))
        parts = ", ".join(f"({k}) at {w}" for k, w in self.violations.items())
        super().__init__(f"BZ axiom violation: {parts}", self.violations[self.axiom])


class SizeLimit(PBZError):
    pass


class UnboundVariable(PBZError):
    pass


class TermSyntaxError(PBZError, SyntaxError):
    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position


class PreconditionError(PBZError):
    """An operation was called on an algebra outside its domain."""


class PreconditionSDM(PreconditionError):
    pass


class PreconditionAOL2(PreconditionError):
    pass


class PreconditionCommute(PreconditionError):
    pass


class NotALatticeIdeal(PreconditionError):
    pass


class CharacterizationMismatch(PBZError):
    """Two routes that must agree by a theorem disagree; an implementation bug."""


class IsoCheckFailed(PBZError):
    pass


class NotBoolean(PBZError):
    pass


class UnknownName(PBZError, KeyError):
    pass

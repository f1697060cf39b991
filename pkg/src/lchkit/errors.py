"""Exception hierarchy. Each error carries the CLI exit code it maps to."""


class LCHError(Exception):
    exit_code = 2


class FrontSyntaxError(LCHError):
    """Bad token in a plat-word."""


class RangeError(LCHError):
    """Crossing index outside 1..n-1, or bad strand count."""


class TopologyError(LCHError):
    """The closed plat has more than one component."""


class InternalError(LCHError):
    exit_code = 1


class DegreeError(LCHError):
    """A differential or block map is not degree-homogeneous."""


class UnknownGenerator(LCHError):
    pass


class MismatchedDGAs(LCHError):
    pass


class BudgetExceeded(LCHError):
    exit_code = 3

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class InvalidAugmentation(LCHError):
    pass


class NotAComplex(LCHError):
    exit_code = 1


class ChainMapViolation(LCHError):
    exit_code = 1


class SchemaError(LCHError):
    pass


class StructureError(LCHError):
    pass


class ModeError(LCHError):
    pass


class NotExact(LCHError):
    exit_code = 1

    def __init__(self, message, node=None):
        super().__init__(message)
        self.node = node


class ConeStructureViolation(LCHError):
    exit_code = 1

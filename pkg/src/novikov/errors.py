"""Exception types raised by constructors and operations."""


class NovikovError(Exception):
    """Base class for all package errors."""


class DimensionMismatch(NovikovError):
    pass


class JacobiFailure(NovikovError):
    def __init__(self, algebra, report):
        self.algebra = algebra
        self.report = report
        super().__init__(f"commutator table fails the Jacobi identity ({len(report.violations)} violations)")


class NotTwoStepNilpotent(NovikovError):
    pass


class HypothesisViolated(NovikovError):
    """A construction hypothesis does not hold; ``condition`` names it, ``witness`` localizes it."""

    def __init__(self, condition, witness=None, message=None):
        self.condition = condition
        self.witness = witness
        super().__init__(message or f"hypothesis violated: {condition} (witness {witness})")


class PreconditionFailed(NovikovError):
    def __init__(self, check, report=None, message=None):
        self.check = check
        self.report = report
        super().__init__(message or f"precondition failed: {check}")


class CybeFailed(PreconditionFailed):
    def __init__(self, report=None):
        super().__init__("cybe", report, "T does not satisfy the classical Yang-Baxter equation")


class NotModuleHomomorphism(NovikovError):
    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"map is not a module homomorphism (basis pair {witness})")


class NovikovObstruction(NovikovError):
    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"phi(x.y) != 0 for basis pair {witness}; only the LSA lift exists")


class NotInvertible(NovikovError):
    def __init__(self, det):
        self.det = det
        super().__init__(f"phi(e) is singular (det = {det})")


class BNotAbelian(NovikovError):
    pass


class ProductsNotTrivial(NovikovError):
    pass


class UnknownId(NovikovError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class MissingParam(NovikovError):
    pass


class SchemaError(NovikovError, ValueError):
    """Malformed JSON input; ``location`` is a JSON-pointer-like path."""

    def __init__(self, message, location=""):
        self.location = location
        super().__init__(f"{location}: {message}" if location else message)

"""Exception hierarchy.

Everything a caller can trigger with bad input derives from
:class:`ValidationError`; :class:`InvariantViolation` signals a bug in the
engine itself (the CLI maps these to exit codes 1 and 2).
"""


class CMNewtonError(Exception):
    pass


class ValidationError(CMNewtonError, ValueError):
    pass


class InvariantViolation(CMNewtonError, AssertionError):
    pass


# group-core
class NonBijectiveGenerator(ValidationError):
    pass


class OrderCapExceeded(ValidationError):
    pass


class UnknownElement(ValidationError):
    pass


class SubgroupParentMismatch(ValidationError):
    pass


class NotASubgroup(ValidationError):
    pass


class WordSyntaxError(ValidationError):
    pass


# cyclotomic
class ConductorOutOfRange(ValidationError):
    pass


class NotPrime(ValidationError):
    pass


class NotCoprime(ValidationError):
    pass


# cm-model
class ConjugationNotInvolution(ValidationError):
    pass


class ConjugationNotCentral(ValidationError):
    pass


class ConjugationFixesF(ValidationError):
    pass


class IndexNotEven(ValidationError):
    pass


class NotHStable(ValidationError):
    pass


class ConjugatePairPresent(ValidationError):
    pass


class IncompleteCover(ValidationError):
    pass


class DimensionTooLargeForEnumeration(ValidationError):
    pass


class NotIntermediateSubgroup(ValidationError):
    pass


class SubTypeInvalid(ValidationError):
    pass


# newton-engine
class FieldMismatch(ValidationError):
    pass


class InvalidPrimeContext(ValidationError):
    pass


# ec-oracle
class BadReductionPrime(ValidationError):
    pass


class PrimeOutOfRange(ValidationError):
    pass


# cli
class ScanRequiresCyclotomic(ValidationError):
    pass


class SpecError(ValidationError):
    """A validation failure tagged with the instance section that caused it."""

    def __init__(self, field, cause):
        self.field = field
        self.cause = cause
        name = type(cause).__name__ if isinstance(cause, Exception) else "SpecError"
        super().__init__(f"{field}: {name}: {cause}")

"""Exception types raised across the package.

Every error carries a short machine-readable ``code`` so the CLI and the
reports can name failures without parsing messages.
"""


class FreePairsError(Exception):
    code = "ERROR"


class DivisionByZero(FreePairsError, ZeroDivisionError):
    code = "DIVISION_BY_ZERO"


class DescriptorMismatch(FreePairsError, TypeError):
    code = "DESCRIPTOR_MISMATCH"


class SingularMatrix(FreePairsError, ZeroDivisionError):
    code = "SINGULAR_MATRIX"


class NotInvertible(FreePairsError, ZeroDivisionError):
    code = "NOT_INVERTIBLE"


class ZeroNorm(FreePairsError, ZeroDivisionError):
    code = "ZERO_NORM"


class ZeroInput(FreePairsError, ValueError):
    code = "ZERO_INPUT"


class InvalidPlace(FreePairsError, ValueError):
    code = "INVALID_PLACE"

    GEN_IMAGE_NOT_ROOT = "GEN_IMAGE_NOT_ROOT"
    UNIFORMIZER_NOT_IN_PRIME = "UNIFORMIZER_NOT_IN_PRIME"
    RAMIFICATION_UNSUPPORTED = "RAMIFICATION_UNSUPPORTED"

    def __init__(self, reason: str, detail: str = ""):
        self.reason = reason
        super().__init__(f"{reason}: {detail}" if detail else reason)


class NotOrderTwo(FreePairsError, ValueError):
    code = "NOT_ORDER_TWO"


class InvalidSpec(FreePairsError, ValueError):
    code = "INVALID_SPEC"


class Not3Integral(FreePairsError, ValueError):
    code = "NOT_3_INTEGRAL"


class DegreeOverflow(FreePairsError, ValueError):
    code = "DEGREE_OVERFLOW"


class UndefinedCase(FreePairsError, KeyError):
    code = "UNDEFINED_CASE"

    def __str__(self):
        return str(self.args[0]) if self.args else self.code


class ParseError(FreePairsError, ValueError):
    code = "PARSE_ERROR"

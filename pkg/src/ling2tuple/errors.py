"""Exception hierarchy.

Every domain failure derives from :class:`LinguisticError`; FCL front-end
failures derive from :class:`FclError`, which carries a source location.
"""


class LinguisticError(Exception):
    """Base class for domain-rule violations."""

    code = "linguistic-error"


class InvalidArgument(LinguisticError, ValueError):
    code = "invalid-argument"


class OutOfUniverse(LinguisticError, ValueError):
    code = "out-of-universe"


class TooFewTerms(LinguisticError, ValueError):
    code = "too-few-terms"


class UnorderedInput(LinguisticError, ValueError):
    code = "unordered-input"


class DuplicateTerm(LinguisticError, ValueError):
    code = "duplicate-term"


class DegenerateGap(LinguisticError, ValueError):
    code = "degenerate-gap"


class UnknownTerm(LinguisticError, LookupError):
    code = "unknown-term"


class MisplacedNA(LinguisticError, ValueError):
    code = "misplaced-NA"


class UnknownStretch(LinguisticError, LookupError):
    code = "unknown-stretch"


class EmptyAggregation(LinguisticError, ValueError):
    code = "empty-aggregation"


class NotStrictBinary(LinguisticError, ValueError):
    code = "not-strict-binary"


class DuplicateNode(LinguisticError, ValueError):
    code = "duplicate-node"


class NotSupported(LinguisticError):
    code = "not-supported"


class FclError(Exception):
    """An FCL input problem located at a 1-based ``line`` and ``column``."""

    code = "fcl-error"

    def __init__(self, message, line=None, column=None):
        super().__init__(message)
        self.message = message
        self.line = line
        self.column = column

    def format(self, filename="<input>", severity="error"):
        if self.line is None:
            return f"{filename}: {severity}: {self.message}"
        return f"{filename}:{self.line}:{self.column}: {severity}: {self.message}"


class FclSyntaxError(FclError):
    code = "syntax-error"


class FclSemanticError(FclError):
    code = "semantic-error"


class UnknownVariable(FclError, LookupError):
    code = "unknown-variable"

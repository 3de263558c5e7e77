"""
Lamsym error hierarchy.

Every error raised by the library derives from LamsymError and carries a
machine-readable ``code`` and the process ``exit_code`` the CLI maps it to:

    2  parse error
    3  solver produced an empty result
    4  verification failure
    5  numeric failure

Usage:
    from backend.lamsym.errors import LamsymError

    try:
        ode = parse_ode(text)
    except LamsymError as exc:
        print(exc.code, exc.exit_code)
"""

from typing import Any, Dict, FrozenSet, Optional


class LamsymError(Exception):
    """Base class for all lamsym errors."""

    code = 'LAMSYM_ERROR'
    exit_code = 1

    def __init__(self, message: str, **details: Any):
        super().__init__(message)
        self.message = message
        self.details: Dict[str, Any] = details

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for JSON serialization."""
        return {
            'code': self.code,
            'message': self.message,
            'details': {k: str(v) for k, v in self.details.items()},
        }


# ============================================================================
# PARSE ERRORS (exit 2)
# ============================================================================

class ParseFailure(LamsymError):
    code = 'PARSE_ERROR'
    exit_code = 2


class ExprSyntaxError(ParseFailure):
    """Grammar violation; ``offset`` is a byte offset into the UTF-8 input."""

    code = 'SYNTAX_ERROR'

    def __init__(self, message: str, offset: int, expected: Optional[FrozenSet[str]] = None):
        self.offset = offset
        self.expected = frozenset(expected or ())
        super().__init__(
            f"Byte {offset} - {message}",
            offset=offset,
            expected=', '.join(sorted(self.expected)),
        )


class HigherDerivativeOnRHS(ParseFailure):
    code = 'HIGHER_DERIVATIVE_ON_RHS'


class SymbolKindConflict(ParseFailure):
    code = 'SYMBOL_KIND_CONFLICT'


class CorpusParseError(ParseFailure):
    code = 'CORPUS_PARSE_ERROR'

    def __init__(self, message: str, entry_id: str):
        self.entry_id = entry_id
        super().__init__(f"[{entry_id}] {message}", entry_id=entry_id)


# ============================================================================
# SOLVER ERRORS (exit 3)
# ============================================================================

class SolverFailure(LamsymError):
    code = 'SOLVER_ERROR'
    exit_code = 3


class EmptyResult(SolverFailure):
    code = 'EMPTY_RESULT'


class InsufficientBasis(SolverFailure):
    code = 'INSUFFICIENT_BASIS'


class NoMatchInBasis(SolverFailure):
    code = 'NO_MATCH_IN_BASIS'


class NotRationalInYPrime(SolverFailure):
    code = 'NOT_RATIONAL_IN_YPRIME'


class NotSupported(SolverFailure):
    code = 'NOT_SUPPORTED'


# ============================================================================
# VERIFICATION ERRORS (exit 4)
# ============================================================================

class VerificationFailure(LamsymError):
    code = 'VERIFICATION_FAILURE'
    exit_code = 4


class ZeroDenominator(VerificationFailure):
    code = 'ZERO_DENOMINATOR'


class NotPolynomialInGenerators(VerificationFailure):
    code = 'NOT_POLYNOMIAL_IN_GENERATORS'


class SingularJacobian(VerificationFailure):
    code = 'SINGULAR_JACOBIAN'


class InverseNotValid(VerificationFailure):
    code = 'INVERSE_NOT_VALID'


class NotSolvable(VerificationFailure):
    code = 'NOT_SOLVABLE'


class NotASymmetry(VerificationFailure):
    code = 'NOT_A_SYMMETRY'


class NonlocalDerivative(VerificationFailure):
    code = 'NONLOCAL_DERIVATIVE'


# ============================================================================
# NUMERIC ERRORS (exit 5)
# ============================================================================

class NumericFailure(LamsymError):
    code = 'NUMERIC_ERROR'
    exit_code = 5


class Undecided(NumericFailure):
    code = 'UNDECIDED'


class PoleEncountered(NumericFailure):
    code = 'POLE_ENCOUNTERED'


class NonFiniteState(NumericFailure):
    code = 'NON_FINITE_STATE'

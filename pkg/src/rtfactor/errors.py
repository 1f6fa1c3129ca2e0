"""Shared exception types.

Every domain error raised by this package derives from RTFactorError, so CLI
code can distinguish "bad input / bad math" (exit 1) from genuine bugs.
"""
from __future__ import annotations


class RTFactorError(Exception):
    """Base class for all domain errors."""


class ParseError(RTFactorError):
    """Malformed textual input (braid words, polynomials, series)."""


class ConstantTermViolation(RTFactorError):
    """Series exp/log precondition failed (wrong constant term)."""


class AntisymmetryViolation(RTFactorError):
    def __init__(self, indices):
        self.indices = indices
        super().__init__(f"structure constants not antisymmetric at {indices}")


class JacobiViolation(RTFactorError):
    def __init__(self, indices):
        self.indices = indices
        super().__init__(f"Jacobi identity fails at index quadruple {indices}")


class UnknownName(RTFactorError):
    """Unrecognized builtin algebra, representation, or catalog name."""


class DimensionTooLarge(RTFactorError):
    """Requested computation exceeds the exact-arithmetic size guard."""


class DimensionMismatch(RTFactorError):
    """Operands live in algebras/spaces of different dimension."""


class TraceNotZero(RTFactorError):
    """Character formulas require a trace-free matrix ρ(X)."""


class NotASquareOfSquare(RTFactorError):
    """Yang-Baxter check needs an n²×n² matrix."""


class KinkNotScalar(RTFactorError):
    """Kink evaluation did not return a scalar multiple of the identity."""


class GeneratorOutOfRange(RTFactorError):
    """Braid letter |i| outside [1, strands-1]."""


class OpenTangle(RTFactorError):
    """Operation requires a closed tangle."""


class NotClosed(RTFactorError):
    """Framed invariants are defined for closed tangles only."""


class ArityMismatch(RTFactorError):
    """Slice sequence does not chain width-consistently."""


class TooManyCrossings(RTFactorError):
    """State sum capped at 24 crossings (2^c states)."""


class NonInvertibleNormalizer(RTFactorError):
    """Normalization requested against a series with zero constant term."""


class OpenGraph(RTFactorError):
    """Weight of a graph with uncontracted legs is not a scalar."""


class OpenFermionPath(RTFactorError):
    """Scalar coupled weight requested on a graph with an open fermion path."""


class TooLarge(RTFactorError):
    """Brute-force enumeration guard exceeded."""


class CurvesIntersect(RTFactorError):
    """Gauss integral undefined: curves closer than tolerance."""

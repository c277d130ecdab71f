"""Exact reduction of plane foliation singularities and separatrix valuations."""
from .algebra import Poly, UPoly
from .divisors import SeparatrixDivisor, balanced_divisor, intersection_number, local_intersection
from .errors import (
    FolvalError,
    InfiniteIntersectionError,
    InvariantViolationError,
    ParseError,
    PreconditionError,
    ResolutionDepthError,
    UndefinedOrderError,
    UnsupportedFieldError,
    ValidationError,
)
from .foliation import Kind, OneFormGerm, algebraic_multiplicity, classify, weak_index_along
from .parsing import parse_expression, parse_input
from .projective import AuditReport, ProjForm, audit, find_rational_singularities, validate
from .resolution import ResolutionTree, reduce
from .valuation import ComponentRecord, ValuationReport, verify

__all__ = [
    "AuditReport",
    "ComponentRecord",
    "FolvalError",
    "InfiniteIntersectionError",
    "InvariantViolationError",
    "Kind",
    "OneFormGerm",
    "ParseError",
    "Poly",
    "PreconditionError",
    "ProjForm",
    "ResolutionDepthError",
    "ResolutionTree",
    "SeparatrixDivisor",
    "UPoly",
    "UndefinedOrderError",
    "UnsupportedFieldError",
    "ValidationError",
    "ValuationReport",
    "algebraic_multiplicity",
    "audit",
    "balanced_divisor",
    "classify",
    "find_rational_singularities",
    "intersection_number",
    "local_intersection",
    "parse_expression",
    "parse_input",
    "reduce",
    "validate",
    "verify",
    "weak_index_along",
]

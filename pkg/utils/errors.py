"""
Exception hierarchy and process exit codes for the locgen toolkit.
"""

from dataclasses import dataclass, field
from typing import Any, List, Optional, Tuple


class ExitCode:
    """Process exit codes returned by the command-line front end."""

    OK = 0
    CHECK_FAILED = 1
    PARSE_ERROR = 2
    GENERATION_ERROR = 3


@dataclass(frozen=True)
class AxiomViolation:
    """One violated equation together with the tuple that witnesses it."""

    equation: str
    witness: Tuple[Any, ...] = field(default_factory=tuple)

    def to_dict(self) -> dict:
        return {"equation": self.equation, "witness": [repr(w) for w in self.witness]}


class LocgenError(Exception):
    """Base class for every error raised by the toolkit."""


# --- theory-dsl -------------------------------------------------------------


class TheoryError(LocgenError):
    """Problems with an input theory."""


class TheoryParseError(TheoryError):
    """Syntax error in a .gth source, located by 1-based line and column."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} at line {line}, column {column}")
        self.message = message
        self.line = line
        self.column = column


class TheoryValidationError(TheoryError):
    """Unknown sort/relation, unbound variable or arity mismatch."""


# --- presentations ----------------------------------------------------------


class PresentationError(LocgenError):
    """Malformed presentation or hom specification."""


class UndeclaredGeneratorError(PresentationError):
    def __init__(self, generator_id: str, where: str = ""):
        suffix = f" in {where}" if where else ""
        super().__init__(f"undeclared generator '{generator_id}'{suffix}")
        self.generator_id = generator_id


class SaturationLimitError(PresentationError):
    def __init__(self, cap: int):
        super().__init__(f"saturation exceeded {cap} derived facts")
        self.cap = cap


class PresentationMismatchError(PresentationError):
    """Homs composed or compared across presentations that do not match."""


class HomVerificationError(PresentationError):
    """A frame hom failed to send some relation to an entailed sequent."""

    def __init__(self, relation: Any, countermodel: Any, hom_name: str = ""):
        label = f"{hom_name}: " if hom_name else ""
        super().__init__(f"{label}image of relation {relation} is refuted by {countermodel}")
        self.relation = relation
        self.countermodel = countermodel


# --- internal categories ----------------------------------------------------


class CategoryError(LocgenError):
    """Errors in finite internal-category data."""


class CategoryAxiomError(CategoryError):
    """Raised with the full list of violated equations."""

    def __init__(self, violations: List[AxiomViolation], what: str = "category"):
        names = ", ".join(v.equation for v in violations)
        super().__init__(f"{what} violates: {names}")
        self.violations = violations


class FunctorError(CategoryAxiomError):
    def __init__(self, violations: List[AxiomViolation]):
        super().__init__(violations, what="functor")


class ActionAxiomError(CategoryAxiomError):
    def __init__(self, violations: List[AxiomViolation]):
        super().__init__(violations, what="action")


class DescentError(CategoryError):
    """Descent along a functor that is not ff and surjective on objects."""


class TwoCellError(CategoryError):
    def __init__(self, message: str, witness: Optional[Tuple[Any, ...]] = None):
        super().__init__(message if witness is None else f"{message}: {witness!r}")
        self.witness = witness


# --- classifier, oracle, forcing --------------------------------------------


class ClassifierError(LocgenError):
    """Generation or structure-map verification failure."""


class ModelError(LocgenError):
    """Invalid model, hom, or bundle model data."""


class ForcingError(LocgenError):
    """Forcing-locale construction failed its preconditions or checks."""


class BundleFormatError(LocgenError):
    """Exported classifier bundle is missing files or fails re-validation."""

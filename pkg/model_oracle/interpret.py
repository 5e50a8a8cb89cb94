"""
Set-valued interpretation of formulas in a finite structure.

A structure supplies the tuples of a context (`tuples(sorts)`) and the
tuples of each relation (`relation_tuples(name)`). Set-models have no
prefix; structures over a category put the base object first, so their
tuples carry `prefix = 1` leading coordinate that no variable refers to.
"""

from typing import Dict, FrozenSet, Hashable, List, Optional, Protocol, Sequence, Tuple

from theory_dsl import And, Eq, Exists, Fals, Formula, Or, Rel, Theory, Tru, infer_context
from theory_dsl.syntax import Context
from utils.errors import ModelError, TheoryError

Row = Tuple[Hashable, ...]


class Structure(Protocol):
    theory: Theory
    prefix: int

    def tuples(self, sorts: Sequence[str]) -> List[Row]: ...

    def relation_tuples(self, name: str) -> FrozenSet[Row]: ...


def _positions(context: Context, prefix: int) -> Dict[str, int]:
    # later bindings shadow earlier ones
    return {var: prefix + k for k, (var, _) in enumerate(context)}


def _interpret(structure: Structure, formula: Formula, context: Context) -> FrozenSet[Row]:
    prefix = structure.prefix
    rows = structure.tuples([sort for _, sort in context])
    where = _positions(context, prefix)

    if isinstance(formula, Tru):
        return frozenset(rows)
    if isinstance(formula, Fals):
        return frozenset()
    if isinstance(formula, Rel):
        table = structure.relation_tuples(formula.name)
        if not formula.args:
            return frozenset(row for row in rows if row[:prefix] in table)
        return frozenset(row for row in rows if tuple(row[where[v]] for v in formula.args) in table)
    if isinstance(formula, Eq):
        return frozenset(row for row in rows if row[where[formula.left]] == row[where[formula.right]])
    if isinstance(formula, And):
        result = frozenset(rows)
        for item in formula.items:
            result &= _interpret(structure, item, context)
        return result
    if isinstance(formula, Or):
        result = frozenset()
        for item in formula.items:
            result |= _interpret(structure, item, context)
        return result
    if isinstance(formula, Exists):
        extended = context + ((formula.var, formula.sort),)
        return frozenset(row[:-1] for row in _interpret(structure, formula.body, extended))
    raise ModelError(f"cannot interpret {formula!r}")


def interpret_formula(structure: Structure, formula: Formula, context: Optional[Context] = None) -> FrozenSet[Row]:
    """
    φ in the given context: equality is the diagonal, ∧ and ∨ are
    intersection and union, ∃ is the image of the projection forgetting the
    bound variable. Without a context the free variables are typed from φ.
    """
    if context is None:
        try:
            context = infer_context(structure.theory.signature, formula, Tru())
        except TheoryError as e:
            raise ModelError(f"cannot type the free variables of {formula!r}: {e}") from e
    return _interpret(structure, formula, tuple(context))

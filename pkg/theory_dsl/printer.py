"""Canonical DSL rendering; parse_theory(pretty_print(T)) == T."""

from .syntax import And, Axiom, Eq, Exists, Fals, Formula, Or, Rel, Theory, Tru


def format_formula(formula: Formula) -> str:
    if isinstance(formula, Tru):
        return "true"
    if isinstance(formula, Fals):
        return "false"
    if isinstance(formula, Rel):
        return f"{formula.name}({', '.join(formula.args)})"
    if isinstance(formula, Eq):
        return f"{formula.left} = {formula.right}"
    if isinstance(formula, And):
        return "(" + " & ".join(format_formula(item) for item in formula.items) + ")"
    if isinstance(formula, Or):
        return "(" + " | ".join(format_formula(item) for item in formula.items) + ")"
    if isinstance(formula, Exists):
        return f"(exists {formula.var}:{formula.sort}. {format_formula(formula.body)})"
    raise TypeError(f"not a formula: {formula!r}")


def format_axiom(axiom: Axiom) -> str:
    context = ", ".join(f"{var}:{sort}" for var, sort in axiom.context)
    return f"axiom [{context}]: {format_formula(axiom.lhs)} |- {format_formula(axiom.rhs)}"


def pretty_print(theory: Theory) -> str:
    lines = [f"theory {theory.name} {{"]
    for sort in theory.sorts:
        lines.append(f"  sort {sort};")
    for rel in theory.relations:
        lines.append(f"  rel {rel.name}({', '.join(rel.arity)});")
    for axiom in theory.axioms:
        lines.append(f"  {format_axiom(axiom)};")
    lines.append(f"  orientation {theory.orientation.value};")
    lines.append("}")
    return "\n".join(lines) + "\n"

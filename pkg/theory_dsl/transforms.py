"""
Theory-to-theory rewrites: collapsing sorts and disjoint unions.
"""

from typing import Dict, Iterable, Tuple

from .syntax import (
    And,
    Axiom,
    Eq,
    Exists,
    Fals,
    Formula,
    Or,
    Rel,
    RelationSymbol,
    Signature,
    Theory,
    Tru,
    conj,
    disj,
)


def _fresh(base: str, taken: Iterable[str]) -> str:
    taken = set(taken)
    candidate = base
    while candidate in taken:
        candidate += "_"
    return candidate


def sort_predicate_names(theory: Theory) -> Dict[str, str]:
    """The unary predicate standing for each original sort after singlesort()."""
    taken = {r.name for r in theory.relations}
    names: Dict[str, str] = {}
    for sort in theory.sorts:
        names[sort] = _fresh(f"U_{sort}", taken | set(names.values()))
    return names


def singlesort_name(theory: Theory) -> str:
    return _fresh("Univ", theory.sorts)


def singlesort(theory: Theory) -> Theory:
    """
    Combine all sorts into one, remembering each old sort as a unary predicate.

    Adds covering (every element lies in some old sort), disjointness and
    relation-typing axioms, and relativises every original axiom and
    existential to the predicates of its sorts. Theories with at most one
    sort come back unchanged.
    """
    if len(theory.sorts) <= 1:
        return theory

    universe = singlesort_name(theory)
    predicate = sort_predicate_names(theory)

    def relativise(f: Formula) -> Formula:
        if isinstance(f, Eq):
            return Eq(universe, f.left, f.right)
        if isinstance(f, And):
            return And(tuple(relativise(item) for item in f.items))
        if isinstance(f, Or):
            return Or(tuple(relativise(item) for item in f.items))
        if isinstance(f, Exists):
            return Exists(f.var, universe, conj(Rel(predicate[f.sort], (f.var,)), relativise(f.body)))
        return f

    relations = tuple(RelationSymbol(predicate[s], (universe,)) for s in theory.sorts) + tuple(
        RelationSymbol(r.name, (universe,) * len(r.arity)) for r in theory.relations
    )

    x = (("x", universe),)
    axioms = [Axiom(x, Tru(), disj(*(Rel(predicate[s], ("x",)) for s in theory.sorts)))]
    for i, a in enumerate(theory.sorts):
        for b in theory.sorts[i + 1:]:
            axioms.append(Axiom(x, And((Rel(predicate[a], ("x",)), Rel(predicate[b], ("x",)))), Fals()))
    for rel in theory.relations:
        if not rel.arity:
            continue
        variables = tuple(f"x{k}" for k in range(len(rel.arity)))
        axioms.append(
            Axiom(
                tuple((v, universe) for v in variables),
                Rel(rel.name, variables),
                conj(*(Rel(predicate[s], (v,)) for v, s in zip(variables, rel.arity))),
            )
        )
    for axiom in theory.axioms:
        guards = [Rel(predicate[sort], (var,)) for var, sort in axiom.context]
        axioms.append(
            Axiom(
                tuple((var, universe) for var, _ in axiom.context),
                conj(*guards, relativise(axiom.lhs)),
                relativise(axiom.rhs),
            )
        )

    return Theory(
        f"{theory.name}_single",
        Signature((universe,), relations),
        tuple(axioms),
        theory.orientation,
    )


def _rename(f: Formula, sorts: Dict[str, str], relations: Dict[str, str]) -> Formula:
    if isinstance(f, Rel):
        return Rel(relations[f.name], f.args)
    if isinstance(f, Eq):
        return Eq(sorts[f.sort], f.left, f.right)
    if isinstance(f, And):
        return And(tuple(_rename(item, sorts, relations) for item in f.items))
    if isinstance(f, Or):
        return Or(tuple(_rename(item, sorts, relations) for item in f.items))
    if isinstance(f, Exists):
        return Exists(f.var, sorts[f.sort], _rename(f.body, sorts, relations))
    return f


def prefix_theory(theory: Theory, tag: str) -> Tuple[Theory, Dict[str, str], Dict[str, str]]:
    """Rename every sort and relation to `<tag>_<name>`; returns the renamings too."""
    sorts = {s: f"{tag}_{s}" for s in theory.sorts}
    relations = {r.name: f"{tag}_{r.name}" for r in theory.relations}
    signature = Signature(
        tuple(sorts.values()),
        tuple(RelationSymbol(relations[r.name], tuple(sorts[s] for s in r.arity)) for r in theory.relations),
    )
    axioms = tuple(
        Axiom(
            tuple((v, sorts[s]) for v, s in a.context),
            _rename(a.lhs, sorts, relations),
            _rename(a.rhs, sorts, relations),
        )
        for a in theory.axioms
    )
    return Theory(f"{tag}_{theory.name}", signature, axioms, theory.orientation), sorts, relations


def disjoint_union(left: Theory, right: Theory, tags: Tuple[str, str] = ("L", "R")) -> Theory:
    """The theory whose models are pairs of a `left` model and a `right` model."""
    lt, _, _ = prefix_theory(left, tags[0])
    rt, _, _ = prefix_theory(right, tags[1])
    signature = Signature(lt.sorts + rt.sorts, lt.relations + rt.relations)
    return Theory(f"{left.name}_{right.name}", signature, lt.axioms + rt.axioms, left.orientation)

"""
Parser for `.gth` theory files, built from parsy combinators.

    theory Graphs {
        sort V;
        rel E(V, V);
        axiom [x:V, y:V]: E(x, y) |- E(y, x);
        orientation LH;
    }

An axiom may omit its `[context]`; sorts are then inferred from relation
argument positions and equalities. `#` and `//` start line comments.
"""

import logging
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

from parsy import ParseError, alt, eof, fail, generate, regex, seq, string, success

from utils.errors import TheoryParseError, TheoryValidationError

from .syntax import (
    And,
    Axiom,
    Context,
    Eq,
    Exists,
    Fals,
    Formula,
    Or,
    Orientation,
    Rel,
    RelationSymbol,
    Signature,
    Theory,
    Tru,
)

logger = logging.getLogger(__name__)

KEYWORDS = {"theory", "sort", "rel", "axiom", "orientation", "exists", "true", "false", "LH", "PS"}

whitespace = regex(r"(?:\s|#[^\n]*|//[^\n]*)*")


def lexeme(p):
    return p << whitespace


def symbol(text: str):
    return lexeme(string(text)).desc(repr(text))


def keyword(word: str):
    return lexeme(regex(word + r"(?![A-Za-z0-9_'])")).desc(word)


raw_identifier = lexeme(regex(r"[A-Za-z_][A-Za-z0-9_']*")).desc("identifier")
name = raw_identifier.bind(lambda s: fail("identifier") if s in KEYWORDS else success(s))

# `|` must not eat the turnstile
bar = lexeme(regex(r"\|(?!-)")).desc("'|'")
turnstile = symbol("|-")

# Equality atoms are parsed before their sort is known; the sort is filled in
# once the variable context has been fixed.
UNTYPED = ""


@generate
def parenthesised():
    yield symbol("(")
    body = yield formula
    yield symbol(")")
    return body


@generate
def existential():
    yield keyword("exists")
    var = yield name
    yield symbol(":")
    sort = yield name
    yield symbol(".")
    body = yield formula
    return Exists(var, sort, body)


equality = seq(name << symbol("="), name).combine(lambda left, right: Eq(UNTYPED, left, right))

relation_atom = seq(
    name,
    symbol("(") >> name.sep_by(symbol(",")) << symbol(")"),
).combine(lambda rel, args: Rel(rel, tuple(args)))

atom = alt(
    keyword("true").result(Tru()),
    keyword("false").result(Fals()),
    existential,
    parenthesised,
    equality,
    relation_atom,
)


def _fold(cls):
    return lambda items: items[0] if len(items) == 1 else cls(tuple(items))


conjunction = atom.sep_by(symbol("&"), min=1).map(_fold(And))
formula = conjunction.sep_by(bar, min=1).map(_fold(Or))

typed_variable = seq(name << symbol(":"), name).map(tuple)
context_block = symbol("[") >> typed_variable.sep_by(symbol(",")) << symbol("]") << symbol(":")


@generate
def axiom_decl():
    yield keyword("axiom")
    context = yield context_block.optional()
    lhs = yield formula.optional()
    yield turnstile
    rhs = yield formula
    return ("axiom", None if context is None else tuple(context), lhs or Tru(), rhs)


sort_decl = keyword("sort") >> name.sep_by(symbol(","), min=1).map(lambda names: ("sort", tuple(names)))
rel_decl = seq(
    keyword("rel") >> name,
    (symbol("(") >> name.sep_by(symbol(",")) << symbol(")")).optional(),
).combine(lambda rel, arity: ("rel", rel, tuple(arity or ())))
orientation_decl = keyword("orientation") >> alt(keyword("LH"), keyword("PS")).map(lambda o: ("orientation", o))

declaration = alt(sort_decl, rel_decl, axiom_decl, orientation_decl)
theory_body = declaration.sep_by(symbol(";")) << symbol(";").optional()
theory_source = whitespace >> seq(
    keyword("theory") >> name,
    symbol("{") >> theory_body << symbol("}"),
) << eof


def _line_column(text: str, index: int) -> Tuple[int, int]:
    line = text.count("\n", 0, index) + 1
    column = index - (text.rfind("\n", 0, index) + 1) + 1
    return line, column


def parse_theory(text: str) -> Theory:
    """Parse and validate a theory; syntax errors carry a 1-based line and column."""
    try:
        theory_name, declarations = theory_source.parse(text)
    except ParseError as e:
        line, column = _line_column(text, e.index)
        raise TheoryParseError(f"expected {', '.join(sorted(e.expected))}", line, column) from e

    sorts: List[str] = []
    relations: List[RelationSymbol] = []
    raw_axioms = []
    orientation = Orientation.LH
    for decl in declarations:
        if decl[0] == "sort":
            sorts.extend(decl[1])
        elif decl[0] == "rel":
            relations.append(RelationSymbol(decl[1], decl[2]))
        elif decl[0] == "axiom":
            raw_axioms.append(decl[1:])
        else:
            orientation = Orientation(decl[1])

    signature = Signature(tuple(sorts), tuple(relations))
    axioms = tuple(_build_axiom(signature, *raw) for raw in raw_axioms)
    theory = Theory(theory_name, signature, axioms, orientation)
    logger.debug(f"parsed theory {theory_name}: {len(sorts)} sorts, {len(relations)} relations, {len(axioms)} axioms")
    return theory


def load_theory(path: Union[str, Path]) -> Theory:
    """Read and parse a UTF-8 `.gth` file."""
    return parse_theory(Path(path).read_text(encoding="utf-8"))


def _build_axiom(signature: Signature, context: Optional[Context], lhs: Formula, rhs: Formula) -> Axiom:
    if context is None:
        context = infer_context(signature, lhs, rhs)
    scope = dict(context)
    return Axiom(tuple(context), type_equalities(lhs, scope), type_equalities(rhs, scope))


def type_equalities(formula: Formula, scope: Dict[str, str]) -> Formula:
    """Fill in the sort of every untyped equality from the variables in scope."""
    if isinstance(formula, Eq):
        if formula.sort != UNTYPED:
            return formula
        for var in (formula.left, formula.right):
            if var not in scope:
                raise TheoryValidationError(f"unbound variable '{var}' in equality")
        if scope[formula.left] != scope[formula.right]:
            raise TheoryValidationError(
                f"equality between variables of different sorts: {formula.left} = {formula.right}"
            )
        return Eq(scope[formula.left], formula.left, formula.right)
    if isinstance(formula, And):
        return And(tuple(type_equalities(item, scope) for item in formula.items))
    if isinstance(formula, Or):
        return Or(tuple(type_equalities(item, scope) for item in formula.items))
    if isinstance(formula, Exists):
        return Exists(formula.var, formula.sort, type_equalities(formula.body, {**scope, formula.var: formula.sort}))
    return formula


def infer_context(signature: Signature, lhs: Formula, rhs: Formula) -> Context:
    """
    Infer the context of an axiom written without one.

    Free variables are ordered by first occurrence (lhs before rhs). Sorts come
    from relation argument positions and are propagated through equalities;
    in a single-sorted signature any leftover variable gets the only sort.
    """
    order: List[str] = []
    sorts: Dict[str, str] = {}
    links: List[Tuple[Tuple[str, str], Tuple[str, str]]] = []

    def note(var: str) -> None:
        if var not in order:
            order.append(var)

    def assign(var: str, sort: str) -> None:
        if sorts.setdefault(var, sort) != sort:
            raise TheoryValidationError(f"variable '{var}' used at sorts {sorts[var]} and {sort}")

    def visit(f: Formula, bound: Dict[str, str]) -> None:
        if isinstance(f, Rel):
            arity = signature.relation(f.name).arity
            if len(arity) != len(f.args):
                raise TheoryValidationError(
                    f"arity mismatch: {f.name} expects {len(arity)} arguments, got {len(f.args)}"
                )
            for var, sort in zip(f.args, arity):
                if var not in bound:
                    note(var)
                    assign(var, sort)
        elif isinstance(f, Eq):
            ends = []
            for var in (f.left, f.right):
                if var in bound:
                    ends.append(("sort", bound[var]))
                else:
                    note(var)
                    ends.append(("var", var))
            links.append((ends[0], ends[1]))
        elif isinstance(f, (And, Or)):
            for item in f.items:
                visit(item, bound)
        elif isinstance(f, Exists):
            visit(f.body, {**bound, f.var: f.sort})

    visit(lhs, {})
    visit(rhs, {})

    def known(end: Tuple[str, str]) -> Optional[str]:
        return end[1] if end[0] == "sort" else sorts.get(end[1])

    changed = True
    while changed:
        changed = False
        for a, b in links:
            for this, other in ((a, b), (b, a)):
                sort = known(this)
                if sort is not None and other[0] == "var" and other[1] not in sorts:
                    assign(other[1], sort)
                    changed = True

    for var in order:
        if var not in sorts:
            if len(signature.sorts) == 1:
                sorts[var] = signature.sorts[0]
            else:
                raise TheoryValidationError(f"cannot infer the sort of variable '{var}'; give an explicit context")
    return tuple((var, sorts[var]) for var in order)

"""Independent propositional oracle: presentations as sympy boolean formulas."""

from typing import Dict, Tuple

from sympy import And, Implies, Not, Or, Symbol
from sympy.logic.inference import satisfiable

from .base import DNF, MeetTerm, Presentation, Sequent


def _symbols(pres: Presentation) -> Dict[str, Symbol]:
    return {g.id: Symbol(f"g{i}") for i, g in enumerate(pres.generators)}


def _term(term: MeetTerm, symbols: Dict[str, Symbol]):
    return And(*(symbols[g] for g in sorted(term)))


def _dnf(dnf: DNF, symbols: Dict[str, Symbol]):
    return Or(*(_term(t, symbols) for t in sorted(dnf, key=sorted)))


def to_sympy(pres: Presentation) -> Tuple[Dict[str, Symbol], object]:
    symbols = _symbols(pres)
    theory = And(*(Implies(_term(r.lhs, symbols), _dnf(r.rhs, symbols)) for r in pres.relations))
    return symbols, theory


def entails_sympy(pres: Presentation, seq: Sequent) -> bool:
    symbols, theory = to_sympy(pres)
    refutation = And(theory, _term(seq.lhs, symbols), Not(_dnf(seq.rhs, symbols)))
    return satisfiable(refutation) is False

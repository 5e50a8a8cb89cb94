"""
Lowering theory formulas to DNF over the object-layer generators.
"""

import itertools
from typing import Callable, Iterator, Mapping, Optional, Sequence, Tuple

from presentations import BOTTOM, DNF, TOP, dnf_atom, dnf_join_all, dnf_meet, dnf_meet_all
from theory_dsl import And, Eq, Exists, Fals, Formula, Or, Rel, Tru
from theory_dsl.syntax import Context
from utils.errors import ClassifierError

from .params import ParameterSet, rel_id, sim_id

Rename = Callable[[str], str]


def _same(gid: str) -> str:
    return gid


def lower_formula(
    formula: Formula,
    params: ParameterSet,
    assignment: Mapping[str, str],
    rename: Optional[Rename] = None,
) -> DNF:
    """
    φ_{p⃗}: relation atoms become [(p⃗) ∈ R], equalities [p ∼ q], ∧/∨ meet
    and join, and ∃x:A.φ the join over p of [p ∼ᴬ p] ∧ φ[x := p].

    `assignment` maps the free variables to parameter tokens; `rename` is
    applied to every generator id (used to lower into a copy of the layer).
    """
    rename = rename or _same

    def go(f: Formula, env: Mapping[str, str]) -> DNF:
        if isinstance(f, Tru):
            return TOP
        if isinstance(f, Fals):
            return BOTTOM
        if isinstance(f, Rel):
            return dnf_atom(rename(rel_id(f.name, (_value(env, v) for v in f.args))))
        if isinstance(f, Eq):
            return dnf_atom(rename(sim_id(f.sort, _value(env, f.left), _value(env, f.right))))
        if isinstance(f, And):
            return dnf_meet(*(go(item, env) for item in f.items))
        if isinstance(f, Or):
            return dnf_join_all(go(item, env) for item in f.items)
        if isinstance(f, Exists):
            return dnf_join_all(
                dnf_meet(dnf_atom(rename(sim_id(f.sort, p, p))), go(f.body, {**env, f.var: p}))
                for p in params.tokens
            )
        raise ClassifierError(f"cannot lower {f!r}")

    return go(formula, assignment)


def _value(env: Mapping[str, str], var: str) -> str:
    try:
        return env[var]
    except KeyError:
        raise ClassifierError(f"variable '{var}' has no parameter assigned") from None


def lower_in_context(
    formula: Formula,
    params: ParameterSet,
    context: Context,
    values: Sequence[str],
    rename: Optional[Rename] = None,
) -> DNF:
    """Lower with the context variables bound positionally to `values`."""
    if len(values) != len(context):
        raise ClassifierError(f"context has {len(context)} variables but {len(values)} parameters were given")
    return lower_formula(formula, params, {var: p for (var, _), p in zip(context, values)}, rename)


def context_tuples(params: ParameterSet, context: Context) -> Iterator[Tuple[str, ...]]:
    return itertools.product(params.tokens, repeat=len(context))


def support_guard(context: Context, values: Sequence[str], rename: Optional[Rename] = None) -> DNF:
    """⋀ᵢ [pᵢ ∼ pᵢ] for the context sorts."""
    rename = rename or _same
    return dnf_meet_all(dnf_atom(rename(sim_id(sort, p, p))) for (_, sort), p in zip(context, values))


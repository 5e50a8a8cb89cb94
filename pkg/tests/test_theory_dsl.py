"""
Tests for the theory DSL: parsing, validation, printing and theory rewrites.
"""

import sys
from pathlib import Path

import pytest

# Add project root to path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from theory_dsl import (  # noqa: E402
    And,
    Eq,
    Exists,
    Fals,
    Or,
    Orientation,
    Rel,
    Tru,
    conj,
    disj,
    disjoint_union,
    free_variables,
    load_theory,
    parse_theory,
    pretty_print,
    singlesort,
)
from utils.errors import TheoryParseError, TheoryValidationError  # noqa: E402

CORPUS = project_root / "corpus"


class TestParser:
    """Test parsing of `.gth` sources."""

    def test_objects(self):
        """The theory of objects has one sort and nothing else."""
        theory = load_theory(CORPUS / "objects.gth")
        assert theory.name == "O"
        assert theory.sorts == ("X",)
        assert theory.relations == ()
        assert theory.axioms == ()
        assert theory.orientation == Orientation.LH

    def test_pointed_axioms(self):
        """Explicit contexts are kept and equalities get their sort."""
        theory = load_theory(CORPUS / "pointed.gth")
        existence, uniqueness = theory.axioms
        assert existence.context == ()
        assert existence.lhs == Tru()
        assert existence.rhs == Exists("x", "X", Rel("pt", ("x",)))
        assert uniqueness.context == (("x", "X"), ("y", "X"))
        assert uniqueness.lhs == And((Rel("pt", ("x",)), Rel("pt", ("y",))))
        assert uniqueness.rhs == Eq("X", "x", "y")

    def test_nullary_relation(self):
        """A relation declared without arguments is used as `on()`."""
        theory = load_theory(CORPUS / "flagged.gth")
        assert theory.arity("on") == ()
        assert theory.axioms[0].lhs == Rel("on", ())

    def test_inferred_context(self):
        """Sorts of an axiom without a context come from relation positions, in first-occurrence order."""
        theory = parse_theory("theory G { sort V; rel E(V, V); axiom E(x, y) |- E(y, x); }")
        assert theory.axioms[0].context == (("x", "V"), ("y", "V"))

    def test_inferred_context_through_equality(self):
        """An equality propagates a known sort to the other side."""
        theory = parse_theory("theory P { sort X; sort Y; rel p(X); axiom p(x) & x = z |- false; }")
        assert theory.axioms[0].context == (("x", "X"), ("z", "X"))

    def test_comments_and_orientation(self):
        """Both comment styles are skipped and the orientation is read."""
        text = """
        # leading comment
        theory C {
            sort X; // trailing comment
            orientation PS;
        }
        """
        theory = parse_theory(text)
        assert theory.orientation == Orientation.PS

    def test_disjunction_and_turnstile(self):
        """`|` is a disjunction and does not swallow `|-`."""
        theory = parse_theory("theory D { sort X; rel a(X); rel b(X); axiom [x:X]: true |- a(x) | b(x); }")
        assert theory.axioms[0].rhs == Or((Rel("a", ("x",)), Rel("b", ("x",))))

    def test_parse_error_location(self):
        """A missing semicolon is reported at the next declaration."""
        with pytest.raises(TheoryParseError) as info:
            load_theory(CORPUS / "bad.gth")
        assert info.value.line == 4
        assert info.value.column >= 1

    def test_keyword_is_not_a_name(self):
        """Keywords cannot be used as sort names."""
        with pytest.raises(TheoryParseError):
            parse_theory("theory K { sort exists; }")


class TestValidation:
    """Test theory validation."""

    def test_unknown_sort_in_relation(self):
        """A relation over an undeclared sort is rejected."""
        with pytest.raises(TheoryValidationError):
            parse_theory("theory T { sort X; rel R(Y); }")

    def test_arity_mismatch(self):
        """A relation applied to the wrong number of arguments is rejected."""
        with pytest.raises(TheoryValidationError):
            parse_theory("theory T { sort X; rel R(X); axiom [x:X]: R(x, x) |- true; }")

    def test_unbound_variable(self):
        """Variables outside the declared context are rejected."""
        with pytest.raises(TheoryValidationError):
            parse_theory("theory T { sort X; rel R(X); axiom [x:X]: R(y) |- true; }")

    def test_equality_across_sorts(self):
        """Equality needs both sides at the same sort."""
        with pytest.raises(TheoryValidationError):
            parse_theory("theory T { sort A, B; axiom [a:A, b:B]: a = b |- false; }")

    def test_duplicate_relation(self):
        """Relation names are unique."""
        with pytest.raises(TheoryValidationError):
            parse_theory("theory T { sort X; rel R(X); rel R(X, X); }")


class TestPrinter:
    """Test canonical printing."""

    @pytest.mark.parametrize("name", ["objects", "pointed", "graphs_sym", "inhabited", "flagged", "two_sorted"])
    def test_round_trip(self, name):
        """Printing and re-parsing gives back the same theory."""
        theory = load_theory(CORPUS / f"{name}.gth")
        assert parse_theory(pretty_print(theory)) == theory

    def test_explicit_context(self):
        """Printed axioms always carry their context."""
        text = pretty_print(load_theory(CORPUS / "graphs_sym.gth"))
        assert "axiom [x:V, y:V]: E(x, y) |- E(y, x);" in text
        assert text.endswith("}\n")


class TestFormulas:
    """Test formula helpers."""

    def test_conj_collapses(self):
        """conj drops `true`, absorbs into `false`, and unwraps singletons."""
        a = Rel("a", ("x",))
        assert conj() == Tru()
        assert conj(Tru(), a) == a
        assert conj(a, Fals()) == Fals()

    def test_disj_collapses(self):
        """disj drops `false` and absorbs into `true`."""
        a = Rel("a", ("x",))
        assert disj() == Fals()
        assert disj(Fals(), a) == a
        assert disj(a, Tru()) == Tru()

    def test_free_variables(self):
        """Bound variables are excluded; order is first occurrence."""
        f = conj(Rel("E", ("y", "x")), Exists("z", "V", Rel("E", ("z", "y"))))
        assert free_variables(f) == ["y", "x"]


class TestTransforms:
    """Test singlesort and disjoint unions."""

    def test_singlesort_two_sorted(self):
        """Two sorts become one universe with a predicate per old sort."""
        single = singlesort(load_theory(CORPUS / "two_sorted.gth"))
        assert single.sorts == ("Univ",)
        assert [r.name for r in single.relations] == ["U_A", "U_B", "R"]
        assert single.arity("R") == ("Univ", "Univ")
        # covering, disjointness, typing of R
        assert len(single.axioms) == 3
        assert single.axioms[1].rhs == Fals()

    def test_singlesort_single_sort_unchanged(self):
        """A one-sorted theory comes back as is."""
        theory = load_theory(CORPUS / "pointed.gth")
        assert singlesort(theory) is theory

    def test_singlesort_relativises_existentials(self):
        """Existentials range over the predicate of their old sort."""
        theory = parse_theory("theory T { sort A, B; rel p(A); axiom |- exists a:A. p(a); }")
        single = singlesort(theory)
        rhs = single.axioms[-1].rhs
        assert rhs == Exists("a", "Univ", And((Rel("U_A", ("a",)), Rel("p", ("a",)))))

    def test_disjoint_union(self):
        """Sorts and relations are prefixed by the tags; axioms are carried along."""
        left = load_theory(CORPUS / "objects.gth")
        right = load_theory(CORPUS / "pointed.gth")
        union = disjoint_union(left, right, ("L", "R"))
        assert union.sorts == ("L_X", "R_X")
        assert [r.name for r in union.relations] == ["R_pt"]
        assert len(union.axioms) == 2

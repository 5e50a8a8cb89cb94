"""
Tests for finite internal categories, functors, sheaves, descent and anafunctors.
"""

import logging
import sys
from pathlib import Path

import numpy as np
import pytest

# Add project root to path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from internal_cat import (  # noqa: E402
    Anafunctor,
    FiniteCategory,
    InternalFunctor,
    SheafAction,
    action_to_dofib,
    action_violations,
    check_action,
    check_category,
    check_dofib,
    check_functor,
    check_transformation,
    compose_anafunctors,
    compose_functors,
    core,
    core_inclusion,
    descend_dofib,
    dofib_to_action,
    enumerate_functors,
    enumerate_transformations,
    factor_through_core,
    find_action_iso,
    functor_as_anafunctor,
    identity_anafunctor,
    identity_functor,
    identity_transformation,
    is_fully_faithful,
    is_isomorphism,
    is_surjective_on_objects,
    named_category,
    preorder_category,
    pullback_categories,
    pullback_sheaf,
    sh_of_transformation,
    sheaf_morphism_violations,
    terminal_category,
    transformation_violations,
    two_cell_canonical,
)
from internal_cat.random_instances import (  # noqa: E402
    random_action,
    random_fattening,
    random_functor,
    random_preorder,
    random_two_cell_datum,
)
from utils.errors import ActionAxiomError, CategoryAxiomError, CategoryError, DescentError, FunctorError  # noqa: E402


def terminal_sheaf(H: FiniteCategory) -> SheafAction:
    """One element over each object; every arrow moves it to the next fiber."""
    elements = tuple(("1", x) for x in H.objects)
    p = {("1", x): x for x in H.objects}
    beta = {(("1", H.s[g]), g): ("1", H.t[g]) for g in H.arrows}
    return SheafAction(H, elements, p, beta, "1")


def representable(H: FiniteCategory, x) -> SheafAction:
    """Hom(x, -) acting by postcomposition."""
    elements = tuple(H.arrows_from(x))
    p = {f: H.t[f] for f in elements}
    beta = {(f, g): H.m[(f, g)] for f in elements for g in H.arrows_from(H.t[f])}
    return SheafAction(H, elements, p, beta, f"Hom({x}, -)")


def constant(H: FiniteCategory, K: FiniteCategory, k) -> InternalFunctor:
    return InternalFunctor(H, K, {x: k for x in H.objects}, {f: K.e[k] for f in H.arrows}, f"const_{k}")


class TestCategories:
    """Test the category tables and their axioms."""

    def test_named(self):
        """The named test categories have the expected shape."""
        assert len(named_category("terminal").arrows) == 1
        codiscrete = named_category("codiscrete2")
        assert len(codiscrete.arrows) == 4
        assert codiscrete.is_groupoid
        arrow = named_category("arrow")
        assert len(arrow.arrows) == 3
        assert not arrow.is_groupoid
        with pytest.raises(ValueError):
            named_category("pentagon")

    def test_preorder_closure(self):
        """The preorder is closed under transitivity."""
        C = preorder_category(("a", "b", "c"), [("a", "b"), ("b", "c")])
        assert C.hom("a", "c") == [("a", "c")]
        assert C.hom("c", "a") == []
        assert C.compose(("a", "b"), ("b", "c")) == ("a", "c")
        assert check_category(C) is C

    @pytest.mark.parametrize("name", ["terminal", "codiscrete2", "arrow"])
    def test_named_satisfy_axioms(self, name):
        """Every named category passes the axiom check."""
        check_category(named_category(name))

    def test_random_preorders_satisfy_axioms(self):
        """Seeded random preorders are categories."""
        rng = np.random.default_rng(11)
        for n in range(1, 5):
            check_category(random_preorder(rng, n))

    def test_broken_unit(self):
        """A composition table that ignores the identity is rejected."""
        C = named_category("arrow")
        m = dict(C.m)
        m[(("a", "a"), ("a", "b"))] = ("a", "a")
        broken = FiniteCategory(C.objects, C.arrows, C.s, C.t, C.e, m, C.i, "broken")
        with pytest.raises(CategoryAxiomError) as info:
            check_category(broken)
        assert info.value.violations


class TestFunctors:
    """Test functors, their properties and their enumeration."""

    def test_enumerate_points_of_arrow(self):
        """Functors from the terminal category pick an object."""
        functors = enumerate_functors(terminal_category(), named_category("arrow"))
        assert sorted(F.obj("*") for F in functors) == ["a", "b"]

    def test_enumerate_endofunctors_of_arrow(self):
        """The arrow category has three endofunctors: two constants and the identity."""
        arrow = named_category("arrow")
        functors = enumerate_functors(arrow, arrow)
        assert len(functors) == 3
        assert sum(is_isomorphism(F) for F in functors) == 1

    def test_identity_and_compose(self):
        """Composing with the identity changes nothing."""
        C = named_category("codiscrete2")
        F = check_functor(identity_functor(C))
        G = compose_functors(F, F)
        assert G.on_objects == F.on_objects
        assert G.on_arrows == F.on_arrows

    def test_broken_functor(self):
        """A map that does not respect sources is not a functor."""
        arrow = named_category("arrow")
        F = InternalFunctor(
            arrow,
            arrow,
            {"a": "a", "b": "b"},
            {("a", "a"): ("a", "a"), ("b", "b"): ("b", "b"), ("a", "b"): ("a", "a")},
        )
        with pytest.raises(FunctorError):
            check_functor(F)

    def test_fully_faithful(self):
        """Collapsing the codiscrete category is ff; collapsing the arrow is not full."""
        terminal = terminal_category()
        collapse = enumerate_functors(named_category("codiscrete2"), terminal)[0]
        assert is_fully_faithful(collapse)
        assert is_surjective_on_objects(collapse)
        squash = enumerate_functors(named_category("arrow"), terminal)[0]
        assert not is_fully_faithful(squash)

    def test_transformations(self):
        """There is one transformation const_a ⇒ const_b and none backwards."""
        terminal, arrow = terminal_category(), named_category("arrow")
        to_a, to_b = constant(terminal, arrow, "a"), constant(terminal, arrow, "b")
        assert len(enumerate_transformations(to_a, to_b)) == 1
        assert enumerate_transformations(to_b, to_a) == []
        ident = check_transformation(identity_transformation(to_a))
        assert transformation_violations(ident) == []

    def test_pullback(self):
        """The pullback of two points is a point when they agree, empty otherwise."""
        terminal, arrow = terminal_category(), named_category("arrow")
        to_a, to_b = constant(terminal, arrow, "a"), constant(terminal, arrow, "b")
        P, pi1, pi2 = pullback_categories(to_a, to_a)
        assert P.objects == (("*", "*"),)
        check_category(P)
        check_functor(pi1)
        check_functor(pi2)
        empty, _, _ = pullback_categories(to_a, to_b)
        assert empty.objects == ()


class TestCore:
    """Test the core groupoid."""

    def test_core_of_arrow(self):
        """Only identities are invertible in the arrow category."""
        K = core(named_category("arrow"))
        assert len(K.arrows) == 2
        assert K.is_groupoid
        check_category(K)

    def test_core_of_groupoid(self):
        """The core of a groupoid keeps every arrow."""
        C = named_category("codiscrete2")
        K = core(C)
        assert len(K.arrows) == len(C.arrows)
        inclusion = check_functor(core_inclusion(C, K))
        assert is_fully_faithful(inclusion)

    def test_factor_through_core(self):
        """A functor out of a groupoid lands in the core."""
        C = named_category("codiscrete2")
        K = core(C)
        J = identity_functor(C)
        factored = check_functor(factor_through_core(J, K))
        composite = compose_functors(factored, core_inclusion(C, K))
        assert composite.on_arrows == J.on_arrows

    def test_factor_needs_groupoid_source(self):
        """Only functors out of groupoids factor."""
        C = named_category("arrow")
        with pytest.raises(FunctorError):
            factor_through_core(identity_functor(C), core(C))


class TestSheaves:
    """Test actions, discrete opfibrations and their pullbacks."""

    def test_terminal_and_representable(self):
        """The terminal sheaf and representables satisfy the action axioms."""
        for name in ("terminal", "codiscrete2", "arrow"):
            H = named_category(name)
            check_action(terminal_sheaf(H))
            for x in H.objects:
                assert action_violations(representable(H, x)) == []

    def test_broken_action(self):
        """An action that is not total is rejected."""
        H = named_category("arrow")
        a = terminal_sheaf(H)
        beta = dict(a.beta)
        del beta[(("1", "a"), ("a", "b"))]
        with pytest.raises(ActionAxiomError):
            check_action(SheafAction(H, a.elements, a.p, beta))

    def test_dofib_round_trip(self):
        """Action to opfibration and back recovers the action."""
        H = named_category("arrow")
        a = representable(H, "a")
        X = check_dofib(action_to_dofib(a))
        back = dofib_to_action(X)
        assert set(back.elements) == set(a.elements)
        assert back.beta == a.beta

    def test_find_iso(self):
        """Hom(a, -) is the terminal sheaf over the arrow; Hom(b, -) is not."""
        H = named_category("arrow")
        assert find_action_iso(representable(H, "a"), terminal_sheaf(H)) is not None
        assert find_action_iso(representable(H, "b"), terminal_sheaf(H)) is None

    def test_pullback_along_identity(self):
        """Pulling back along the identity gives an isomorphic action."""
        H = named_category("codiscrete2")
        a = representable(H, "x")
        pulled = pullback_sheaf(identity_functor(H), a)
        check_action(pulled)
        assert find_action_iso(pulled, a) is not None

    def test_sheaf_of_transformation(self):
        """const_a ⇒ const_b moves the element over a to the element over b."""
        terminal, arrow = terminal_category(), named_category("arrow")
        tau = enumerate_transformations(constant(terminal, arrow, "a"), constant(terminal, arrow, "b"))[0]
        f = sh_of_transformation(tau, terminal_sheaf(arrow))
        assert sheaf_morphism_violations(f) == []
        assert f.mapping == {("*", ("1", "a")): ("*", ("1", "b"))}


class TestDescent:
    """Test descent of discrete opfibrations along ff surjections."""

    def test_descend_terminal(self):
        """The terminal sheaf over codiscrete2 descends to one element."""
        H = named_category("codiscrete2")
        Phi = enumerate_functors(H, terminal_category())[0]
        result = descend_dofib(Phi, action_to_dofib(terminal_sheaf(H)))
        assert len(result.action.elements) == 1
        assert set(result.witness) == {("1", "x"), ("1", "y")}
        check_dofib(result.descended)

    def test_descend_logs_class_count(self, caplog):
        """The debug log records how many elements collapse to how many classes."""
        H = named_category("codiscrete2")
        Phi = enumerate_functors(H, terminal_category())[0]
        with caplog.at_level(logging.DEBUG, logger="internal_cat.descent"):
            descend_dofib(Phi, action_to_dofib(terminal_sheaf(H)))
        assert "descent: 2 elements collapse to 1 classes" in caplog.text

    def test_descend_fattening(self):
        """Sheaves pulled back to a random fattening descend to something isomorphic."""
        rng = np.random.default_rng(5)
        K = random_preorder(rng, 3)
        middle, Phi = random_fattening(rng, K)
        a = random_action(rng, K)
        result = descend_dofib(Phi, action_to_dofib(pullback_sheaf(Phi, a)))
        assert find_action_iso(result.action, a) is not None

    def test_not_fully_faithful(self):
        """Collapsing the arrow category is not full, so nothing descends."""
        H = named_category("arrow")
        Phi = enumerate_functors(H, terminal_category())[0]
        with pytest.raises(DescentError):
            descend_dofib(Phi, action_to_dofib(terminal_sheaf(H)))


class TestAnafunctors:
    """Test anafunctors and canonical 2-cells."""

    def test_left_leg_must_be_ff(self):
        """A left leg that is not fully faithful is rejected."""
        H = named_category("arrow")
        squash = enumerate_functors(H, terminal_category())[0]
        with pytest.raises(CategoryError):
            Anafunctor(squash, identity_functor(H))

    def test_compose_with_identity(self):
        """Composing with the identity anafunctor keeps the endpoints."""
        terminal, arrow = terminal_category(), named_category("arrow")
        F = functor_as_anafunctor(constant(terminal, arrow, "b"))
        composite = compose_anafunctors(identity_anafunctor(terminal), F)
        assert composite.domain == terminal
        assert composite.codomain == arrow
        assert composite.right.obj(composite.middle.objects[0]) == "b"

    def test_random_two_cells_factor(self):
        """Seeded raw 2-cells factor through the pullback of the left legs."""
        for seed in range(8):
            datum = random_two_cell_datum(np.random.default_rng(seed))
            if datum is None:
                continue
            check_transformation(two_cell_canonical(datum))


class TestRandomInstances:
    """Test the seeded generators."""

    def test_fattening_is_ff_surjection(self):
        """The projection of a fattening is fully faithful and surjective."""
        rng = np.random.default_rng(2)
        K = random_preorder(rng, 3)
        middle, Phi = random_fattening(rng, K)
        check_category(middle)
        assert is_fully_faithful(Phi)
        assert is_surjective_on_objects(Phi)

    def test_random_action_and_functor(self):
        """Random actions satisfy the axioms; random functors are functors."""
        rng = np.random.default_rng(9)
        H = random_preorder(rng, 3)
        check_action(random_action(rng, H))
        check_functor(random_functor(rng, H, named_category("arrow")))

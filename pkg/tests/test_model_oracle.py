"""
Tests for the brute-force model oracle and its agreement with the classifier.
"""

import sys
from pathlib import Path

import pytest

# Add project root to path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from classifier import ParameterSet, build_classifier  # noqa: E402
from internal_cat import check_category, identity_functor, named_category  # noqa: E402
from model_oracle import (  # noqa: E402
    PERModel,
    base_change,
    bundle_model_violations,
    certify_layer,
    compose_model_homs,
    constant_bundle_model,
    decode_point,
    encode_model,
    enumerate_homs,
    enumerate_isos,
    enumerate_models,
    enumerate_models_over,
    find_bundle_model_iso,
    generic_bundle_model,
    identity_model_hom,
    interpret_formula,
    invert_model_hom,
    iso_classes,
    model_category,
    model_violations,
    parse_layer,
    set_model_as_bundle,
    singlesort_equivalence,
    structure_checks,
    theta_checks,
)
from presentations import enumerate_points  # noqa: E402
from theory_dsl import Exists, Rel, load_theory  # noqa: E402

CORPUS = project_root / "corpus"


@pytest.fixture(scope="module")
def objects_theory():
    return load_theory(CORPUS / "objects.gth")


@pytest.fixture(scope="module")
def objects_models(objects_theory):
    return enumerate_models(objects_theory, ParameterSet.of_size(2))


@pytest.fixture(scope="module")
def objects_bundle(objects_theory):
    return build_classifier(objects_theory, ParameterSet.of_size(2))


@pytest.fixture(scope="module")
def graph():
    """The edge between 0 and 1 as a model of symmetric graphs."""
    theory = load_theory(CORPUS / "graphs_sym.gth")
    return PERModel.from_classes(
        theory, ParameterSet.of_size(2), {"V": [["0"], ["1"]]}, {"E": [("0", "1"), ("1", "0")]}
    )


class TestModels:
    """Test model enumeration."""

    def test_objects_counts(self, objects_theory, objects_models):
        """Five models over two parameters, two over one, one over none."""
        assert len(objects_models) == 5
        assert len(enumerate_models(objects_theory, ParameterSet.of_size(1))) == 2
        (empty,) = enumerate_models(objects_theory, ParameterSet.of_size(0))
        assert empty.describe() == "empty model"

    def test_inhabited(self):
        """The empty model is excluded by the existence axiom."""
        theory = load_theory(CORPUS / "inhabited.gth")
        assert len(enumerate_models(theory, ParameterSet.of_size(2))) == 4

    def test_asymmetric_graph_fails(self):
        """A one-way edge violates the symmetry axiom."""
        theory = load_theory(CORPUS / "graphs_sym.gth")
        model = PERModel.from_classes(theory, ParameterSet.of_size(2), {"V": [["0"], ["1"]]}, {"E": [("0", "1")]})
        assert [v.equation for v in model_violations(model)] == ["axiom 0"]
        assert model_violations(model, axioms=False) == []

    def test_to_dict(self, graph):
        """Classes and relation tuples are listed by representatives."""
        data = graph.to_dict()
        assert data["classes"] == {"V": [["0"], ["1"]]}
        assert data["relations"]["E"] == [["0", "1"], ["1", "0"]]


class TestHoms:
    """Test homomorphisms between models."""

    def test_counts(self, objects_models):
        """27 homomorphisms and 12 isomorphisms among the five models."""
        homs = [h for M in objects_models for N in objects_models for h in enumerate_homs(M, N)]
        isos = [h for M in objects_models for N in objects_models for h in enumerate_isos(M, N)]
        assert len(homs) == 27
        assert len(isos) == 12

    def test_iso_classes(self, objects_models):
        """Models group by the size of their carrier."""
        assert len(iso_classes(objects_models)) == 3

    def test_identity_and_inverse(self, objects_models):
        """An iso composed with its inverse is the identity."""
        M = objects_models[-1]
        for h in enumerate_isos(M, M):
            assert compose_model_homs(h, invert_model_hom(h)) == identity_model_hom(M)


class TestInterpretation:
    """Test formula interpretation in a set-model."""

    def test_relation(self, graph):
        """E(x, y) is the set of edges."""
        rows = interpret_formula(graph, Rel("E", ("x", "y")), (("x", "V"), ("y", "V")))
        assert rows == {(("0",), ("1",)), (("1",), ("0",))}

    def test_exists(self, graph):
        """Every vertex has a neighbour."""
        rows = interpret_formula(graph, Exists("y", "V", Rel("E", ("x", "y"))), (("x", "V"),))
        assert rows == {(("0",),), (("1",),)}

    def test_inferred_context(self, graph):
        """Without a context the free variables are typed from the formula."""
        assert len(interpret_formula(graph, Rel("E", ("x", "y")))) == 2


class TestClassifierAgreement:
    """Test that classifier points read back as the oracle's models."""

    @pytest.mark.parametrize("layer", ["objects", "arrows", "core", "E:X"])
    def test_certify(self, objects_bundle, layer):
        """Points and oracle items are in bijection on every layer."""
        cert = certify_layer(objects_bundle, layer)
        assert cert.passed, cert.problems
        assert cert.to_dict()["passed"]

    def test_unknown_layer(self, objects_bundle):
        """Layer names are checked."""
        with pytest.raises(ValueError):
            parse_layer(objects_bundle, "E:Y")

    def test_first_point_is_empty(self, objects_bundle):
        """The all-false point is the empty model."""
        first = enumerate_points(objects_bundle.g0)[0]
        assert decode_point(objects_bundle, first, "objects").describe() == "empty model"

    def test_encode_decode(self, objects_bundle, objects_models):
        """Encoding a model gives the point that decodes to it."""
        for M in objects_models:
            assert decode_point(objects_bundle, encode_model(objects_bundle, M), "objects") == M

    def test_structure_maps(self, objects_bundle):
        """s, t, e, m, i and θ read as the expected operations on models."""
        assert not any(structure_checks(objects_bundle).values())
        assert not any(structure_checks(objects_bundle, core=True).values())
        assert theta_checks(objects_bundle, "X") == []

    def test_generic_model(self, objects_bundle):
        """The generic model over the point category has one element per E_X point."""
        E = generic_bundle_model(objects_bundle)
        assert len(E.action("X").elements) == 5
        assert bundle_model_violations(E) == []


class TestBundleModels:
    """Test models over finite categories."""

    def test_constant_model(self, graph):
        """A set-model copied over every object is a model over the category."""
        H = named_category("codiscrete2")
        M = constant_bundle_model(H, graph)
        assert bundle_model_violations(M) == []
        assert M.max_fiber() == 2

    def test_base_change_along_identity(self, graph):
        """Pulling back along the identity gives an isomorphic model."""
        H = named_category("arrow")
        M = constant_bundle_model(H, graph)
        assert find_bundle_model_iso(base_change(identity_functor(H), M), M) is not None

    def test_set_model(self, graph):
        """A set-model is a model over the terminal category."""
        assert bundle_model_violations(set_model_as_bundle(graph)) == []

    def test_model_category(self, objects_theory):
        """Set-models and their homomorphisms form a category; the isomorphisms a groupoid."""
        params = ParameterSet.of_size(2)
        C = check_category(model_category(objects_theory, params))
        assert (len(C.objects), len(C.arrows)) == (5, 27)
        core = check_category(model_category(objects_theory, params, core=True))
        assert len(core.arrows) == 12
        assert core.is_groupoid

    @pytest.mark.parametrize("category,expected", [("terminal", 5), ("codiscrete2", 12), ("arrow", 27)])
    def test_models_over_category(self, objects_theory, category, expected):
        """Models over K are counted by functors into the set-models."""
        models = enumerate_models_over(named_category(category), objects_theory, ParameterSet.of_size(2))
        assert len(models) == expected
        assert all(bundle_model_violations(M) == [] for M in models)

    def test_models_over_with_relations(self):
        """Relations of each fiber are carried over and stay stable under the action."""
        theory = load_theory(CORPUS / "graphs_sym.gth")
        models = enumerate_models_over(named_category("arrow"), theory, ParameterSet.of_size(1))
        assert models
        assert all(bundle_model_violations(M) == [] for M in models)


class TestSinglesort:
    """Test the one-sorted reduction."""

    def test_two_sorted(self):
        """Models of the two-sorted theory match models of its one-sorted form."""
        report = singlesort_equivalence(load_theory(CORPUS / "two_sorted.gth"), ParameterSet.of_size(1))
        assert report.passed, report.problems

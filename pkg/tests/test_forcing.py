"""
Tests for forcing locales, representing anafunctors and the ζ check.
"""

import sys
from pathlib import Path

import pytest

# Add project root to path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from classifier import ParameterSet, build_classifier  # noqa: E402
from forcing import (  # noqa: E402
    basis_open_check,
    build_representing_anafunctor,
    decode_partial_surjection,
    encode_partial_surjection,
    enumerate_partial_surjections,
    explicit_fiber_iso,
    forcing_id,
    gen_forcing_presentation,
    joint_forcing_presentation,
    verify_pullback_iso,
    verify_zeta,
)
from internal_cat import is_fully_faithful, is_surjective_on_objects, named_category, terminal_category  # noqa: E402
from model_oracle import (  # noqa: E402
    PERModel,
    constant_bundle_model,
    enumerate_homs,
    enumerate_models,
    enumerate_models_over,
    is_bundle_model_iso,
    set_model_as_bundle,
)
from presentations import count_points, enumerate_points  # noqa: E402
from theory_dsl import load_theory  # noqa: E402
from utils.errors import ForcingError  # noqa: E402

CORPUS = project_root / "corpus"


@pytest.fixture(scope="module")
def objects_theory():
    return load_theory(CORPUS / "objects.gth")


@pytest.fixture(scope="module")
def objects_bundle(objects_theory):
    return build_classifier(objects_theory, ParameterSet.of_size(2))


class TestForcingLocale:
    """Test the locale of partial surjections."""

    @pytest.mark.parametrize(
        "source,target,expected",
        [(["0", "1"], ["a", "b"], 2), (["0", "1"], [], 1), (["0", "1"], ["a"], 3), (["0"], ["a", "b"], 0)],
    )
    def test_point_counts(self, source, target, expected):
        """Points are the partial surjections, as counted directly."""
        L = gen_forcing_presentation(source, target)
        assert count_points(L.presentation) == expected
        assert len(enumerate_partial_surjections(source, target)) == expected

    def test_decode_encode(self):
        """Each point reads as a graph that encodes back to it."""
        L = gen_forcing_presentation(["0", "1", "2"], ["a", "b"])
        graphs = []
        for pt in enumerate_points(L.presentation):
            graph = decode_partial_surjection(L, pt)
            assert encode_partial_surjection(L, graph) == pt
            graphs.append(graph)
        assert sorted(map(sorted, (g.items() for g in graphs))) == sorted(
            map(sorted, (g.items() for g in enumerate_partial_surjections(["0", "1", "2"], ["a", "b"])))
        )

    def test_basis_opens(self):
        """A basic open is inhabited iff it is single-valued and leaves room to cover."""
        L = gen_forcing_presentation(["0", "1"], ["a", "b"])
        assert basis_open_check(L, frozenset({forcing_id("0", "a")}))
        assert not basis_open_check(L, frozenset({forcing_id("0", "a"), forcing_id("0", "b")}))
        assert not basis_open_check(L, frozenset({forcing_id("0", "a"), forcing_id("1", "a")}))
        crowded = gen_forcing_presentation(["0", "1"], ["a", "b", "c"])
        assert not basis_open_check(crowded, frozenset())

    def test_bad_labels(self):
        """Labels must not collide with the id scheme."""
        with pytest.raises(ForcingError):
            gen_forcing_presentation(["0:1"], ["a"])
        with pytest.raises(ForcingError):
            gen_forcing_presentation(["0", "0"], ["a"])

    def test_joint(self):
        """Sorts are forced side by side; the points multiply."""
        J = joint_forcing_presentation([("A", ["0", "1"], ["a"]), ("B", ["0", "1"], ["a", "b"])])
        assert count_points(J.presentation) == 3 * 2
        assert J.part("B").sort == "B"
        with pytest.raises(ForcingError):
            J.part("C")


class TestRepresentingAnafunctor:
    """Test the anafunctor representing a model over a category."""

    def test_one_element(self, objects_theory, objects_bundle):
        """A one-element set is presented by the three partial surjections onto it."""
        model = PERModel.from_classes(objects_theory, ParameterSet.of_size(2), {"X": [["0", "1"]]})
        M = constant_bundle_model(terminal_category(), model)
        anaf = build_representing_anafunctor(objects_bundle, M)
        assert len(anaf.middle.objects) == 3
        assert is_fully_faithful(anaf.left)
        assert is_surjective_on_objects(anaf.left)
        assert is_bundle_model_iso(verify_pullback_iso(anaf))

    def test_two_element_bijections(self, objects_theory, objects_bundle):
        """A two-element set over the point is presented by the two bijections from P."""
        model = PERModel.from_classes(objects_theory, ParameterSet.of_size(2), {"X": [["0"], ["1"]]})
        anaf = build_representing_anafunctor(objects_bundle, set_model_as_bundle(model))
        assert len(anaf.middle.objects) == 2
        for obj in anaf.middle.objects:
            assert sorted(anaf.sigma(obj, "X")) == ["0", "1"]
        assert is_bundle_model_iso(explicit_fiber_iso(anaf))

    def test_explicit_map_is_returned(self, objects_theory, objects_bundle):
        """The pullback isomorphism is the explicit fiber map itself."""
        model = PERModel.from_classes(objects_theory, ParameterSet.of_size(2), {"X": [["0"], ["1"]]})
        anaf = build_representing_anafunctor(objects_bundle, set_model_as_bundle(model))
        assert verify_pullback_iso(anaf) == explicit_fiber_iso(anaf)

    def test_empty_model(self, objects_theory, objects_bundle):
        """Over an empty model the middle category is the base itself and the iso is empty."""
        model = PERModel.from_classes(objects_theory, ParameterSet.of_size(2), {"X": []})
        H = named_category("arrow")
        anaf = build_representing_anafunctor(objects_bundle, constant_bundle_model(H, model))
        assert len(anaf.middle.objects) == len(H.objects)
        assert len(anaf.middle.arrows) == len(H.arrows)
        assert sorted(anaf.left.on_objects.values()) == sorted(H.objects)
        iso = verify_pullback_iso(anaf)
        assert iso.maps == {"X": {}}
        assert is_bundle_model_iso(iso)

    def test_non_constant_models(self, objects_theory, objects_bundle):
        """Every model over the free arrow, constant or not, has an explicit pullback iso."""
        models = enumerate_models_over(named_category("arrow"), objects_theory, ParameterSet.of_size(2))
        assert any(M.max_fiber() == 2 and min(len(M.fiber("X", x)) for x in M.base.objects) < 2 for M in models)
        for M in models:
            anaf = build_representing_anafunctor(objects_bundle, M)
            assert is_fully_faithful(anaf.left)
            assert is_surjective_on_objects(anaf.left)
            assert is_bundle_model_iso(verify_pullback_iso(anaf))

    def test_fiber_too_large(self, objects_theory, objects_bundle):
        """Fibers larger than P cannot be presented."""
        model = PERModel.from_classes(objects_theory, ParameterSet.of_size(3), {"X": [["0"], ["1"], ["2"]]})
        with pytest.raises(ForcingError):
            build_representing_anafunctor(objects_bundle, set_model_as_bundle(model))


class TestZeta:
    """Test the desk-scale equivalence check."""

    def test_terminal(self, objects_bundle):
        """Over the point, functors are the five models and all 25 pairs check out."""
        report = verify_zeta(objects_bundle, terminal_category())
        assert report.functors == 5
        assert report.pairs == 25
        assert report.models == 5
        assert report.passed, report.problems

    def test_core_terminal(self, objects_bundle):
        """The core variant over the point compares isomorphisms."""
        report = verify_zeta(objects_bundle, terminal_category(), core=True)
        assert report.passed, report.problems

    def test_core_needs_groupoid(self, objects_bundle):
        """The core variant refuses a base with non-invertible arrows."""
        report = verify_zeta(objects_bundle, named_category("arrow"), core=True)
        assert not report.passed
        assert not report.full_faithful

    def test_every_model_over_arrow(self, objects_theory, objects_bundle):
        """Over the free arrow every model that fits in P is checked: one per homomorphism of set-models."""
        params = ParameterSet.of_size(2)
        set_models = enumerate_models(objects_theory, params)
        homs = sum(len(enumerate_homs(M, N)) for M in set_models for N in set_models)
        assert homs == 27
        report = verify_zeta(objects_bundle, named_category("arrow"))
        assert report.functors == 27
        assert report.models == homs
        assert report.passed, report.problems

    def test_given_set_models(self, objects_theory, objects_bundle):
        """Passing set-models checks only those, taken constant over K."""
        set_models = enumerate_models(objects_theory, ParameterSet.of_size(2))[:2]
        report = verify_zeta(objects_bundle, terminal_category(), models=set_models)
        assert report.models == 2
        assert report.passed, report.problems

"""
Tests for classifier generation, the point category, bundle export and the
product check.
"""

import sys
from pathlib import Path

import pytest

# Add project root to path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from classifier import (  # noqa: E402
    ParameterSet,
    build_classifier,
    classifier_for,
    classifier_product_check,
    export_bundle,
    gen_action,
    gen_generic_bundle,
    load_bundle,
    point_category,
    rel_id,
    sim_id,
)
from internal_cat import check_category  # noqa: E402
from presentations import PresentationOrientation, count_points, enumerate_points  # noqa: E402
from theory_dsl import Orientation, load_theory  # noqa: E402
from utils.errors import BundleFormatError  # noqa: E402

CORPUS = project_root / "corpus"


@pytest.fixture(scope="module")
def objects_theory():
    return load_theory(CORPUS / "objects.gth")


@pytest.fixture(scope="module")
def objects_bundle(objects_theory):
    """The classifier of the theory of objects over |P| = 2."""
    return build_classifier(objects_theory, ParameterSet.of_size(2))


class TestParameterSet:
    """Test parameter sets."""

    def test_of_size(self):
        """Tokens are the decimal indices; the orientation picks the role."""
        params = ParameterSet.of_size(3)
        assert params.tokens == ("0", "1", "2")
        assert len(params) == 3
        assert params.role == "standsFor_N"
        assert ParameterSet.of_size(1, Orientation.PS).role == "standsFor_Cantor"

    def test_rejects_bad_tokens(self):
        """Duplicates and tokens that clash with generator ids are refused."""
        with pytest.raises(ValueError):
            ParameterSet(("a", "a"))
        with pytest.raises(ValueError):
            ParameterSet(("a:b",))
        with pytest.raises(ValueError):
            ParameterSet.of_size(-1)

    def test_ids(self):
        """Generator ids follow the fixed naming scheme."""
        assert sim_id("X", "0", "1") == "sim:X:0:1"
        assert rel_id("E", ["0", "1"]) == "rel:E:0,1"


class TestObjectsClassifier:
    """Test the classifier of the theory of objects."""

    def test_object_layer(self, objects_bundle):
        """Four ∼ generators and five partial equivalence relations on {0, 1}."""
        assert len(objects_bundle.g0) == 4
        assert count_points(objects_bundle.g0) == 5

    def test_arrow_layers(self, objects_bundle):
        """27 homomorphisms, 12 of them invertible."""
        assert count_points(objects_bundle.g1) == 27
        assert count_points(objects_bundle.g1_core) == 12

    def test_sort_bundle(self, objects_bundle):
        """E_X has one point per element of each model."""
        assert count_points(objects_bundle.sort_bundle("X").total) == 5
        with pytest.raises(KeyError):
            objects_bundle.sort_bundle("Y")

    def test_structure_maps_verified(self, objects_bundle):
        """Every generated structure map is a verified frame hom."""
        homs = objects_bundle.homs()
        assert {"s", "t", "e", "m", "i", "core_inclusion", "rho_X", "theta_X"} <= set(homs)
        assert all(spec.verified for spec in homs.values())

    def test_generic_bundle_alone(self, objects_theory):
        """The generic bundle and its action can be generated without the core."""
        params = ParameterSet.of_size(2)
        sorts, subs = gen_generic_bundle(objects_theory, params)
        assert set(sorts) == {"X"}
        assert subs == {}
        assert count_points(sorts["X"].total) == 5
        theta = gen_action(objects_theory, params)
        assert set(theta) == {"X"}
        assert theta["X"].verified

    def test_presentation_names(self, objects_bundle):
        """The bundle names every layer."""
        assert set(objects_bundle.presentations()) == {"g0", "g1", "g1g1", "g1_core", "g1g1_core", "E_X", "E_Xxg1"}

    @pytest.mark.parametrize("size,expected", [(0, 1), (1, 2)])
    def test_small_parameter_sets(self, objects_theory, size, expected):
        """The empty model always exists; |P| = 1 adds the one-element model."""
        bundle = classifier_for(objects_theory, size)
        assert count_points(bundle.g0) == expected

    def test_point_category(self, objects_bundle):
        """The points form a category whose core is a groupoid."""
        C = check_category(point_category(objects_bundle))
        assert len(C.objects) == 5
        assert len(C.arrows) == 27
        K = check_category(point_category(objects_bundle, core=True))
        assert len(K.arrows) == 12
        assert K.is_groupoid


class TestAxioms:
    """Test that axioms cut down the object layer."""

    def test_inhabited(self):
        """Requiring an element drops the empty model."""
        bundle = classifier_for(load_theory(CORPUS / "inhabited.gth"), 2)
        assert count_points(bundle.g0) == 4

    def test_relation_sublocale(self):
        """The sublocale of pt keeps only the points where pt holds somewhere."""
        bundle = classifier_for(load_theory(CORPUS / "pointed.gth"), 1)
        sub = bundle.relation_sublocale("pt")
        assert count_points(sub) == 1
        assert all(rel_id("pt", ["0"]) in pt.trueset for pt in enumerate_points(sub))


class TestOrientationParity:
    """Test that both parameter orientations generate the same presentations."""

    @pytest.mark.parametrize("name", ["objects", "pointed", "graphs_sym", "inhabited", "flagged", "two_sorted"])
    def test_layers_match(self, name):
        """Generators, relations and hom tables agree; only the orientation flag differs."""
        theory = load_theory(CORPUS / f"{name}.gth")
        lh = build_classifier(theory, ParameterSet.of_size(1, Orientation.LH))
        ps = build_classifier(theory, ParameterSet.of_size(1, Orientation.PS))
        lh_layers, ps_layers = lh.presentations(), ps.presentations()
        assert set(lh_layers) == set(ps_layers)
        for layer, pres in lh_layers.items():
            other = ps_layers[layer]
            assert pres.generators == other.generators, layer
            assert pres.relations == other.relations, layer
            assert pres.orientation == PresentationOrientation.OPEN
            assert other.orientation == PresentationOrientation.CLOSED
        ps_homs = ps.homs()
        for hom, spec in lh.homs().items():
            assert spec.mapping == ps_homs[hom].mapping, hom

    def test_point_counts_match(self, objects_theory):
        """The two readings have the same points at |P| = 2."""
        lh = build_classifier(objects_theory, ParameterSet.of_size(2, Orientation.LH))
        ps = build_classifier(objects_theory, ParameterSet.of_size(2, Orientation.PS))
        for layer in ("g0", "g1", "g1_core", "E_X"):
            assert count_points(lh.presentations()[layer]) == count_points(ps.presentations()[layer])


class TestExport:
    """Test the bundle JSON tree."""

    def test_round_trip(self, objects_bundle, tmp_path):
        """A written bundle loads back with every hom still verified."""
        root = export_bundle(objects_bundle, tmp_path / "bundle")
        assert (root / "manifest.json").exists()
        loaded = load_bundle(root)
        assert loaded.all_verified
        assert loaded.theory == objects_bundle.theory
        assert loaded.params == objects_bundle.params
        assert set(loaded.presentations) == set(objects_bundle.presentations())
        assert loaded.presentations["g0"].same_as(objects_bundle.g0)

    def test_corrupt_hom(self, objects_bundle, tmp_path):
        """A hom file that is not JSON is a format error."""
        root = export_bundle(objects_bundle, tmp_path / "bundle")
        (root / "homs" / "s.json").write_text("{", encoding="utf-8")
        with pytest.raises(BundleFormatError):
            load_bundle(root)

    def test_missing_manifest(self, tmp_path):
        """A directory without a manifest is not a bundle."""
        with pytest.raises(BundleFormatError):
            load_bundle(tmp_path)


class TestProduct:
    """Test the classifier of a disjoint union."""

    def test_objects_times_objects(self):
        """Points of the union are exactly the pairs of points, layer by layer."""
        theory = load_theory(CORPUS / "objects.gth")
        layers = classifier_product_check(theory, theory, ParameterSet.of_size(1))
        assert layers["objects"].union_points == 4
        assert layers["arrows"].union_points == 9
        assert all(layer.bijective for layer in layers.values())
        assert layers["objects"].to_dict()["layer"] == "objects"

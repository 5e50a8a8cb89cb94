"""
Tests for finite frame presentations: points, entailment, homs, constructions
and canonical JSON.
"""

import sys
from pathlib import Path

import numpy as np
import pytest

# Add project root to path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from presentations import (  # noqa: E402
    BOTTOM,
    TOP,
    Generator,
    Presentation,
    Sequent,
    Span,
    add_relations,
    canonical_presentation,
    check_frame_hom,
    compose_homs,
    count_points,
    countermodel,
    dnf_atom,
    entails,
    enumerate_points,
    expand_presentation,
    expansion_point_map,
    find_point,
    free_presentation,
    from_json,
    identity_hom,
    iso_check,
    make_hom,
    normalize,
    point_pushforward,
    points_matrix,
    to_canonical_json,
)
from presentations.sympy_bridge import entails_sympy  # noqa: E402
from utils.errors import (  # noqa: E402
    BundleFormatError,
    HomVerificationError,
    PresentationError,
    UndeclaredGeneratorError,
)
from verifiers import random_presentation  # noqa: E402

GOLDEN = Path(__file__).parent / "golden"


def chain() -> Presentation:
    """⟨a, b | a ⊢ b⟩: three points ∅, {b}, {a, b}."""
    return add_relations(free_presentation(["a", "b"], "chain"), [Sequent.of(["a"], [["b"]], "a<=b")])


class TestPoints:
    """Test point enumeration."""

    def test_sierpinski(self):
        """One generator and no relations: two points, the truth values."""
        points = enumerate_points(free_presentation(["g"]))
        assert [pt.trueset for pt in points] == [frozenset(), frozenset({"g"})]

    @pytest.mark.parametrize("size", [0, 1, 2, 3, 4])
    def test_canonical_presentation(self, size):
        """The canonical presentation of a finite set has one singleton point per element."""
        elements = "abcd"[:size]
        points = enumerate_points(canonical_presentation(list(elements)))
        assert len(points) == size
        assert sorted(pt.trueset for pt in points) == sorted(frozenset({f"eq:{x}"}) for x in elements)

    def test_ordered_by_mask(self):
        """Points come in increasing bitmask order."""
        points = enumerate_points(chain())
        assert [pt.mask for pt in points] == [0, 2, 3]
        assert count_points(chain()) == 3

    def test_find_point(self):
        """find_point honours true, false and forbidden meets."""
        pres = chain()
        assert find_point(pres, assume_true=["a"]).trueset == frozenset({"a", "b"})
        assert find_point(pres, assume_true=["a"], assume_false=["b"]) is None
        assert find_point(pres, forbid=[[]]) is None

    def test_points_matrix(self):
        """Rows are points, columns generators."""
        matrix = points_matrix(chain())
        assert matrix.shape == (3, 2)
        assert np.array_equal(matrix, np.array([[False, False], [False, True], [True, True]]))


class TestValidation:
    """Test presentation invariants."""

    def test_undeclared_generator(self):
        """Relations may only mention declared generators."""
        with pytest.raises(UndeclaredGeneratorError):
            Presentation((Generator.make("a"),), (Sequent.of(["a"], [["z"]]),))

    def test_duplicate_generator(self):
        """Generator ids are unique."""
        with pytest.raises(PresentationError):
            Presentation((Generator.make("a"), Generator.make("a")))

    def test_normalize_antichain(self):
        """Terms above another term are absorbed."""
        dnf = normalize([frozenset({"a"}), frozenset({"a", "b"}), frozenset({"c"})])
        assert dnf == frozenset({frozenset({"a"}), frozenset({"c"})})


class TestEntailment:
    """Test entailment by points, by saturation, and against sympy."""

    def test_canonical_entailments(self):
        """Distinct elements are disjoint and the elements cover."""
        pres = canonical_presentation(["a", "b"])
        assert entails(pres, Sequent(frozenset({"eq:a", "eq:b"}), BOTTOM))
        assert entails(pres, Sequent.of([], [["eq:a"], ["eq:b"]]))
        assert not entails(pres, Sequent.of([], [["eq:a"]]))

    def test_countermodel(self):
        """A refuted sequent comes with a refuting point."""
        pres = canonical_presentation(["a", "b"])
        refutation = countermodel(pres, Sequent.of([], [["eq:a"]]))
        assert refutation is not None
        assert refutation.trueset == frozenset({"eq:b"})

    def test_saturation_agrees(self):
        """The saturation prover decides the same sequents as the point search."""
        pres = canonical_presentation(["a", "b", "c"])
        queries = [
            Sequent.of([], [["eq:a"], ["eq:b"], ["eq:c"]]),
            Sequent.of(["eq:a"], [["eq:b"]]),
            Sequent(frozenset({"eq:a", "eq:c"}), BOTTOM),
            Sequent.of([], [["eq:a"], ["eq:b"]]),
        ]
        for q in queries:
            assert entails(pres, q, method="saturation") == entails(pres, q, method="points")

    def test_sympy_agrees(self):
        """The sympy oracle agrees with the point search."""
        pres = chain()
        for q in (Sequent.of(["a"], [["b"]]), Sequent.of(["b"], [["a"]]), Sequent.of([], [[]])):
            assert entails_sympy(pres, q) == entails(pres, q)

    def test_unknown_method(self):
        """Only `points` and `saturation` are accepted."""
        with pytest.raises(ValueError):
            entails(chain(), Sequent.of([], [[]]), method="tableaux")

    def test_undeclared_query(self):
        """Queries over undeclared generators are rejected."""
        with pytest.raises(UndeclaredGeneratorError):
            entails(chain(), Sequent.of(["zz"], [[]]))


class TestHoms:
    """Test frame hom specifications."""

    def test_verified_hom(self):
        """g ↦ [=a] is a hom from the free frame on g."""
        source = free_presentation(["g"])
        target = canonical_presentation(["a", "b"])
        hom = check_frame_hom(make_hom(source, target, {"g": dnf_atom("eq:a")}, "pick_a"))
        assert hom.verified
        assert hom.failure is None

    def test_failed_hom_has_countermodel(self):
        """Sending [=b] to ⊥ breaks the covering relation; the empty point refutes it."""
        source = canonical_presentation(["a", "b"])
        target = free_presentation(["h"])
        hom = check_frame_hom(make_hom(source, target, {"eq:a": dnf_atom("h"), "eq:b": BOTTOM}, "bad"))
        assert not hom.verified
        assert hom.failure.countermodel.trueset == frozenset()
        with pytest.raises(HomVerificationError):
            point_pushforward(hom, target.point([]))

    def test_not_total(self):
        """Every source generator needs an image."""
        with pytest.raises(PresentationError):
            make_hom(free_presentation(["g", "h"]), free_presentation(["x"]), {"g": TOP})

    def test_pushforward(self):
        """Points travel from target to source."""
        source = free_presentation(["g"])
        target = canonical_presentation(["a", "b"])
        hom = check_frame_hom(make_hom(source, target, {"g": dnf_atom("eq:a")}))
        assert point_pushforward(hom, target.point(["eq:a"])).trueset == frozenset({"g"})
        assert point_pushforward(hom, target.point(["eq:b"])).trueset == frozenset()

    def test_identity_is_iso(self):
        """The identity hom is its own inverse."""
        ident = identity_hom(chain())
        assert iso_check(ident, ident)

    def test_compose(self):
        """Composition substitutes images; pushforward composes backwards."""
        pres = chain()
        swap_to_top = check_frame_hom(make_hom(free_presentation(["g"]), pres, {"g": dnf_atom("b")}, "f"))
        ident = identity_hom(pres)
        composite = compose_homs(swap_to_top, ident)
        assert composite.verified
        assert composite.mapping["g"] == dnf_atom("b")


def random_mapping(rng: np.random.Generator, source: Presentation, target: Presentation):
    """Each source generator goes to a join of at most two meets of at most two target generators."""
    ids = list(target.ids)

    def term():
        size = int(rng.integers(0, 3))
        return frozenset(rng.choice(ids, size=min(size, len(ids)), replace=False).tolist())

    return {g: normalize(term() for _ in range(int(rng.integers(0, 3)))) for g in source.ids}


class TestRandomHoms:
    """Test frame homs between seeded random presentations."""

    def test_extra_target_relations_keep_homs_verified(self):
        """A verified hom stays verified after relations are added to its target."""
        rng = np.random.default_rng(11)
        verified = 0
        for k in range(40):
            source = random_presentation(rng, int(rng.integers(1, 4)), k % 3)
            target = random_presentation(rng, int(rng.integers(1, 4)), int(rng.integers(0, 3)))
            mapping = random_mapping(rng, source, target)
            hom = check_frame_hom(make_hom(source, target, mapping, f"h{k}"))
            if not hom.verified:
                continue
            verified += 1
            extra = random_presentation(rng, len(target), int(rng.integers(1, 3))).relations
            smaller = add_relations(target, extra)
            assert check_frame_hom(make_hom(source, smaller, mapping, f"h{k}")).verified
        assert verified > 0

    def test_pushforward_of_composite(self):
        """Pushing a point along g∘f is pushing along g, then along f."""
        rng = np.random.default_rng(5)
        checked = 0
        for k in range(30):
            a = random_presentation(rng, int(rng.integers(1, 4)), k % 2)
            b = random_presentation(rng, int(rng.integers(1, 4)), k % 2)
            c = random_presentation(rng, int(rng.integers(1, 4)), int(rng.integers(0, 3)))
            f = check_frame_hom(make_hom(a, b, random_mapping(rng, a, b), "f"))
            g = check_frame_hom(make_hom(b, c, random_mapping(rng, b, c), "g"))
            if not (f.verified and g.verified):
                continue
            composite = compose_homs(f, g)
            assert composite.verified
            assert check_frame_hom(composite).verified
            for pt in enumerate_points(c):
                direct = point_pushforward(composite, pt).trueset
                stepwise = point_pushforward(f, point_pushforward(g, pt)).trueset
                assert direct == stepwise
            checked += 1
        assert checked > 0


class TestConstructions:
    """Test expanded presentations and sublocales."""

    def test_add_relations(self):
        """Extra relations cut down the points."""
        assert len(enumerate_points(chain())) == 3

    def test_expansion_bijection(self):
        """Expanding along spans keeps the points, via the q-preimage map."""
        pres = add_relations(free_presentation(["g0", "g1"]), [Sequent.of(["g0"], [["g1"]])])
        gens = Span(("h0", "h1", "h2"), ("h0", "h1", "h2", "h3"), {"h0": "g0", "h1": "g1", "h2": "g1"})
        rels = Span(("r0",), ("r0", "r1"), {"r0": "0"})
        expanded = expand_presentation(pres, gens, rels)
        before = enumerate_points(pres)
        after = {pt.trueset for pt in enumerate_points(expanded)}
        images = {expansion_point_map(pres, expanded, gens, pt).trueset for pt in before}
        assert len(before) == len(after) == 3
        assert images == after
        assert frozenset({"h1", "h2"}) in after

    def test_span_must_be_surjective(self):
        """q has to hit every base generator."""
        pres = free_presentation(["g0", "g1"])
        gens = Span(("h0",), ("h0",), {"h0": "g0"})
        rels = Span((), (), {})
        with pytest.raises(PresentationError):
            expand_presentation(pres, gens, rels)


class TestSerialization:
    """Test canonical JSON."""

    def test_golden_canonical(self):
        """The canonical presentation of {a, b} encodes byte for byte."""
        expected = (GOLDEN / "canonical_ab.json").read_text(encoding="utf-8").strip()
        assert to_canonical_json(canonical_presentation(["a", "b"])) == expected

    def test_decode_encoded(self):
        """Decoding gives a presentation with the same generators and relations."""
        pres = chain()
        assert from_json(to_canonical_json(pres)).same_as(pres)

    def test_malformed(self):
        """Broken JSON is a bundle format error."""
        with pytest.raises(BundleFormatError):
            from_json('{"generators": 3}')
        with pytest.raises(BundleFormatError):
            from_json("not json")

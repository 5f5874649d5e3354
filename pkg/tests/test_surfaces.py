"""Canonical forms, Euler-number arithmetic on surfaces, verdict invariants."""

import pytest

from surfcob import (
    CanonicalForm,
    ComponentSpec,
    Framing,
    InputError,
    Link,
    RelEulerDatum,
    SurfaceSpec,
    Verdict,
    canonical_form,
    diffeomorphic,
    homotopy_invariant,
    hopf_seifert_framings,
    massey_range,
    massey_warnings,
    puncture_adjust,
    twist,
    zero_framing,
)


def _random_component(rng, index):
    orientable = rng.random() < 0.5
    b = rng.randint(0, 2)
    boundary = tuple(f"b{index}_{j}" for j in range(b))
    if orientable:
        chi = 2 - 2 * rng.randint(0, 3) - b
    else:
        chi = 2 - rng.randint(1, 4) - b
    return ComponentSpec(orientable, chi, boundary)


class TestCanonicalForm:
    def test_frozen_examples(self):
        assert canonical_form((True, 2, 0)) == CanonicalForm(True, 0, 0)
        assert canonical_form((True, 0, 0)) == CanonicalForm(True, 1, 0)
        assert canonical_form((True, 1, 1)) == CanonicalForm(True, 0, 1)
        assert canonical_form((True, 0, 2)) == CanonicalForm(True, 0, 2)
        assert canonical_form((False, 1, 0)) == CanonicalForm(False, 1, 0)
        assert canonical_form((False, 0, 0)) == CanonicalForm(False, 2, 0)
        assert canonical_form((False, 0, 1)) == CanonicalForm(False, 1, 1)

    def test_str_forms(self):
        assert str(canonical_form((True, 0, 0))) == "O(g=1,b=0)"
        assert str(canonical_form((False, 1, 0))) == "N(k=1,b=0)"

    def test_rejections(self):
        with pytest.raises(InputError):
            canonical_form((True, 3, 0))
        with pytest.raises(InputError):
            canonical_form((True, 1, 0))
        with pytest.raises(InputError):
            canonical_form((True, 2, 2))
        with pytest.raises(InputError):
            canonical_form((False, 2, 0))
        with pytest.raises(InputError):
            canonical_form((True, 0.0, 0))


class TestComponentSpec:
    def test_inconsistent_triple_rejected_at_construction(self):
        with pytest.raises(InputError):
            ComponentSpec(True, 1, ())

    def test_duplicate_boundary_names_rejected(self):
        with pytest.raises(InputError):
            ComponentSpec(True, 0, ("b", "b"))


class TestDiffeomorphic:
    def test_component_order_irrelevant(self):
        sphere = ComponentSpec(True, 2)
        torus = ComponentSpec(True, 0)
        a = SurfaceSpec((sphere, torus), euler=(0, 0))
        b = SurfaceSpec((torus, sphere), euler=(0, 0))
        assert diffeomorphic(a, b)

    def test_torus_vs_klein_bottle(self):
        torus = SurfaceSpec((ComponentSpec(True, 0),), euler=(0,))
        klein = SurfaceSpec((ComponentSpec(False, 0),), euler=(0,))
        assert not diffeomorphic(torus, klein)

    def test_matches_multiset_of_forms(self, rng):
        for _ in range(60):
            comps_a = tuple(_random_component(rng, i) for i in range(rng.randint(0, 3)))
            comps_b = tuple(
                _random_component(rng, i + 10) for i in range(rng.randint(0, 3))
            )
            a = SurfaceSpec(comps_a, euler=self._entries(comps_a))
            b = SurfaceSpec(comps_b, euler=self._entries(comps_b))
            expected = sorted(
                map(str, map(canonical_form, comps_a))
            ) == sorted(map(str, map(canonical_form, comps_b)))
            assert diffeomorphic(a, b) == expected
            assert diffeomorphic(a, a)

    @staticmethod
    def _entries(comps):
        entries = []
        for idx, c in enumerate(comps):
            if c.is_closed():
                entries.append(0)
            else:
                link = Link(c.boundary)
                entries.append(RelEulerDatum(f"c{idx}", zero_framing(link), 0))
        return tuple(entries)


class TestPunctureAdjust:
    def test_hopf_annulus_shifts(self):
        plus, minus = hopf_seifert_framings()
        e = 10
        assert puncture_adjust(e, plus.offset("K"), plus.offset("K'")) == e + 2
        assert puncture_adjust(e, minus.offset("K"), minus.offset("K'")) == e - 2


class TestHomotopyInvariant:
    def test_examples(self):
        assert homotopy_invariant(0, 0) == 0
        assert homotopy_invariant(6, 1) == 0
        assert homotopy_invariant(2, 0) == 2
        assert homotopy_invariant(-2, 3) == 0

    def test_finger_and_cusp_behavior(self, rng):
        for _ in range(200):
            e = rng.randint(-20, 20)
            k = rng.randint(0, 8)
            base = homotopy_invariant(e, k)
            assert homotopy_invariant(e, k + 2) == base
            shift = rng.choice((2, -2))
            assert homotopy_invariant(e + shift, k + 1) == base
            assert (homotopy_invariant(e + shift, k) - base) % 4 == 2
            assert (homotopy_invariant(e, k + 1) - base) % 4 == 2


class TestMassey:
    def test_ranges(self):
        assert massey_range(1) == {-2, 2}
        assert massey_range(0) == {-4, 0, 4}
        assert massey_range(-1) == {-6, -2, 2, 6}
        with pytest.raises(InputError):
            massey_range(2)

    def test_warnings_only_in_the_four_sphere(self):
        rp2_bad = SurfaceSpec((ComponentSpec(False, 1),), euler=(6,))
        assert massey_warnings(rp2_bad, ambient_is_s4=False) == []
        warns = massey_warnings(rp2_bad, ambient_is_s4=True)
        assert len(warns) == 1 and "outside" in warns[0]
        rp2_ok = SurfaceSpec((ComponentSpec(False, 1),), euler=(2,))
        assert massey_warnings(rp2_ok, ambient_is_s4=True) == []


class TestSurfaceSpecValidation:
    def test_euler_entry_count(self):
        with pytest.raises(InputError):
            SurfaceSpec((ComponentSpec(True, 2),), euler=())

    def test_closed_component_needs_int(self):
        datum = RelEulerDatum("S", zero_framing(Link(("b",))), 0)
        with pytest.raises(InputError):
            SurfaceSpec((ComponentSpec(True, 2),), euler=(datum,))

    def test_bounded_component_needs_datum(self):
        with pytest.raises(InputError):
            SurfaceSpec((ComponentSpec(True, 1, ("b",)),), euler=(0,))

    def test_datum_link_must_match_boundary(self):
        datum = RelEulerDatum("S", zero_framing(Link(("other",))), 0)
        with pytest.raises(InputError):
            SurfaceSpec((ComponentSpec(True, 1, ("b",)),), euler=(datum,))

    def test_embedded_implies_no_self_points(self):
        with pytest.raises(InputError):
            SurfaceSpec(embedded=True, self_count=2)
        s = SurfaceSpec(embedded=False, self_count=2)
        assert s.self_count == 2

    def test_boundary_names_unique_across_components(self):
        c1 = ComponentSpec(True, 1, ("b",))
        c2 = ComponentSpec(True, 1, ("b",))
        d = RelEulerDatum("S", zero_framing(Link(("b",))), 0)
        with pytest.raises(InputError):
            SurfaceSpec((c1, c2), euler=(d, d))


class TestSurfaceGeometry:
    def _two_annuli(self):
        c0 = ComponentSpec(True, 0, ("a0", "a1"))
        c1 = ComponentSpec(True, 0, ("b0", "b1"))
        d0 = RelEulerDatum(
            "c0", Framing(Link(("a0", "a1")), {"a0": 1, "a1": 0}), 3
        )
        d1 = RelEulerDatum(
            "c1", Framing(Link(("b0", "b1")), {"b0": -2, "b1": 0}), -1
        )
        return SurfaceSpec((c0, c1), euler=(d0, d1))

    def test_flags(self):
        empty = SurfaceSpec()
        assert empty.is_empty() and empty.is_closed() and not empty.is_connected()
        assert empty.orientable() and not empty.nonorientable()
        s = self._two_annuli()
        assert not s.is_closed() and not s.is_connected() and s.orientable()

    def test_boundary_link_and_base_framing(self):
        s = self._two_annuli()
        assert s.boundary_link().component_ids == ("a0", "a1", "b0", "b1")
        assert s.base_framing().as_dict() == {"a0": 1, "a1": 0, "b0": -2, "b1": 0}

    def test_euler_arithmetic(self):
        s = self._two_annuli()
        base = s.base_framing()
        assert s.total_base_euler() == 2
        assert s.euler_at(base) == 2
        assert s.euler_at(twist(base, "a0", 5)) == 7
        assert s.euler_at(twist(base, "b1", -3)) == -1

    def test_mixed_closed_and_bounded(self):
        closed = ComponentSpec(False, 1)
        bounded = ComponentSpec(True, 1, ("k",))
        datum = RelEulerDatum("c1", zero_framing(Link(("k",))), 4)
        s = SurfaceSpec((closed, bounded), euler=(-2, datum))
        assert s.total_base_euler() == 2
        assert s.euler_at(twist(s.base_framing(), "k", 1)) == 3


class TestVerdict:
    def test_no_needs_obstructions(self):
        with pytest.raises(InputError):
            Verdict("no")
        v = Verdict("no", ("euler",))
        assert not v.yes

    def test_unknown_answer_rejected(self):
        with pytest.raises(InputError):
            Verdict("maybe")

    def test_yes(self):
        assert Verdict("yes").yes
        assert Verdict("not_applicable", ("ambient_not_orientable",)).yes is False

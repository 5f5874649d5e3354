"""Framings as integer torsors, relative Euler bookkeeping, link matching."""

import pytest

from surfcob import (
    Framing,
    InputError,
    Link,
    LinkMismatchError,
    RelEulerDatum,
    boundary_euler_balance,
    euler_under_framing,
    hopf_seifert_framings,
    links_match,
    mod2_intersection_consistent,
    restrict_framing,
    twist,
    twist_all,
    union_framings,
    zero_framing,
)


class TestLink:
    def test_duplicate_ids_rejected(self):
        with pytest.raises(InputError):
            Link(("K", "K"))

    def test_bad_ambient_tag_rejected(self):
        with pytest.raises(InputError):
            Link(("K",), "lens space")

    def test_empty(self):
        assert Link(()).is_empty()
        assert not Link(("K",)).is_empty()

    def test_match_is_order_insensitive(self):
        assert links_match(Link(("A", "B")), Link(("B", "A")))
        assert not links_match(Link(("A",)), Link(("A", "B")))
        assert not links_match(Link(("A",), "S3"), Link(("A",), "generic"))


class TestFraming:
    def test_accepts_dict_and_pairs(self):
        link = Link(("A", "B"))
        s1 = Framing(link, {"A": 2, "B": -1})
        s2 = Framing(link, (("B", -1), ("A", 2)))
        assert s1 == s2
        assert s1.offset("A") == 2
        assert s1.as_dict() == {"A": 2, "B": -1}

    def test_component_set_must_match(self):
        link = Link(("A", "B"))
        with pytest.raises(InputError):
            Framing(link, {"A": 0})
        with pytest.raises(InputError):
            Framing(link, {"A": 0, "B": 0, "C": 0})

    def test_offsets_must_be_int(self):
        link = Link(("A",))
        with pytest.raises(InputError):
            Framing(link, {"A": 1.5})
        with pytest.raises(InputError):
            Framing(link, {"A": True})

    def test_unknown_component_lookup(self):
        s = zero_framing(Link(("A",)))
        with pytest.raises(InputError):
            s.offset("B")

    def test_zero_framing(self):
        link = Link(("A", "B", "C"))
        assert zero_framing(link).as_dict() == {"A": 0, "B": 0, "C": 0}


class TestTwist:
    def test_twist_untwist_identity(self, rng):
        link = Link(("A", "B"))
        for _ in range(50):
            s = Framing(link, {k: rng.randint(-5, 5) for k in link.component_ids})
            n = rng.randint(-4, 4)
            assert twist(twist(s, "A", n), "A", -n) == s

    def test_twist_composes_additively(self):
        s = zero_framing(Link(("A",)))
        assert twist(twist(s, "A", 2), "A", 3) == twist(s, "A", 5)

    def test_twist_unknown_component(self):
        with pytest.raises(InputError):
            twist(zero_framing(Link(("A",))), "B", 1)

    def test_twist_all(self):
        link = Link(("A", "B"))
        s = Framing(link, {"A": 1, "B": -2})
        assert twist_all(s, 3).as_dict() == {"A": 4, "B": 1}


class TestRelativeEuler:
    def test_value_at_base(self):
        link = Link(("K",))
        base = Framing(link, {"K": 2})
        datum = RelEulerDatum("S", base, 6)
        assert euler_under_framing(datum, base) == 6

    def test_twist_shifts_by_n(self, rng):
        link = Link(("K", "L"))
        for _ in range(100):
            base = Framing(link, {k: rng.randint(-5, 5) for k in link.component_ids})
            datum = RelEulerDatum("S", base, rng.randint(-9, 9))
            s = Framing(link, {k: rng.randint(-5, 5) for k in link.component_ids})
            comp = rng.choice(link.component_ids)
            n = rng.randint(-4, 4)
            assert euler_under_framing(datum, twist(s, comp, n)) == (
                euler_under_framing(datum, s) + n
            )

    def test_cross_link_evaluation_rejected(self):
        datum = RelEulerDatum("S", zero_framing(Link(("K",))), 0)
        with pytest.raises(LinkMismatchError):
            euler_under_framing(datum, zero_framing(Link(("L",))))

    def test_e_base_must_be_int(self):
        with pytest.raises(InputError):
            RelEulerDatum("S", zero_framing(Link(("K",))), 1.0)


class TestHopfSeifertFramings:
    def test_exact_values(self):
        plus, minus = hopf_seifert_framings()
        link = Link(("K", "K'"), "S3")
        assert plus.link == link
        assert minus.link == link
        assert plus.as_dict() == {"K": 1, "K'": 1}
        assert minus.as_dict() == {"K": -1, "K'": -1}
        assert {v for _, v in plus.offsets} | {v for _, v in minus.offsets} == {1, -1}


class TestBalanceAndMod2:
    def test_balance(self):
        assert boundary_euler_balance(2, -2, 0)
        assert not boundary_euler_balance(0, 0, 1)

    def test_mod2_consistency(self):
        assert mod2_intersection_consistent(0, 2, -4)
        assert mod2_intersection_consistent(1, 3, -1)
        assert not mod2_intersection_consistent(1, 2, 3)
        with pytest.raises(InputError):
            mod2_intersection_consistent(2, 0, 0)


class TestRestrictAndUnion:
    def test_restrict(self):
        big = Framing(Link(("A", "B", "C")), {"A": 1, "B": 2, "C": 3})
        sub = restrict_framing(big, Link(("C", "A")))
        assert sub.as_dict() == {"A": 1, "C": 3}

    def test_restrict_missing_component(self):
        big = zero_framing(Link(("A",)))
        with pytest.raises(LinkMismatchError):
            restrict_framing(big, Link(("A", "B")))

    def test_union_then_restrict_round_trip(self):
        s1 = Framing(Link(("A",)), {"A": 4})
        s2 = Framing(Link(("B", "C")), {"B": -1, "C": 0})
        u = union_framings([s1, s2], "generic")
        assert u.link.component_ids == ("A", "B", "C")
        assert restrict_framing(u, s1.link).as_dict() == s1.as_dict()
        assert restrict_framing(u, s2.link).as_dict() == s2.as_dict()

    def test_union_rejects_duplicates_and_mixed_ambients(self):
        s1 = Framing(Link(("A",)), {"A": 0})
        with pytest.raises(LinkMismatchError):
            union_framings([s1, s1], "generic")
        s3 = Framing(Link(("B",), "S3"), {"B": 0})
        with pytest.raises(LinkMismatchError):
            union_framings([s1, s3], "generic")

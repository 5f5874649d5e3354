"""Integer matrices, Smith reduction, presented groups, and chain complexes."""

import pytest

from helpers import minors_invariant_factors
from surfcob.errors import (
    GroupMismatchError,
    InputError,
    NotACycleError,
    SizeLimitError,
)
from surfcob.homology import (
    AbelianGroupPresentation,
    ChainComplexPresentation,
    HomologyClass,
    IntMatrix,
    class_of_cycle,
    classes_equal,
    f2_group,
    homology_of_complex,
    mod2_reduce,
    reduction_map,
    smith_normal_form,
    zero_class,
)


def random_matrix(rng, rows, cols, bound=9):
    return IntMatrix(
        [[rng.randint(-bound, bound) for _ in range(cols)] for _ in range(rows)]
    )


class TestIntMatrix:
    def test_construction_and_eq(self):
        a = IntMatrix([[1, 2], [3, 4]])
        assert a.rows == 2 and a.cols == 2
        assert a == IntMatrix([[1, 2], [3, 4]])
        assert a != IntMatrix([[1, 2], [3, 5]])

    def test_ragged_rejected(self):
        with pytest.raises(InputError):
            IntMatrix([[1, 2], [3]])

    def test_matmul_identity(self):
        a = IntMatrix([[1, 2], [3, 4]])
        assert IntMatrix.identity(2) @ a == a
        assert a @ IntMatrix.identity(2) == a

    def test_det(self):
        assert IntMatrix([[1, 2], [3, 4]]).det() == -2
        assert IntMatrix.identity(3).det() == 1
        assert IntMatrix([[2]]).det() == 2

    def test_size_cap(self):
        with pytest.raises(SizeLimitError):
            smith_normal_form(IntMatrix.zero(513, 1))


class TestSmithNormalForm:
    def test_frozen_examples(self):
        _, d, _ = smith_normal_form(IntMatrix([[2, 4], [6, 8]]))
        assert d.diagonal() == [2, 4]
        _, d, _ = smith_normal_form(IntMatrix([[1, 2], [3, 4]]))
        assert d.diagonal() == [1, 2]
        _, d, _ = smith_normal_form(IntMatrix([[6]]))
        assert d.diagonal() == [6]
        _, d, _ = smith_normal_form(IntMatrix.zero(2, 3))
        assert d.diagonal() == [0, 0]

    def test_factorization_small(self, rng):
        for _ in range(60):
            rows = rng.randint(1, 5)
            cols = rng.randint(1, 5)
            a = random_matrix(rng, rows, cols)
            u, d, v = smith_normal_form(a)
            assert u @ d @ v == a
            assert abs(u.det()) == 1
            assert abs(v.det()) == 1
            diag = [x for x in d.diagonal() if x != 0]
            for first, second in zip(diag, diag[1:]):
                assert second % first == 0

    def test_matches_minors_oracle(self, rng):
        for _ in range(40):
            rows = rng.randint(1, 4)
            cols = rng.randint(1, 4)
            a = random_matrix(rng, rows, cols)
            _, d, _ = smith_normal_form(a)
            got = [x for x in d.diagonal() if x != 0]
            assert got == minors_invariant_factors(a)


class TestGroupsAndClasses:
    def test_divisibility_enforced(self):
        with pytest.raises(InputError):
            AbelianGroupPresentation(0, (2, 3))
        with pytest.raises(InputError):
            AbelianGroupPresentation(0, (1,))
        AbelianGroupPresentation(1, (2, 4))

    def test_class_reduction(self):
        g = AbelianGroupPresentation(1, (3,))
        c = HomologyClass(g, (5, 7))
        assert c.coords == (5, 1)

    def test_arithmetic(self):
        g = AbelianGroupPresentation(0, (4,))
        a = HomologyClass(g, (3,))
        assert (a + a).coords == (2,)
        assert (-a).coords == (1,)
        assert (a - a).is_zero()

    def test_cross_group_comparison_rejected(self):
        g1 = AbelianGroupPresentation(1)
        g2 = AbelianGroupPresentation(2)
        with pytest.raises(GroupMismatchError):
            classes_equal(zero_class(g1), zero_class(g2))

    def test_f2_groups(self):
        assert f2_group(3).invariant_factors == (2, 2, 2)


def circle_complex():
    return ChainComplexPresentation("Z", {1: IntMatrix.zero(1, 1)})


def projective_plane_complex():
    return ChainComplexPresentation(
        "Z", {2: IntMatrix([[2]]), 1: IntMatrix.zero(1, 1)}
    )


def klein_bottle_complex():
    return ChainComplexPresentation(
        "Z", {2: IntMatrix([[0], [2]]), 1: IntMatrix.zero(1, 2)}
    )


class TestHomologyOfComplex:
    def test_circle(self):
        c = circle_complex()
        assert homology_of_complex(c, 1) == AbelianGroupPresentation(1)
        assert homology_of_complex(c, 0) == AbelianGroupPresentation(1)

    def test_projective_plane(self):
        c = projective_plane_complex()
        assert homology_of_complex(c, 1) == AbelianGroupPresentation(0, (2,))
        assert homology_of_complex(c, 2) == AbelianGroupPresentation(0)
        f2 = ChainComplexPresentation(
            "F2", {2: IntMatrix([[2]]), 1: IntMatrix.zero(1, 1)}
        )
        assert homology_of_complex(f2, 2) == f2_group(1)
        assert homology_of_complex(f2, 1) == f2_group(1)

    def test_klein_bottle(self):
        c = klein_bottle_complex()
        assert homology_of_complex(c, 1) == AbelianGroupPresentation(1, (2,))
        assert homology_of_complex(c, 2) == AbelianGroupPresentation(0)

    def test_torus(self):
        c = ChainComplexPresentation(
            "Z", {2: IntMatrix.zero(2, 1), 1: IntMatrix.zero(1, 2)}
        )
        assert homology_of_complex(c, 1) == AbelianGroupPresentation(2)
        assert homology_of_complex(c, 2) == AbelianGroupPresentation(1)

    def test_composition_must_vanish(self):
        with pytest.raises(InputError):
            ChainComplexPresentation(
                "Z", {2: IntMatrix([[1]]), 1: IntMatrix([[1]])}
            )

    def test_universal_coefficients(self, rng):
        """dim H_n(F2) = rank H_n(Z) + torsion-2 count of H_n and H_{n-1}."""

        def t2(group):
            return sum(1 for d in group.invariant_factors if d % 2 == 0)

        for _ in range(30):
            rows = rng.randint(1, 4)
            cols = rng.randint(1, 4)
            d2 = random_matrix(rng, rows, cols, bound=4)
            zc = ChainComplexPresentation(
                "Z", {2: d2, 1: IntMatrix.zero(rng.randint(1, 3), rows)}
            )
            fc = ChainComplexPresentation("F2", {2: d2.mod2(), 1: zc.boundary(1)})
            for n in (1, 2):
                hz = homology_of_complex(zc, n)
                hz_prev = homology_of_complex(zc, n - 1)
                hf = homology_of_complex(fc, n)
                assert len(hf.invariant_factors) == (
                    hz.free_rank + t2(hz) + t2(hz_prev)
                )


class TestClassOfCycle:
    def test_circle_class(self):
        c = circle_complex()
        cls = class_of_cycle(c, [3], 1)
        assert cls.group == AbelianGroupPresentation(1)
        assert cls.coords == (3,) or cls.coords == (-3,)

    def test_torsion_class(self):
        c = projective_plane_complex()
        gen = class_of_cycle(c, [1], 1)
        assert gen.coords == (1,)
        assert class_of_cycle(c, [2], 1).is_zero()

    def test_non_cycle_rejected(self):
        c = projective_plane_complex()
        with pytest.raises(NotACycleError) as info:
            class_of_cycle(c, [1], 2)
        assert tuple(info.value.boundary) == (2,)

    def test_additivity(self, rng):
        d2 = random_matrix(rng, 3, 2, bound=3)
        c = ChainComplexPresentation("Z", {2: d2, 1: IntMatrix.zero(2, 3)})
        for _ in range(25):
            z1 = [rng.randint(-4, 4) for _ in range(3)]
            z2 = [rng.randint(-4, 4) for _ in range(3)]
            total = [a + b for a, b in zip(z1, z2)]
            lhs = class_of_cycle(c, total, 1)
            rhs = class_of_cycle(c, z1, 1) + class_of_cycle(c, z2, 1)
            assert classes_equal(lhs, rhs)


class TestReduction:
    def test_projective_plane_generator_reduces_to_generator(self):
        zc = projective_plane_complex()
        red = reduction_map(zc, 1)
        gen = class_of_cycle(zc, [1], 1)
        image = mod2_reduce(gen, red)
        assert not image.is_zero()
        assert mod2_reduce(gen + gen, red).is_zero()

    def test_naturality_on_random_cycles(self, rng):
        for _ in range(15):
            rows = rng.randint(1, 3)
            cols = rng.randint(1, 3)
            d2 = random_matrix(rng, rows, cols, bound=3)
            zc = ChainComplexPresentation(
                "Z", {2: d2, 1: IntMatrix.zero(2, rows)}
            )
            fc = ChainComplexPresentation(
                "F2", {2: d2.mod2(), 1: IntMatrix.zero(2, rows)}
            )
            red = reduction_map(zc, 1)
            for _ in range(10):
                z = [rng.randint(-3, 3) for _ in range(rows)]
                via_map = mod2_reduce(class_of_cycle(zc, z, 1), red)
                direct = class_of_cycle(fc, [v & 1 for v in z], 1)
                assert via_map.coords == direct.coords

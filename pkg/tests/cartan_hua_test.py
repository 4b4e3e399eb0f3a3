import math
import unittest

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from src.pyluqikeng.cartan_hua import (CartanDomainSpec, HuaBlock,
                                       HuaConstructionSpec, generic_norm,
                                       hua_evaluate, hua_member, is_member,
                                       is_positive_definite,
                                       skew_symmetric_from_entries,
                                       symmetric_from_entries)
from src.pyluqikeng.coefficients import EggDomainSpec
from src.pyluqikeng.enums import CartanKind
from src.pyluqikeng.errors import (InvalidPointError, InvalidSpecError,
                                   ShapeMismatchError, UnsupportedKindError)
from src.pyluqikeng.kernel import DomainPoint
from src.pyluqikeng.sampling import sample_box


def complex_vectors(size):
    return st.lists(
        st.complex_numbers(max_magnitude=0.8, allow_nan=False, allow_infinity=False),
        min_size=size, max_size=size
    ).map(np.array)


class TestMatrixEntries(unittest.TestCase):

    def test_symmetric_from_entries(self):
        np.testing.assert_array_equal(symmetric_from_entries(2, [1, 2, 3]).real, [[1, 2], [2, 3]])

    def test_skew_symmetric_from_entries(self):
        matrix = skew_symmetric_from_entries(3, [1, 2, 3])
        np.testing.assert_array_equal(matrix.real, [[0, 1, 2], [-1, 0, 3], [-2, -3, 0]])

    def test_should_raise_shape_mismatch_error(self):
        with self.assertRaises(ShapeMismatchError):
            symmetric_from_entries(2, [1, 2])
        with self.assertRaises(ShapeMismatchError):
            skew_symmetric_from_entries(3, [1])


class TestCartanDomainSpec(unittest.TestCase):

    def test_dimension(self):
        self.assertEqual(CartanDomainSpec.type_I(2, 3).dimension, 6)
        self.assertEqual(CartanDomainSpec.type_II(3).dimension, 6)
        self.assertEqual(CartanDomainSpec.type_III(4).dimension, 6)
        self.assertEqual(CartanDomainSpec.type_IV(5).dimension, 5)

    def test_as_matrix(self):
        spec = CartanDomainSpec.type_I(1, 2)
        np.testing.assert_array_equal(spec.as_matrix([0.8, 0.7]), [[0.8, 0.7]])
        spec = CartanDomainSpec.type_II(2)
        np.testing.assert_array_equal(spec.as_matrix([[0.1, 0.2], [0.2, 0.3]]), spec.as_matrix([0.1, 0.2, 0.3]))

    def test_should_raise_unsupported_kind_error(self):
        with self.assertRaises(UnsupportedKindError):
            CartanDomainSpec(CartanKind.V, (16,))
        with self.assertRaises(UnsupportedKindError):
            CartanDomainSpec(CartanKind.VI, (27,))

    def test_should_raise_invalid_spec_error(self):
        with self.assertRaises(InvalidSpecError):
            CartanDomainSpec(CartanKind.I, (2,))
        with self.assertRaises(InvalidSpecError):
            CartanDomainSpec.type_IV(0)
        with self.assertRaises(InvalidSpecError):
            CartanDomainSpec.type_III(1)

    def test_should_raise_shape_mismatch_error(self):
        with self.assertRaises(ShapeMismatchError):
            CartanDomainSpec.type_I(2, 2).as_matrix([0.1, 0.2, 0.3])
        with self.assertRaises(ShapeMismatchError):
            CartanDomainSpec.type_IV(2).as_matrix([0.1, 0.2, 0.3])
        with self.assertRaises(ShapeMismatchError):
            CartanDomainSpec.type_II(2).as_matrix([[0.1, 0.2], [0.3, 0.4]])
        with self.assertRaises(ShapeMismatchError):
            CartanDomainSpec.type_III(2).as_matrix([[0.0, 0.2], [0.2, 0.0]])


class TestGenericNorm(unittest.TestCase):

    def test_generic_norm(self):
        self.assertEqual(generic_norm(CartanDomainSpec.type_I(2, 3), np.zeros((2, 3))), 1.0)
        self.assertEqual(generic_norm(CartanDomainSpec.type_IV(2), [0.5, 0]), 0.5625)
        self.assertAlmostEqual(generic_norm(CartanDomainSpec.type_I(1, 1), [1.2]), -0.44)

    def test_origin(self):
        for spec in (CartanDomainSpec.type_I(2, 2), CartanDomainSpec.type_II(3),
                     CartanDomainSpec.type_III(3), CartanDomainSpec.type_IV(4)):
            self.assertEqual(generic_norm(spec, np.zeros(spec.dimension)), 1.0)


class TestIsMember(unittest.TestCase):

    def test_examples(self):
        self.assertTrue(is_member(CartanDomainSpec.type_I(2, 2), np.zeros((2, 2))))
        self.assertTrue(is_member(CartanDomainSpec.type_IV(2), [0.5, 0]))
        self.assertFalse(is_member(CartanDomainSpec.type_I(1, 2), [0.8, 0.7]))

    def test_definiteness_not_determinant(self):
        spec = CartanDomainSpec.type_I(2, 2)
        Z = np.diag([1.5, 1.5])
        self.assertGreater(generic_norm(spec, Z), 0)
        self.assertFalse(is_member(spec, Z))

    def test_scalar_consistency(self):
        for z in (0.3, 0.6j, 0.99, 1.0, 1.2):
            self.assertEqual(
                is_member(CartanDomainSpec.type_I(1, 1), [z]),
                is_member(CartanDomainSpec.type_II(1), [z])
            )
            self.assertAlmostEqual(
                generic_norm(CartanDomainSpec.type_I(1, 1), [z]),
                generic_norm(CartanDomainSpec.type_II(1), [z])
            )

    def test_type_IV(self):
        spec = CartanDomainSpec.type_IV(2)
        # Z = (0.7, 0.7i)ではZZ^t = 0、N = 1 - 2 * 0.98 < 0
        self.assertFalse(is_member(spec, [0.7, 0.7j]))
        self.assertTrue(is_member(spec, [0.4, 0.4j]))

    def test_boundary_is_not_member(self):
        self.assertFalse(is_member(CartanDomainSpec.type_I(1, 1), [1.0]))
        self.assertFalse(is_positive_definite(np.zeros((2, 2))))


class TestHuaConstruction(unittest.TestCase):

    def test_hua_member(self):
        spec = HuaConstructionSpec.egg(2, 0.5)
        self.assertTrue(hua_member(spec, [[0.0]], [0.0, 0.0]))

        spec = HuaConstructionSpec(
            CartanDomainSpec.type_IV(2), (HuaBlock(1, 1.0, 1.0), HuaBlock(1, 2.0, 1.0))
        )
        membership = hua_evaluate(spec, [[0.5], [0.7]], [0.5, 0])
        self.assertTrue(membership.member)
        self.assertAlmostEqual(membership.lhs, (0.25 + 0.2401) / 0.5625)
        self.assertEqual(membership.to_dict()['generic_norm'], 0.5625)

    def test_egg_equivalence(self):
        rng = np.random.default_rng(12)
        for n, K in ((1, 0.5), (2, 0.25), (3, 2.0)):
            egg = EggDomainSpec(n, K)
            specs = (
                HuaConstructionSpec.egg(n, K),
                HuaConstructionSpec(CartanDomainSpec.type_I(1, n), (HuaBlock(1, 1.0, 1.0 / K),)),
            )
            W, Z = sample_box(egg, 10_000, rng)
            W, Z = 1.05 * W, 1.05 * Z
            for w, z in zip(W, Z):
                try:
                    DomainPoint(egg, w, tuple(z))
                    expected = True
                except InvalidPointError:
                    expected = False
                for spec in specs:
                    self.assertEqual(hua_member(spec, [[w]], z), expected)

    @settings(max_examples=200, deadline=None)
    @given(
        complex_vectors(3),
        complex_vectors(2),
        complex_vectors(1),
        st.floats(min_value=0.0, max_value=1.0)
    )
    def test_monotone(self, Z, W_1, W_2, shrink):
        spec = HuaConstructionSpec.cartan_egg(CartanDomainSpec.type_II(2), 2, 1, 0.5)
        if hua_member(spec, [W_1, W_2], Z):
            self.assertTrue(hua_member(spec, [shrink * W_1, W_2], Z))
            self.assertTrue(hua_member(spec, [W_1, shrink * W_2], Z))

    def test_non_member_base(self):
        spec = HuaConstructionSpec.cartan_hartogs(CartanDomainSpec.type_I(2, 2), 1, 2.0)
        membership = hua_evaluate(spec, [[0.0]], np.diag([1.5, 1.5]))
        self.assertFalse(membership.member)
        self.assertTrue(math.isfinite(membership.lhs))

        membership = hua_evaluate(spec, [[0.1]], np.diag([1.5, 0.5]))
        self.assertFalse(membership.member)
        self.assertIsNone(membership.to_dict()['lhs'])

    def test_elementary_cases(self):
        base = CartanDomainSpec.type_IV(3)
        self.assertEqual(HuaConstructionSpec.cartan_hartogs(base, 2, 0.5).elementary_cases(), [1, 2, 3, 4])
        self.assertEqual(HuaConstructionSpec.hua_domain(base, [1, 2], [1.0, 0.3]).elementary_cases(), [2, 4])
        self.assertEqual(HuaConstructionSpec.hua_domain(base, [1, 1], [0.5, 0.3]).elementary_cases(), [4])
        self.assertEqual(HuaConstructionSpec.hua_domain(base, [1, 1], [0.7, 0.3]).elementary_cases(), [])
        self.assertTrue(HuaConstructionSpec.cartan_egg(base, 1, 1, 2.0).is_hua_domain())
        self.assertFalse(
            HuaConstructionSpec(CartanDomainSpec.type_I(1, 2), (HuaBlock(1, 1.0, 2.0),)).is_hua_domain()
        )

    def test_should_raise_shape_mismatch_error(self):
        spec = HuaConstructionSpec.egg(2, 0.5)
        with self.assertRaises(ShapeMismatchError):
            hua_member(spec, [[0.1], [0.1]], [0.0, 0.0])
        with self.assertRaises(ShapeMismatchError):
            hua_member(spec, [[0.1, 0.1]], [0.0, 0.0])
        with self.assertRaises(ShapeMismatchError):
            hua_member(spec, [[0.1]], [0.0, 0.0, 0.0])

    def test_should_raise_invalid_spec_error(self):
        with self.assertRaises(InvalidSpecError):
            HuaBlock(0, 1.0, 1.0)
        with self.assertRaises(InvalidSpecError):
            HuaBlock(1, 0.0, 1.0)
        with self.assertRaises(InvalidSpecError):
            HuaBlock(1, 1.0, -1.0)
        with self.assertRaises(InvalidSpecError):
            HuaConstructionSpec(CartanDomainSpec.type_IV(2), ())
        with self.assertRaises(InvalidSpecError):
            HuaConstructionSpec.hua_domain(CartanDomainSpec.type_IV(2), [1, 2], [1.0])


if __name__ == '__main__':
    unittest.main()

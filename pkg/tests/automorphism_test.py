import unittest

import numpy as np

from src.pyluqikeng.automorphism import (CenteringAutomorphism,
                                         ball_automorphism,
                                         centering_automorphism,
                                         verify_homogeneous_formula,
                                         verify_transformation_rule)
from src.pyluqikeng.coefficients import EggDomainSpec
from src.pyluqikeng.errors import InvalidBasePointError
from src.pyluqikeng.kernel import DomainPoint, PointPair
from src.pyluqikeng.sampling import random_points


class TestBallAutomorphism(unittest.TestCase):

    def test_ball_automorphism(self):
        a = np.array([0.3 + 0.1j, -0.2j])
        np.testing.assert_allclose(ball_automorphism(a, a), [0.0, 0.0], atol=1e-15)
        np.testing.assert_allclose(ball_automorphism(a, np.zeros(2)), -a, atol=1e-15)

        z = np.array([[0.1, 0.5j], [-0.4, 0.2]])
        image = ball_automorphism(a, z)
        self.assertEqual(image.shape, (2, 2))
        # 1 - |ψ_a(z)|^2 = (1 - |a|^2)(1 - |z|^2) / |1 - <z, a>|^2
        norm_a = np.sum(np.abs(a) ** 2)
        for w, zz in zip(image, z):
            expected = (1 - norm_a) * (1 - np.sum(np.abs(zz) ** 2)) / abs(1 - np.vdot(a, zz)) ** 2
            self.assertAlmostEqual(1 - np.sum(np.abs(w) ** 2), expected, delta=1e-14)

    def test_identity(self):
        z = np.array([0.1, 0.5j])
        self.assertTrue(np.array_equal(ball_automorphism([0.0, 0.0], z), z))

    def test_should_raise_invalid_base_point_error(self):
        with self.assertRaises(InvalidBasePointError):
            ball_automorphism([1.0, 0.0], np.zeros(2))


class TestCenteringAutomorphism(unittest.TestCase):

    def test_identity(self):
        spec = EggDomainSpec(2, 0.5)
        auto = centering_automorphism(spec, [0.0, 0.0])
        self.assertTrue(auto.is_identity())
        point = DomainPoint(spec, 0.3j, (0.2, -0.1))
        self.assertEqual(auto(point), point)
        self.assertEqual(auto.jacobian_det(point), 1.0)

    def test_centering(self):
        spec = EggDomainSpec(2, 0.5)
        Z0 = (0.2, 0.1j)
        auto = centering_automorphism(spec, Z0)
        image = auto(DomainPoint(spec, 0.4, Z0))
        self.assertLessEqual(max(abs(z) for z in image.Z), 1e-12)

    def test_maps_members_to_members(self):
        for n, K in ((1, 1.0), (2, 0.5), (2, 2.0)):
            spec = EggDomainSpec(n, K)
            Z0 = random_points(spec, 1, seed=3, scale=0.8)[0].Z
            auto = CenteringAutomorphism(spec, Z0)
            norm_sq = sum(abs(z) ** 2 for z in Z0)
            for point in random_points(spec, 50, seed=5):
                image = auto(point)
                inner = sum(z * np.conj(z0) for z, z0 in zip(point.Z, Z0))
                expected = point.defect * (1 - norm_sq) / abs(1 - inner) ** 2
                self.assertAlmostEqual(image.defect, expected, delta=1e-12)

    def test_should_raise_invalid_base_point_error(self):
        spec = EggDomainSpec(2, 0.5)
        with self.assertRaises(InvalidBasePointError):
            CenteringAutomorphism(spec, (0.1,))
        with self.assertRaises(InvalidBasePointError):
            CenteringAutomorphism(spec, (0.8, 0.6))


class TestTransformationRule(unittest.TestCase):

    def test_n1_ball(self):
        spec = EggDomainSpec(1, 1.0)
        auto = centering_automorphism(spec, (0.3,))
        pair = PointPair(DomainPoint(spec, 0.2 + 0.1j, (0.4,)), DomainPoint(spec, -0.3, (0.1 - 0.5j,)))
        self.assertLess(verify_transformation_rule(spec, auto, pair), 1e-6)

    def test_n2_egg(self):
        spec = EggDomainSpec(2, 0.5)
        auto = centering_automorphism(spec, (0.2, 0.1j))
        pair = PointPair(DomainPoint(spec, 0.1 - 0.2j, (0.3, 0.2j)), DomainPoint(spec, 0.25j, (-0.1, 0.4)))
        self.assertLess(verify_transformation_rule(spec, auto, pair), 1e-6)

    def test_random_pairs(self):
        spec = EggDomainSpec(2, 2.0)
        points = random_points(spec, 20, seed=17, scale=0.8)
        for i, (p, q) in enumerate(zip(points[::2], points[1::2])):
            Z0 = random_points(spec, 1, seed=100 + i, scale=0.8)[0].Z
            residual = verify_transformation_rule(spec, centering_automorphism(spec, Z0), PointPair(p, q))
            self.assertLess(residual, 1e-6)

    def test_homogeneous_formula(self):
        spec = EggDomainSpec(2, 1.0)
        pair = PointPair(DomainPoint(spec, 0.3, (0.1j, -0.2)), DomainPoint(spec, -0.1j, (0.4, 0.2)))
        self.assertLess(verify_homogeneous_formula(spec, pair), 1e-6)
        with self.assertRaises(ValueError):
            verify_homogeneous_formula(EggDomainSpec(2, 0.5), pair)


if __name__ == '__main__':
    unittest.main()

import unittest

import numpy as np

from src.pyluqikeng.classifier import classify, zero_locus
from src.pyluqikeng.coefficients import EggDomainSpec
from src.pyluqikeng.errors import InvalidPointError, KernelZeroOnPathError
from src.pyluqikeng.kernel import DomainPoint
from src.pyluqikeng.repcoords import (RepresentativeMap, metric_matrix,
                                      representative_coordinates)
from src.pyluqikeng.sampling import random_points


class TestMetricMatrix(unittest.TestCase):

    def test_ball_origin(self):
        spec = EggDomainSpec(1, 1.0)
        metric = metric_matrix(spec, DomainPoint.origin(spec))
        np.testing.assert_allclose(metric.entries, 3 * np.eye(2), rtol=0, atol=1e-6)

    def test_diagonal_at_origin(self):
        for n, K in ((2, 0.5), (3, 2.0)):
            spec = EggDomainSpec(n, K)
            entries = metric_matrix(spec, DomainPoint.origin(spec)).entries
            off_diagonal = entries - np.diag(np.diag(entries))
            self.assertLess(np.max(np.abs(off_diagonal)), 1e-8)
            self.assertTrue(np.all(np.diag(entries).real > 0))

    def test_hermitian(self):
        spec = EggDomainSpec(2, 0.5)
        for point in random_points(spec, 10, seed=21, scale=0.4):
            metric = metric_matrix(spec, point)
            self.assertTrue(metric.is_hermitian())
            self.assertTrue(np.all(np.linalg.eigvalsh(metric.entries) > 0))
            self.assertLess(metric.condition_number(), 1e12)

    def test_should_raise_invalid_point_error(self):
        spec = EggDomainSpec(1, 1.0)
        with self.assertRaises(InvalidPointError):
            metric_matrix(spec, DomainPoint(spec, 0.0, (1 - 1e-8,)))


class TestRepresentativeMap(unittest.TestCase):

    def test_base_maps_to_zero(self):
        for n, K in ((1, 2.0), (2, 0.5), (3, 0.8)):
            spec = EggDomainSpec(n, K)
            for base in random_points(spec, 3, seed=22, scale=0.4):
                coordinates = representative_coordinates(spec, base, base)
                self.assertEqual(coordinates.shape, (n + 1,))
                self.assertLess(np.max(np.abs(coordinates)), 1e-8)

    def test_jacobian_is_identity(self):
        for n, K in ((1, 2.0), (2, 0.5)):
            spec = EggDomainSpec(n, K)
            for base in random_points(spec, 3, seed=23, scale=0.4):
                jacobian = RepresentativeMap(spec, base).jacobian(base)
                np.testing.assert_allclose(jacobian, np.eye(n + 1), rtol=0, atol=1e-6)

    def test_ball_is_identity(self):
        spec = EggDomainSpec(1, 1.0)
        point = DomainPoint(spec, 0.3, (0.2j,))
        coordinates = representative_coordinates(spec, DomainPoint.origin(spec), point)
        np.testing.assert_allclose(coordinates, [0.3, 0.2j], rtol=0, atol=1e-8)

    def test_zero_free_parameters(self):
        spec = EggDomainSpec(2, 2.0)
        points = random_points(spec, 10, seed=24, scale=0.6)
        for base, point in zip(points[::2], points[1::2]):
            coordinates = RepresentativeMap(spec, base)(point)
            self.assertTrue(np.all(np.isfinite(coordinates)))

    def test_should_raise_kernel_zero_on_path_error(self):
        for n, K in ((2, 0.25), (3, 0.5)):
            spec = EggDomainSpec(n, K)
            for s in classify(spec).witness_roots:
                pair = zero_locus(spec, s).fiber_pair()
                with self.assertRaises(KernelZeroOnPathError):
                    representative_coordinates(spec, pair.q, pair.p)


if __name__ == '__main__':
    unittest.main()

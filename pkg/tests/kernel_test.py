import cmath
import math
import unittest

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from src.pyluqikeng.coefficients import EggDomainSpec
from src.pyluqikeng.errors import InvalidPointError, NumericalOverflowError
from src.pyluqikeng.kernel import (DomainPoint, PointPair, domain_volume,
                                   eval_kernel, kernel_on_fiber,
                                   membership_defect, normalized_kernel)
from src.pyluqikeng.sampling import random_points


egg_specs = st.builds(
    EggDomainSpec,
    st.integers(min_value=1, max_value=3),
    st.floats(min_value=0.1, max_value=5.0)
)


@st.composite
def domain_points(draw, spec):
    """境界から離れた領域内の点を生成します。"""
    direction = np.array(draw(st.lists(
        st.floats(min_value=-1.0, max_value=1.0), min_size=2 * spec.n, max_size=2 * spec.n
    )))
    norm = np.linalg.norm(direction)
    r = draw(st.floats(min_value=0.0, max_value=0.95))
    unit = direction / norm if norm > 1e-6 else np.zeros(2 * spec.n)
    Z = r * (unit[:spec.n] + 1j * unit[spec.n:])
    # |W|^{2K} + |Z|^2 = (1 - r^2) w^{2K} + r^2 < 1
    w = draw(st.floats(min_value=0.0, max_value=0.95)) * (1.0 - r ** 2) ** (1.0 / (2 * spec.K))
    theta = draw(st.floats(min_value=0.0, max_value=2 * math.pi))
    return DomainPoint(spec, w * cmath.exp(1j * theta), tuple(complex(z) for z in Z))


@st.composite
def point_pairs(draw):
    spec = draw(egg_specs)
    return spec, draw(domain_points(spec)), draw(domain_points(spec))


def ball_kernel(n, p, q):
    u = sum(z * xi.conjugate() for z, xi in zip(p.Z, q.Z))
    return math.factorial(n + 1) / math.pi ** (n + 1) \
        * (1 - p.W * q.W.conjugate() - u) ** (-(n + 2))


class TestDomainPoint(unittest.TestCase):

    def test_domain_point(self):
        spec = EggDomainSpec(2, 0.5)
        point = DomainPoint(spec, 0.25, (0.3, 0.1j))
        self.assertAlmostEqual(point.defect, 1 - (0.25 + 0.09 + 0.01))
        self.assertTrue(np.array_equal(point.as_vector(), np.array([0.25, 0.3, 0.1j])))
        self.assertEqual(DomainPoint.from_vector(spec, point.as_vector()), point)
        self.assertEqual(DomainPoint.from_pairs(spec, point.to_pairs()), point)
        self.assertEqual(DomainPoint.origin(spec).defect, 1.0)

    def test_membership_defect(self):
        spec = EggDomainSpec(1, 2.0)
        W = np.array([0.0, 0.5, 0.9])
        Z = np.array([[0.0], [0.5], [0.5]])
        np.testing.assert_allclose(membership_defect(spec, W, Z), [1.0, 1 - 0.0625 - 0.25, 1 - 0.6561 - 0.25])

    def test_should_raise_invalid_point_error(self):
        spec = EggDomainSpec(2, 0.5)
        with self.assertRaises(InvalidPointError):
            DomainPoint(spec, 0.1, (0.1,))
        with self.assertRaises(InvalidPointError):
            DomainPoint(spec, 0.99, (0.1, 0.1))
        with self.assertRaises(InvalidPointError):
            DomainPoint(spec, 0.0, (1.0, 0.0))
        with self.assertRaises(InvalidPointError):
            DomainPoint.from_pairs(spec, [[0.1], [0.0, 0.0], [0.0, 0.0]])
        with self.assertRaises(InvalidPointError):
            PointPair(DomainPoint.origin(spec), DomainPoint.origin(EggDomainSpec(2, 2.0)))


class TestEvalKernel(unittest.TestCase):

    @settings(max_examples=200, deadline=None)
    @given(point_pairs())
    def test_hermitian_symmetry(self, case):
        spec, p, q = case
        pq = eval_kernel(spec, PointPair(p, q)).value
        qp = eval_kernel(spec, PointPair(q, p)).value
        scale = math.sqrt(eval_kernel(spec, PointPair(p, p)).value.real
                          * eval_kernel(spec, PointPair(q, q)).value.real)
        self.assertLessEqual(abs(pq - qp.conjugate()), 1e-10 * scale)

    @settings(max_examples=200, deadline=None)
    @given(point_pairs())
    def test_diagonal_positive(self, case):
        spec, p, _ = case
        value = eval_kernel(spec, PointPair(p, p)).value
        self.assertGreater(value.real, 0)
        self.assertLessEqual(abs(value.imag), 1e-12 * value.real)

    def test_ball_degeneration(self):
        for n in (1, 2, 3):
            spec = EggDomainSpec(n, 1.0)
            points = random_points(spec, 40, seed=11)
            for p, q in zip(points[::2], points[1::2]):
                value = eval_kernel(spec, PointPair(p, q)).value
                expected = ball_kernel(n, p, q)
                self.assertLessEqual(abs(value - expected), 1e-12 * abs(expected))

    def test_fiber_restriction(self):
        spec = EggDomainSpec(2, 0.25)
        zero = (0.0, 0.0)
        for W, zeta in ((0.3, 0.5), (0.4j, -0.2 + 0.1j), (0.9, 0.95)):
            pair = PointPair(DomainPoint(spec, W, zero), DomainPoint(spec, zeta, zero))
            value = eval_kernel(spec, pair).value
            expected = kernel_on_fiber(spec, W * np.conj(zeta))
            self.assertLessEqual(abs(value - expected), 1e-12 * abs(expected))

    def test_n1_formula(self):
        # n = 1: K(s) = K^{-1} π^{-2} [(K-1) y^2 + 2 y^3]
        spec = EggDomainSpec(1, 2.0)
        s = 0.3 * cmath.exp(0.7j)
        y = 1 / (1 - s)
        expected = ((2.0 - 1) * y ** 2 + 2 * y ** 3) / (2.0 * math.pi ** 2)
        self.assertLessEqual(abs(kernel_on_fiber(spec, s) - expected), 1e-12 * abs(expected))

    def test_origin(self):
        for n, K in ((1, 1.0), (2, 0.5), (3, 2.0), (4, 0.3)):
            spec = EggDomainSpec(n, K)
            origin = DomainPoint.origin(spec)
            value = eval_kernel(spec, PointPair(origin, origin)).value
            self.assertAlmostEqual(value.real * domain_volume(spec), 1.0, delta=1e-10)
            self.assertEqual(value.imag, 0.0)

    def test_domain_volume(self):
        self.assertAlmostEqual(domain_volume(EggDomainSpec(1, 1.0)), math.pi ** 2 / 2)
        self.assertAlmostEqual(domain_volume(EggDomainSpec(2, 1.0)), math.pi ** 3 / 6)
        # K = 1/2: π^2 Γ(2) / (0.5 Γ(4)) = π^2 / 3
        self.assertAlmostEqual(domain_volume(EggDomainSpec(1, 0.5)), math.pi ** 2 / 3)

    def test_normalized_kernel(self):
        spec = EggDomainSpec(2, 2.0)
        p = DomainPoint(spec, 0.5, (0.2, 0.1))
        self.assertAlmostEqual(normalized_kernel(spec, PointPair(p, p)), 1.0, delta=1e-12)
        q = DomainPoint(spec, -0.4j, (0.0, 0.3))
        self.assertLess(normalized_kernel(spec, PointPair(p, q)), 1.0)

    def test_to_dict(self):
        spec = EggDomainSpec(1, 1.0)
        origin = DomainPoint.origin(spec)
        data = eval_kernel(spec, PointPair(origin, origin)).to_dict()
        self.assertAlmostEqual(data['value'][0], 2 / math.pi ** 2)
        self.assertEqual(data['X'], [0.0, 0.0])
        self.assertEqual(data['Y'], [1.0, 0.0])

    def test_should_raise_numerical_overflow_error(self):
        spec = EggDomainSpec(1, 1.0)
        near_boundary = DomainPoint(spec, 0.0, (1 - 1e-14,))
        with self.assertRaises(NumericalOverflowError):
            eval_kernel(spec, PointPair(near_boundary, near_boundary))

    def test_should_raise_value_error(self):
        origin = DomainPoint.origin(EggDomainSpec(1, 1.0))
        with self.assertRaises(ValueError):
            eval_kernel(EggDomainSpec(1, 2.0), PointPair(origin, origin))


if __name__ == '__main__':
    unittest.main()

import unittest

from src.pyluqikeng.monomial import MonomialIndex, compositions, monomial_indices


class TestMonomialIndex(unittest.TestCase):

    def test_monomial_index(self):
        idx = MonomialIndex(1, (0, 3))
        self.assertEqual(idx.total_degree, 4)
        self.assertEqual(idx.alpha_degree, 3)
        self.assertEqual(idx.alpha_factorial(), 6)
        self.assertEqual(str(idx), 'w^1*z_2^3')
        self.assertEqual(str(MonomialIndex(0, (0, 0))), '1')
        self.assertEqual(idx(2.0, (5.0, 0.5)), 0.25)

    def test_parse(self):
        self.assertEqual(MonomialIndex.parse('w*z_1^2', 2), MonomialIndex(1, (2, 0)))
        self.assertEqual(MonomialIndex.parse('1', 3), MonomialIndex(0, (0, 0, 0)))
        self.assertEqual(MonomialIndex.parse('w^2', 1), MonomialIndex(2, (0,)))
        idx = MonomialIndex(3, (1, 0, 2))
        self.assertEqual(MonomialIndex.parse(str(idx), 3), idx)

    def test_should_raise_value_error(self):
        with self.assertRaises(ValueError):
            MonomialIndex(-1, (0,))
        with self.assertRaises(ValueError):
            MonomialIndex(0, (1, -2))
        with self.assertRaises(ValueError):
            MonomialIndex.parse('z_3', 2)
        with self.assertRaises(ValueError):
            MonomialIndex.parse('x^2', 2)


class TestCompositions(unittest.TestCase):

    def test_compositions(self):
        self.assertEqual(list(compositions(2, 2)), [(2, 0), (1, 1), (0, 2)])
        self.assertEqual(list(compositions(0, 3)), [(0, 0, 0)])

    def test_monomial_indices(self):
        # 全次数dの(n+1)変数の単項式はC(d+n, n)個
        self.assertEqual(len(list(monomial_indices(2, 3))), 10)
        self.assertTrue(all(idx.total_degree == 4 for idx in monomial_indices(3, 4)))


if __name__ == '__main__':
    unittest.main()

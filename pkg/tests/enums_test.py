import unittest

from src.pyluqikeng.enums import CartanKind, LuQiKengStatus


class TestLuQiKengStatus(unittest.TestCase):

    def test_describe(self):
        self.assertEqual(LuQiKengStatus.LU_QI_KENG.describe(), 'LuQiKeng')
        self.assertEqual(LuQiKengStatus.NOT_LU_QI_KENG.describe(), 'NotLuQiKeng')
        self.assertEqual(LuQiKengStatus.BORDERLINE.describe(), 'Borderline')

    def test_exit_code(self):
        self.assertEqual(LuQiKengStatus.LU_QI_KENG.exit_code(), 0)
        self.assertEqual(LuQiKengStatus.NOT_LU_QI_KENG.exit_code(), 1)
        self.assertEqual(LuQiKengStatus.BORDERLINE.exit_code(), 2)

    def test_from_describe(self):
        for status in LuQiKengStatus:
            self.assertEqual(LuQiKengStatus.from_describe(status.describe()), status)
        with self.assertRaises(ValueError):
            LuQiKengStatus.from_describe('Unknown')


class TestCartanKind(unittest.TestCase):

    def test_describe(self):
        self.assertEqual(CartanKind.I.describe(), 'R_I(m, n)')
        self.assertEqual(CartanKind.IV.describe(), 'R_IV(n)')

    def test_is_exceptional(self):
        self.assertTrue(CartanKind.V.is_exceptional())
        self.assertTrue(CartanKind.VI.is_exceptional())
        self.assertFalse(CartanKind.III.is_exceptional())


if __name__ == '__main__':
    unittest.main()

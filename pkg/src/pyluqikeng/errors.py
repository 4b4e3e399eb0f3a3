class PyLuQiKengError(Exception):
    """Bergman核の計算およびLu Qi-Keng判定に由来するエラー"""


class InvalidSpecError(PyLuQiKengError):
    """領域のパラメータ(n, K)に関するエラー"""


class InvalidPointError(PyLuQiKengError):
    """領域に属さない点に関するエラー"""


class NumericalOverflowError(PyLuQiKengError):
    """境界の特異点に近すぎるため評価できない場合のエラー"""


class InvalidBasePointError(PyLuQiKengError):
    """自己同型の基点が単位球に属さない場合のエラー"""


class InsufficientSamplesError(PyLuQiKengError):
    """モンテカルロ積分のサンプル数が不足している場合のエラー"""


class CutoffTooSmallError(PyLuQiKengError):
    """級数の打ち切り次数が小さすぎる場合のエラー"""


class DegenerateZeroPolynomialError(PyLuQiKengError):
    """多項式の係数がすべて0である場合のエラー"""


class RootFindingError(PyLuQiKengError):
    """根の残差が許容値を満たさない場合のエラー"""


class NoSignChangeError(PyLuQiKengError):
    """二分法の区間の両端でマージンの符号が変わらない場合のエラー"""


class InadmissibleWitnessError(PyLuQiKengError):
    """零点の候補が単位円板の内部にない場合のエラー"""


class ShapeMismatchError(PyLuQiKengError):
    """Cartan領域の種類と行列の形が一致しない場合のエラー"""


class UnsupportedKindError(PyLuQiKengError):
    """行列による実現を扱わない例外型のCartan領域が指定された場合のエラー"""


class KernelZeroOnPathError(PyLuQiKengError):
    """Bergman核が評価点で0となり、対数が定義できない場合のエラー"""


class SingularMetricError(PyLuQiKengError):
    """Bergman計量行列の条件数が大きすぎる場合のエラー"""

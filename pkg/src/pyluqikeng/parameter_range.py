from __future__ import annotations

from collections.abc import Callable


def minmax(a: float, b: float) -> tuple[float, float]:
    if a > b:
        return b, a
    return a, b


class ParameterRange:
    """パラメータKの閉区間を表すクラス。

    二分法の区間およびスイープ範囲として用います。

    Args:
        start (float): 区間の開始値。
        finish (float): 区間の終了値。

    Attributes:
        start (float): 区間の開始値。
        finish (float): 区間の終了値。
        delta (float): 区間の幅。
    """

    def __init__(self, start: float, finish: float):
        self.start, self.finish = minmax(start, finish)
        self.delta = self.finish - self.start

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}({self.start}, {self.finish})"

    def __str__(self) -> str:
        return f"{self.start}->{self.finish}"

    def __format__(self, format_spec: str) -> str:
        return (
            f"{self.start.__format__(format_spec)}->"
            f"{self.finish.__format__(format_spec)}"
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ParameterRange):
            return NotImplemented
        return self.start == other.start and self.finish == other.finish

    def __hash__(self) -> int:
        return hash((self.start, self.finish))

    def __call__(self) -> tuple[float, float]:
        return self.start, self.finish

    def __contains__(self, value: float) -> bool:
        """区間内にあるかを返します(閉区間)。

        Examples:
            >>> 0.5 in ParameterRange(0.1, 0.9)
            True
            >>> 1.0 in ParameterRange(0.1, 0.9)
            False
        """
        return self.start <= value <= self.finish

    def midpoint(self) -> float:
        return self.start + self.delta / 2

    def bisect(self, keep_lower: bool) -> ParameterRange:
        """中点で区間を二分し、一方を返します。

        Args:
            keep_lower (bool): Trueの場合は下側の半区間、Falseの場合は上側の半区間を返します。

        Returns:
            ParameterRange: 半分の幅の区間。

        Examples:
            >>> ParameterRange(0.0, 1.0).bisect(True)
            ParameterRange(0.0, 0.5)
        """
        mid = self.midpoint()
        if keep_lower:
            return ParameterRange(self.start, mid)
        return ParameterRange(mid, self.finish)

    def grid(self, num: int) -> list[float]:
        """両端を含む等間隔の点を返します。

        Raises:
            ValueError: 点の数が2未満の場合。
        """
        if num < 2:
            raise ValueError(f'点の数は2以上である必要があります。指定値: {num}')
        step = self.delta / (num - 1)
        return [self.start + step * i for i in range(num - 1)] + [self.finish]


def bisect_sign_change(
    range_: ParameterRange,
    is_positive: Callable[[float], bool],
    precision: float
) -> ParameterRange:
    """区間の両端で符号の異なる述語の切り替わり点を二分法で挟み込みます。

    Args:
        range_ (ParameterRange): 初期区間。両端で述語の値が異なる必要があります。
        is_positive (Callable[[float], bool]): 符号を返す述語。
        precision (float): 最終的な区間幅の上限。

    Returns:
        ParameterRange: 幅がprecision以下の区間。

    Raises:
        ValueError: precisionが正でない場合、または両端で述語の値が等しい場合。
    """
    if precision <= 0:
        raise ValueError(f'精度は正である必要があります。指定値: {precision}')

    lower_positive = is_positive(range_.start)
    if lower_positive == is_positive(range_.finish):
        raise ValueError(
            '区間の両端で符号が変わりません。'
            f'区間: {range_}'
        )

    bracket = range_
    while bracket.delta > precision:
        mid = bracket.midpoint()
        mid_positive = is_positive(mid)
        bracket = bracket.bisect(keep_lower=mid_positive != lower_positive)

    return bracket

"""正則写像の数値微分。"""
from __future__ import annotations

from collections.abc import Callable

import numpy as np

ComplexFunction = Callable[[np.ndarray], np.ndarray]

# 正則関数用の4点公式の刻みと重み。f(z ± h)、f(z ± ih)を組み合わせるとh^2の誤差項が消える。
_STENCIL_DIRECTIONS = np.array([1.0, -1.0, 1.0j, -1.0j])
_STENCIL_WEIGHTS = np.array([1.0, -1.0, -1.0j, 1.0j]) / 4


def _unit(size: int, j: int) -> np.ndarray:
    e = np.zeros(size, dtype=complex)
    e[j] = 1.0
    return e


class FiniteDifference:
    """多変数の複素関数の差分近似を計算します。

    Args:
        func (ComplexFunction): 長さn_argsの複素配列を受け取る関数。
        n_args (int): 引数の次元。
        h (float): 差分の刻み。
    """

    def __init__(self, func: ComplexFunction, n_args: int, h: float):
        if h <= 0:
            raise ValueError(f'差分の刻みは正である必要があります。指定値: {h}')
        self.func = func
        self.n_args = n_args
        self.h = h

    def central(self, x: np.ndarray) -> np.ndarray:
        """実方向の中心差分でヤコビ行列を返します。

        正則写像の場合、複素微分∂f/∂z_jと一致します。

        Returns:
            np.ndarray: (出力の次元, n_args)の行列。
        """
        x = np.asarray(x, dtype=complex)
        columns = []
        for j in range(self.n_args):
            step = self.h * _unit(self.n_args, j)
            columns.append(
                (np.asarray(self.func(x + step)) - np.asarray(self.func(x - step))) / (2 * self.h)
            )
        return np.stack(columns, axis=-1)

    def holomorphic(self, x: np.ndarray) -> np.ndarray:
        """正則関数に対する4点公式でヤコビ行列を返します。打ち切り誤差はO(h^4)です。"""
        x = np.asarray(x, dtype=complex)
        columns = []
        for j in range(self.n_args):
            e = _unit(self.n_args, j)
            column = sum(
                weight * np.asarray(self.func(x + self.h * direction * e))
                for direction, weight in zip(_STENCIL_DIRECTIONS, _STENCIL_WEIGHTS)
            )
            columns.append(column / self.h)
        return np.stack(columns, axis=-1)


def mixed_holomorphic(
    func: Callable[[np.ndarray, np.ndarray], complex],
    x: np.ndarray,
    y: np.ndarray,
    h: float
) -> np.ndarray:
    """二変数とも正則な関数g(x, y)の混合2階微分∂^2 g/∂x_i∂y_jを返します。

    Returns:
        np.ndarray: (len(x), len(y))の行列。
    """
    x = np.asarray(x, dtype=complex)
    y = np.asarray(y, dtype=complex)
    result = np.zeros((x.size, y.size), dtype=complex)
    for i in range(x.size):
        e_i = _unit(x.size, i)
        for j in range(y.size):
            e_j = _unit(y.size, j)
            total = 0.0j
            for dx, wx in zip(_STENCIL_DIRECTIONS, _STENCIL_WEIGHTS):
                for dy, wy in zip(_STENCIL_DIRECTIONS, _STENCIL_WEIGHTS):
                    total += wx * wy * func(x + h * dx * e_i, y + h * dy * e_j)
            result[i, j] = total / h ** 2
    return result

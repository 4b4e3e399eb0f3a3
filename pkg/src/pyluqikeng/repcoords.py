"""Bergman計量と代表座標。

核K(Z, W)をZとv = W̄について正則な関数g(Z, v) = K(Z, v̄)とみなし、
正則関数用の差分公式で微分します。
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import LinAlgError, cho_factor, cho_solve

from .coefficients import EggDomainSpec, KernelCoefficients, kernel_coefficients
from .differentiation import FiniteDifference, mixed_holomorphic
from .errors import InvalidPointError, KernelZeroOnPathError, SingularMetricError
from .kernel import DomainPoint, kernel_array

# 4点公式の刻み。2階微分の丸め誤差はeps/h^2程度になる。
DERIVATIVE_STEP = 1e-3
CONDITION_LIMIT = 1e12
MIN_DEFECT = 1e-6
# 正規化した核がこれを下回る組では対数を取らない。
ZERO_THRESHOLD = 1e-10


def _holomorphic_kernel(coeffs: KernelCoefficients):
    def g(z: np.ndarray, v: np.ndarray) -> complex:
        value, _, _ = kernel_array(coeffs, z[0], z[1:], np.conj(v[0]), np.conj(v[1:]))
        return complex(value)
    return g


def _check_interior(point: DomainPoint) -> None:
    if point.defect <= MIN_DEFECT:
        raise InvalidPointError(
            '境界から離れた点が必要です。'
            f'境界までの距離: {point.defect:.3e} 点: ({point.W}, {point.Z})'
        )


@dataclass(frozen=True, eq=False)
class MetricMatrix:
    """Bergman計量の行列T = (∂^2 log K / ∂z_i ∂z̄_j)。

    Attributes:
        entries (np.ndarray): (n+1, n+1)の複素行列。
        base_point (DomainPoint): 評価点。
    """

    entries: np.ndarray
    base_point: DomainPoint

    def is_hermitian(self, atol: float = 1e-8) -> bool:
        return bool(np.allclose(self.entries, self.entries.conj().T, rtol=0.0, atol=atol))

    def condition_number(self) -> float:
        return float(np.linalg.cond(self.entries))


def metric_matrix(spec: EggDomainSpec, z: DomainPoint) -> MetricMatrix:
    """点zでのBergman計量の行列を数値微分で求めます。

    T_ij = (g g_{z_i v_j} - g_{z_i} g_{v_j}) / g^2を(z, z̄)で評価します。

    Args:
        spec (EggDomainSpec): 領域のパラメータ。
        z (DomainPoint): 評価点。

    Returns:
        MetricMatrix: 計量の行列。

    Raises:
        InvalidPointError: 点が境界に近すぎる場合。
    """
    _check_interior(z)
    g = _holomorphic_kernel(kernel_coefficients(spec))
    x = z.as_vector()
    v = np.conj(x)
    h = DERIVATIVE_STEP

    value = g(x, v)
    g_z = FiniteDifference(lambda y: g(y, v), spec.dimension, h).holomorphic(x)
    g_v = FiniteDifference(lambda y: g(x, y), spec.dimension, h).holomorphic(v)
    g_zv = mixed_holomorphic(g, x, v, h)
    entries = (value * g_zv - np.outer(g_z, g_v)) / value ** 2
    return MetricMatrix(entries, z)


class RepresentativeMap:
    """基点tでのBergmanの代表座標。

    f_i(Z) = Σ_j (T^{-1})_{ji} ∂/∂W̄_j log[K(Z, W) / K(W, W)] |_{W=t}

    Args:
        spec (EggDomainSpec): 領域のパラメータ。
        base_point (DomainPoint): 基点t。

    Raises:
        InvalidPointError: 基点が境界に近すぎる場合。
        SingularMetricError: 計量の条件数がCONDITION_LIMITを超える場合。
    """

    def __init__(self, spec: EggDomainSpec, base_point: DomainPoint):
        self.spec = spec
        self.base_point = base_point
        self.metric = metric_matrix(spec, base_point)
        if (condition := self.metric.condition_number()) > CONDITION_LIMIT:
            raise SingularMetricError(f'計量の条件数が大きすぎます。条件数: {condition:.3e}')
        try:
            # T^t = conj(T)もHermite正定値
            self._factor = cho_factor(np.conj(self.metric.entries))
        except LinAlgError as e:
            raise SingularMetricError(f'計量が正定値ではありません。基点: {base_point}') from e

        self._g = _holomorphic_kernel(kernel_coefficients(spec))
        self._v = np.conj(base_point.as_vector())
        self._base_derivative = self._log_derivative(base_point.as_vector())

    def _log_derivative(self, x: np.ndarray) -> np.ndarray:
        """D_j(Z) = ∂/∂W̄_j log K(Z, W) |_{W=t}。"""
        value = self._g(x, self._v)
        derivative = FiniteDifference(
            lambda y: self._g(x, y), self.spec.dimension, DERIVATIVE_STEP
        ).holomorphic(self._v)
        return derivative / value

    def map_vector(self, x: np.ndarray) -> np.ndarray:
        """座標の配列の像を返します。点の所属は検証しません。"""
        difference = self._log_derivative(np.asarray(x, dtype=complex)) - self._base_derivative
        return cho_solve(self._factor, difference)

    def check_nonzero(self, z: DomainPoint) -> None:
        """zと基点で核が0でないことを確かめます。

        Raises:
            KernelZeroOnPathError: 正規化した核がZERO_THRESHOLDを下回る場合。
        """
        x = z.as_vector()
        t = self.base_point.as_vector()
        off_diagonal = abs(self._g(x, self._v))
        diagonal = math.sqrt(self._g(x, np.conj(x)).real * self._g(t, self._v).real)
        if off_diagonal < ZERO_THRESHOLD * diagonal:
            raise KernelZeroOnPathError(
                'Bergman核が0となるため代表座標を定義できません。'
                f'正規化した核: {off_diagonal / diagonal:.3e} '
                f'点: ({z.W}, {z.Z}) 基点: ({self.base_point.W}, {self.base_point.Z})'
            )

    def __call__(self, z: DomainPoint) -> np.ndarray:
        _check_interior(z)
        self.check_nonzero(z)
        return self.map_vector(z.as_vector())

    def jacobian(self, z: DomainPoint) -> np.ndarray:
        """点zでの写像のヤコビ行列を数値微分で返します。"""
        return FiniteDifference(
            self.map_vector, self.spec.dimension, DERIVATIVE_STEP
        ).holomorphic(z.as_vector())


def representative_coordinates(
    spec: EggDomainSpec,
    base: DomainPoint,
    z: DomainPoint
) -> np.ndarray:
    """基点baseでの点zの代表座標を返します。

    Args:
        spec (EggDomainSpec): 領域のパラメータ。
        base (DomainPoint): 基点t。
        z (DomainPoint): 写す点。

    Returns:
        np.ndarray: 長さn+1の複素ベクトル。

    Raises:
        InvalidPointError: 点が境界に近すぎる場合。
        KernelZeroOnPathError: K(z, t)が0となる場合。
        SingularMetricError: 計量の条件数がCONDITION_LIMITを超える場合。
    """
    return RepresentativeMap(spec, base)(z)

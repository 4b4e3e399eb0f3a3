import math
from typing import Optional

import numpy as np

from .classifier import (
    DEFAULT_TOL,
    MAX_TOL,
    ClassificationResult,
    FiberPolynomial,
    ZeroLocus,
    classify,
    fiber_normalized_kernel,
    fiber_polynomial,
)
from .coefficients import EggDomainSpec, KernelCoefficients, kernel_coefficients
from .errors import InvalidSpecError
from .kernel import DomainPoint, domain_volume
from .repcoords import RepresentativeMap


class EggDomainAnalyzer:
    """卵形領域Y_I(1,1,n;K)のパラメータを設定し、核の係数、ファイバー多項式、Lu Qi-Keng判定を求めます。

    解析を行う場合はこのクラス経由で扱います。パラメータと許容値を検証したのちに計算するため、
    途中で予想外のエラーが生じることを回避することができます。

    Args:
        n (int): 底空間の次元。
        K (float): ファイバーの指数。
        tol (float): Lu Qi-Keng判定の許容値。

    Attributes:
        spec (EggDomainSpec): 領域のパラメータ。
        coefficients (KernelCoefficients): 核の係数。
        fiber (FiberPolynomial): ファイバー多項式。
        classification (ClassificationResult): 判定結果。
        volume (float): 領域の体積。

    Raises:
        InvalidSpecError: パラメータまたは許容値が不正な場合。
    """

    def __init__(self, n: int, K: float, tol: float = DEFAULT_TOL):
        if message := EggDomainAnalyzer.validate_parameters(n, K, tol):
            raise InvalidSpecError(message)

        self.spec = EggDomainSpec(n, K)
        self.coefficients: KernelCoefficients = kernel_coefficients(self.spec)
        self.fiber: FiberPolynomial = fiber_polynomial(self.coefficients)
        self.classification: ClassificationResult = classify(self.spec, tol)
        self.volume = domain_volume(self.spec)

    @staticmethod
    def validate_parameters(n: int, K: float, tol: float = DEFAULT_TOL) -> str:
        try:
            EggDomainSpec(n, K)
        except InvalidSpecError as e:
            return str(e)

        if not 0 < tol <= MAX_TOL:
            return (
                '判定の許容値が不正です。'
                f'指定値: {tol} 設定可能範囲: 0 ~ {MAX_TOL}'
            )

        return ''

    def create_coefficient_table(self) -> list[tuple[int, float]]:
        """係数の番号と値の組を返します。"""
        return list(enumerate(self.coefficients.b))

    def create_fiber_profile(self, radii: list[float], num_angles: int = 64) -> np.ndarray:
        """半径と偏角の格子上でファイバー上の正規化した核を返します。

        Returns:
            np.ndarray: (len(radii), num_angles)の配列。
        """
        angles = np.linspace(0.0, 2 * math.pi, num_angles, endpoint=False)
        s = np.outer(radii, np.exp(1j * angles))
        return fiber_normalized_kernel(self.spec, s)

    def create_zero_locus(self) -> Optional[ZeroLocus]:
        """単位円板の内部に根がある場合、|s|が最小の根の零点集合を返します。"""
        witnesses = self.classification.witness_roots
        if not witnesses:
            return None
        return ZeroLocus(self.spec, min(witnesses, key=abs))

    def create_representative_map(self, base_point: DomainPoint) -> RepresentativeMap:
        """基点での代表座標を返します。"""
        return RepresentativeMap(self.spec, base_point)

from __future__ import annotations

import cmath
import logging
import math
from collections.abc import Iterable, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np
from numpy.polynomial import polynomial as P

from .coefficients import EggDomainSpec, KernelCoefficients, kernel_coefficients
from .enums import LuQiKengStatus
from .errors import (
    DegenerateZeroPolynomialError,
    InadmissibleWitnessError,
    NoSignChangeError,
    RootFindingError,
)
from .kernel import DomainPoint, PointPair
from .parameter_range import ParameterRange, bisect_sign_change

logger = logging.getLogger(__name__)

DEFAULT_TOL = 1e-9
DEFAULT_PRECISION = 1e-6
ROOT_RESIDUAL_TOL = 1e-10
MAX_TOL = 1e-3
# 最大の係数に対してこれ以下の最高次の係数は0とみなす。
TRIM_RTOL = 1e-14
NEWTON_ITERATIONS = 3
SWEEP_GRID_POINTS = 21
LOCUS_TOL = 1e-10


@dataclass(frozen=True)
class FiberPolynomial:
    """原点上のファイバーで核の零点を与える多項式f(t)。

    f(t) = Σ_{i=1}^{n+1} i! b_i t^{n+1-i}、t = 1 - Wζ̄。

    Attributes:
        coefficients (tuple[float, ...]): tの昇順の係数。定数項は(n+1)! b_{n+1}。
        spec (EggDomainSpec): 領域のパラメータ。
    """

    coefficients: tuple[float, ...]
    spec: EggDomainSpec

    def trimmed(self) -> tuple[float, ...]:
        """0とみなせる最高次の係数を取り除いた係数を返します。

        Raises:
            DegenerateZeroPolynomialError: 係数がすべて0の場合。
        """
        scale = max(abs(c) for c in self.coefficients)
        if scale == 0.0:
            raise DegenerateZeroPolynomialError(f'多項式の係数がすべて0です。spec: {self.spec}')
        coefficients = list(self.coefficients)
        while len(coefficients) > 1 and abs(coefficients[-1]) <= TRIM_RTOL * scale:
            coefficients.pop()
        return tuple(coefficients)

    @property
    def degree(self) -> int:
        return len(self.trimmed()) - 1

    def __call__(self, t: Union[complex, np.ndarray]) -> Union[complex, np.ndarray]:
        return P.polyval(t, self.coefficients)

    def at_s(self, s: Union[complex, np.ndarray]) -> Union[complex, np.ndarray]:
        """s = Wζ̄での値f(1 - s)を返します。"""
        return self(1.0 - np.asarray(s))

    def to_dict(self) -> dict:
        return {'n': self.spec.n, 'K': self.spec.K, 'coefficients': list(self.coefficients)}


def fiber_polynomial(coeffs: KernelCoefficients) -> FiberPolynomial:
    """係数b_iからファイバー多項式f(t)を作ります。

    Examples:
        >>> fiber_polynomial(kernel_coefficients(EggDomainSpec(1, 2.0))).coefficients
        (2.0, 1.0)
    """
    n = coeffs.spec.n
    ascending = tuple(
        float(math.factorial(n + 1 - k) * coeffs[n + 1 - k]) for k in range(n + 1)
    )
    return FiberPolynomial(ascending, coeffs.spec)


def _residual_bound(coefficients: Sequence[float], root: complex) -> float:
    degree = len(coefficients) - 1
    scale = max(abs(c) for c in coefficients)
    return ROOT_RESIDUAL_TOL * scale * max(1.0, abs(root)) ** degree


def _newton(coefficients: Sequence[float], root: complex) -> complex:
    derivative = P.polyder(coefficients)
    best, best_residual = root, abs(P.polyval(root, coefficients))
    current = root
    for _ in range(NEWTON_ITERATIONS):
        slope = P.polyval(current, derivative)
        if slope == 0:
            break
        current = current - P.polyval(current, coefficients) / slope
        residual = abs(P.polyval(current, coefficients))
        if residual < best_residual:
            best, best_residual = current, residual
    return complex(best)


def find_roots(f: FiberPolynomial) -> list[complex]:
    """ファイバー多項式のすべての複素根tを返します。

    コンパニオン行列の固有値から根を求め、Newton法で補正します。
    1次式は直接解きます。

    Args:
        f (FiberPolynomial): ファイバー多項式。

    Returns:
        list[complex]: 根t。

    Raises:
        DegenerateZeroPolynomialError: 係数がすべて0の場合。
        RootFindingError: 根の残差が許容値を満たさない場合。
    """
    coefficients = f.trimmed()
    degree = len(coefficients) - 1
    if degree == 0:
        return []
    if degree == 1:
        candidates = [complex(-coefficients[0] / coefficients[1])]
    else:
        candidates = [_newton(coefficients, complex(r)) for r in P.polyroots(coefficients)]

    for root in candidates:
        residual = abs(P.polyval(root, coefficients))
        if residual >= _residual_bound(coefficients, root):
            raise RootFindingError(
                '根の残差が許容値を超えています。'
                f'根: {root} 残差: {residual:.3e} spec: {f.spec}'
            )
    return candidates


@dataclass(frozen=True)
class AdmissibilityRegion:
    """sの取りうる値の集合、開単位円板{s : |s| < 1}。

    内部の任意のsは領域の点の組((W, 0), (ζ, 0))によりs = Wζ̄として実現され、
    |s| >= 1のsは実現されません。

    Examples:
        >>> 0.5j in AdmissibilityRegion()
        True
        >>> -1.0 in AdmissibilityRegion()
        False
    """

    def __contains__(self, s: complex) -> bool:
        return abs(s) < 1.0

    def distance_to_boundary(self, s: complex) -> float:
        return abs(1.0 - abs(s))

    def realize(self, spec: EggDomainSpec, s: complex) -> PointPair:
        """s = Wζ̄となるZ = ξ = 0の組を返します。W = sqrt(|s|) e^{i arg s}、ζ = sqrt(|s|)とします。

        Raises:
            InadmissibleWitnessError: |s| >= 1の場合。
        """
        if s not in self:
            raise InadmissibleWitnessError(
                'sが単位円板の内部にありません。'
                f'|s|: {abs(s):.6g}'
            )
        radius = math.sqrt(abs(s))
        W = radius * cmath.exp(1j * cmath.phase(s))
        zero = (0.0,) * spec.n
        return PointPair(DomainPoint(spec, W, zero), DomainPoint(spec, radius, zero))


ADMISSIBLE = AdmissibilityRegion()


@dataclass(frozen=True)
class ClassificationResult:
    """Lu Qi-Keng判定の結果。

    Attributes:
        spec (EggDomainSpec): 領域のパラメータ。
        status (LuQiKengStatus): 判定結果。
        witness_roots (tuple[complex, ...]): 単位円板の内部にある根s = 1 - t。
        margin (float): 根sについての1 - |s|の最大値。根がない場合は-inf。
        roots (tuple[complex, ...]): すべての根s。
        tol (float): 判定の許容値。
    """

    spec: EggDomainSpec
    status: LuQiKengStatus
    witness_roots: tuple[complex, ...]
    margin: float
    roots: tuple[complex, ...] = field(default=())
    tol: float = DEFAULT_TOL

    def is_lu_qi_keng(self) -> bool:
        return self.status == LuQiKengStatus.LU_QI_KENG

    def to_dict(self) -> dict:
        return {
            'n': self.spec.n,
            'K': self.spec.K,
            'status': self.status.describe(),
            'margin': self.margin if math.isfinite(self.margin) else None,
            'witnesses': [[s.real, s.imag] for s in self.witness_roots],
            'roots': [
                {'s': [s.real, s.imag], 'distance_to_circle': ADMISSIBLE.distance_to_boundary(s)}
                for s in self.roots
            ],
            'tol': self.tol,
        }


def _status(margin: float, tol: float) -> LuQiKengStatus:
    if margin > tol:
        return LuQiKengStatus.NOT_LU_QI_KENG
    if margin > 0.0:
        return LuQiKengStatus.BORDERLINE
    return LuQiKengStatus.LU_QI_KENG


def _root_margin(roots_s: Iterable[complex]) -> float:
    return max((1.0 - abs(s) for s in roots_s), default=-math.inf)


def fiber_roots(spec: EggDomainSpec) -> list[complex]:
    """ファイバー多項式の根をs = 1 - tとして返します。"""
    f = fiber_polynomial(kernel_coefficients(spec))
    return [1.0 - t for t in find_roots(f)]


def margin(spec: EggDomainSpec) -> float:
    """根sについての1 - |s|の最大値を返します。正であれば核は零点を持ちます。"""
    return _root_margin(fiber_roots(spec))


def classify(spec: EggDomainSpec, tol: float = DEFAULT_TOL) -> ClassificationResult:
    """卵形領域がLu Qi-Keng領域であるかを判定します。

    マージンmがtolを超えればNotLuQiKeng、0 < m <= tolであればBorderline、
    m <= 0であればLuQiKengです。単位円周上の根は開領域の外にあるため零点を与えません。

    Args:
        spec (EggDomainSpec): 領域のパラメータ。
        tol (float): 判定の許容値。0 < tol <= 1e-3。

    Returns:
        ClassificationResult: 判定結果。

    Raises:
        ValueError: tolが範囲外の場合。
        RootFindingError: 根が求まらない場合。

    Examples:
        >>> classify(EggDomainSpec(2, 0.25)).status
        <LuQiKengStatus.NOT_LU_QI_KENG: 2>
    """
    if not 0.0 < tol <= MAX_TOL:
        raise ValueError(f'許容値は0より大きく{MAX_TOL}以下である必要があります。指定値: {tol}')

    roots = tuple(complex(s) for s in fiber_roots(spec))
    margin_ = _root_margin(roots)
    witnesses = tuple(s for s in roots if s in ADMISSIBLE)
    result = ClassificationResult(spec, _status(margin_, tol), witnesses, margin_, roots, tol)
    logger.debug('spec: %s 判定: %s マージン: %.3e', spec, result.status.describe(), margin_)
    return result


def margin_profile(
    n: int,
    Ks: Iterable[float],
    workers: Optional[int] = None
) -> list[tuple[float, float]]:
    """複数のKについてマージンを求め、(K, マージン)の組を返します。"""
    Ks = list(Ks)

    def evaluate(K: float) -> tuple[float, float]:
        return K, margin(EggDomainSpec(n, K))

    if workers is not None and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            return list(executor.map(evaluate, Ks))
    return [evaluate(K) for K in Ks]


@dataclass(frozen=True)
class ThresholdReport:
    """零点の有無が切り替わるKの閾値。

    Attributes:
        n (int): 底空間の次元。
        K_star (float): 閾値の推定値。区間の中点です。
        bracket (ParameterRange): 閾値を挟む区間。
        samples (tuple[tuple[float, float], ...]): 評価した(K, マージン)の組。Kの昇順。
    """

    n: int
    K_star: float
    bracket: ParameterRange
    samples: tuple[tuple[float, float], ...]

    def to_dict(self) -> dict:
        return {
            'n': self.n,
            'K_star': self.K_star,
            'bracket': list(self.bracket()),
        }


def threshold_sweep(
    n: int,
    K_range: Union[ParameterRange, tuple[float, float]],
    precision: float = DEFAULT_PRECISION,
    grid_points: int = SWEEP_GRID_POINTS,
    workers: Optional[int] = None
) -> ThresholdReport:
    """マージンの符号が変わるKを二分法で求めます。

    区間全体を等間隔に評価したのち、マージンが正であるかを述語として二分法を行います。

    Args:
        n (int): 底空間の次元。
        K_range (ParameterRange | tuple[float, float]): 探索区間(lo, hi)。
        precision (float): 閾値を挟む区間の幅の上限。
        grid_points (int): 最初に評価する等間隔の点の数。
        workers (Optional[int]): 等間隔の評価に用いるスレッド数。

    Returns:
        ThresholdReport: 閾値の推定値。

    Raises:
        ValueError: lo >= hiの場合、またはprecisionが正でない場合。
        NoSignChangeError: 区間の両端でマージンの符号が変わらない場合。
    """
    if not isinstance(K_range, ParameterRange):
        lo, hi = K_range
        if not lo < hi:
            raise ValueError(f'区間の下端は上端より小さい必要があります。指定値: ({lo}, {hi})')
        K_range = ParameterRange(lo, hi)
    if K_range.delta <= 0:
        raise ValueError(f'区間の幅は正である必要があります。区間: {K_range}')
    if precision <= 0:
        raise ValueError(f'精度は正である必要があります。指定値: {precision}')

    samples = dict(margin_profile(n, K_range.grid(grid_points), workers))
    lower_positive = samples[K_range.start] > 0
    if lower_positive == (samples[K_range.finish] > 0):
        raise NoSignChangeError(
            '区間の両端でマージンの符号が変わりません。'
            f'n: {n} 区間: {K_range} '
            f'マージン: {samples[K_range.start]:.3e}, {samples[K_range.finish]:.3e}'
        )

    def is_positive(K: float) -> bool:
        if K not in samples:
            samples[K] = margin(EggDomainSpec(n, K))
        return samples[K] > 0

    bracket = bisect_sign_change(K_range, is_positive, precision)
    logger.debug('n: %d 閾値の区間: %s', n, bracket)
    return ThresholdReport(n, bracket.midpoint(), bracket, tuple(sorted(samples.items())))


@dataclass(frozen=True)
class ZeroLocus:
    """核の零点集合Wζ̄(1 - Z·ξ̄)^{-1/K} = sを表す述語。

    Args:
        spec (EggDomainSpec): 領域のパラメータ。
        s (complex): ファイバー多項式の根s。|s| < 1。

    Raises:
        InadmissibleWitnessError: |s| >= 1の場合。
    """

    spec: EggDomainSpec
    s: complex

    def __post_init__(self) -> None:
        object.__setattr__(self, 's', complex(self.s))
        if self.s not in ADMISSIBLE:
            raise InadmissibleWitnessError(
                '零点の候補が単位円板の内部にありません。'
                f'|s|: {abs(self.s):.6g}'
            )

    def __call__(self, pair: PointPair, tol: float = LOCUS_TOL) -> bool:
        p, q = pair.p, pair.q
        u = complex(np.sum(np.array(p.Z) * np.conj(np.array(q.Z))))
        X = p.W * q.W.conjugate() * (1.0 - u) ** (-1.0 / self.spec.K)
        return abs(X - self.s) < tol

    def fiber_pair(self) -> PointPair:
        """Z = ξ = 0となる零点集合上の組を返します。"""
        return ADMISSIBLE.realize(self.spec, self.s)

    def pair_through(
        self,
        zeta: complex,
        Z: Sequence[complex],
        xi: Sequence[complex]
    ) -> PointPair:
        """ζ、Z、ξを与えて述語を満たすWを解き、零点集合上の組を返します。

        Raises:
            ValueError: ζ = 0の場合。
            InvalidPointError: 解いた点が領域に属さない場合。
        """
        if zeta == 0:
            raise ValueError('ζが0の場合はWを定められません。')
        u = complex(np.sum(np.array(Z, dtype=complex) * np.conj(np.array(xi, dtype=complex))))
        W = self.s * (1.0 - u) ** (1.0 / self.spec.K) / complex(zeta).conjugate()
        return PointPair(DomainPoint(self.spec, W, tuple(Z)), DomainPoint(self.spec, zeta, tuple(xi)))


def zero_locus(spec: EggDomainSpec, witness_s: complex) -> ZeroLocus:
    """根sに対応する核の零点集合を返します。"""
    return ZeroLocus(spec, witness_s)


def fiber_normalized_kernel(
    spec: EggDomainSpec,
    s: Union[complex, np.ndarray]
) -> Union[float, np.ndarray]:
    """ファイバー上の核から0にならない因子y^{n+2}と定数を除いた|f(1 - s)| / (n+1)!を返します。"""
    f = fiber_polynomial(kernel_coefficients(spec))
    return np.abs(f.at_s(s)) / math.factorial(spec.n + 1)

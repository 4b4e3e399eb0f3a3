from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Union

import numpy as np
from scipy.special import gammaln

from .coefficients import EggDomainSpec, KernelCoefficients, kernel_coefficients
from .errors import InvalidPointError, NumericalOverflowError

# 境界までの距離がこれより小さい点では核を評価しない。
BOUNDARY_DEFECT = 1e-12
SINGULAR_DISTANCE = 1e-14

ArrayLike = Union[complex, np.ndarray]


def membership_defect(spec: EggDomainSpec, W: ArrayLike, Z: ArrayLike) -> ArrayLike:
    """1 - (|W|^{2K} + ||Z||^2)を返します。正であることが領域に属する条件です。"""
    Z = np.asarray(Z)
    return 1.0 - (np.abs(W) ** (2 * spec.K) + np.sum(np.abs(Z) ** 2, axis=-1))


@dataclass(frozen=True)
class DomainPoint:
    """卵形領域の点(W, Z)。

    Args:
        spec (EggDomainSpec): 領域のパラメータ。
        W (complex): ファイバー座標。
        Z (tuple[complex, ...]): 底空間の座標。長さはn。

    Raises:
        InvalidPointError: Zの長さがnでない場合、または点が領域に属さない場合。

    Examples:
        >>> DomainPoint(EggDomainSpec(1, 1.0), 0.3, (0.1j,))
        DomainPoint(spec=EggDomainSpec(n=1, K=1.0), W=(0.3+0j), Z=(0.1j,))
    """

    spec: EggDomainSpec
    W: complex
    Z: tuple[complex, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, 'W', complex(self.W))
        object.__setattr__(self, 'Z', tuple(complex(z) for z in self.Z))
        if len(self.Z) != self.spec.n:
            raise InvalidPointError(
                '底空間の座標の次元が不正です。'
                f'必要な次元: {self.spec.n} 指定された次元: {len(self.Z)}'
            )
        if not self.defect > 0:
            raise InvalidPointError(
                '点が領域に属していません。'
                f'|W|^(2K) + ||Z||^2: {1 - self.defect:.6g} 点: ({self.W}, {self.Z})'
            )

    @property
    def defect(self) -> float:
        return float(membership_defect(self.spec, self.W, np.array(self.Z)))

    def as_vector(self) -> np.ndarray:
        """座標(W, z_1, ..., z_n)を並べた配列を返します。"""
        return np.array((self.W,) + self.Z, dtype=complex)

    @classmethod
    def from_vector(cls, spec: EggDomainSpec, vector: Sequence[complex]) -> DomainPoint:
        return cls(spec, vector[0], tuple(vector[1:]))

    @classmethod
    def origin(cls, spec: EggDomainSpec) -> DomainPoint:
        return cls(spec, 0.0, (0.0,) * spec.n)

    def to_pairs(self) -> list[list[float]]:
        """[[re, im], ...]の形式で座標を返します。"""
        return [[z.real, z.imag] for z in (self.W,) + self.Z]

    @classmethod
    def from_pairs(cls, spec: EggDomainSpec, pairs: Sequence[Sequence[float]]) -> DomainPoint:
        if any(len(pair) != 2 for pair in pairs):
            raise InvalidPointError(f'座標は[re, im]の組である必要があります。値: {pairs}')
        return cls.from_vector(spec, [complex(re, im) for re, im in pairs])


@dataclass(frozen=True)
class PointPair:
    """核を評価する点の組(p, q)。

    Raises:
        InvalidPointError: 二点が異なる領域に属する場合。
    """

    p: DomainPoint
    q: DomainPoint

    def __post_init__(self) -> None:
        if self.p.spec != self.q.spec:
            raise InvalidPointError(
                '二点は同じ領域に属する必要があります。'
                f'p: {self.p.spec} q: {self.q.spec}'
            )

    @property
    def spec(self) -> EggDomainSpec:
        return self.p.spec

    def swapped(self) -> PointPair:
        return PointPair(self.q, self.p)


@dataclass(frozen=True)
class KernelValue:
    """核の値と中間量X, Y。"""

    value: complex
    X: complex
    Y: complex

    def to_dict(self) -> dict:
        return {
            'value': [self.value.real, self.value.imag],
            'X': [self.X.real, self.X.imag],
            'Y': [self.Y.real, self.Y.imag],
        }


def _F(coeffs: KernelCoefficients, Y: ArrayLike) -> ArrayLike:
    # F(Y) = Σ b_i i! Y^{i+1}
    acc: ArrayLike = 0.0
    for i in range(len(coeffs) - 1, -1, -1):
        acc = acc * Y + coeffs[i] * math.factorial(i)
    return acc * Y


def kernel_array(
    coeffs: KernelCoefficients,
    W: ArrayLike,
    Z: ArrayLike,
    zeta: ArrayLike,
    xi: ArrayLike
) -> tuple[ArrayLike, ArrayLike, ArrayLike]:
    """配列に対して閉じた式の核K((W,Z),(ζ,ξ))をまとめて評価します。

    Zとξは最後の軸を底空間の成分とみなします。境界への近さは検証しません。

    Returns:
        tuple: 核の値、X、Y。
    """
    spec = coeffs.spec
    u = np.sum(np.asarray(Z) * np.conj(np.asarray(xi)), axis=-1)
    base = 1.0 - u
    X = W * np.conj(zeta) * base ** (-1.0 / spec.K)
    Y = 1.0 / (1.0 - X)
    prefactor = spec.K ** (-spec.n) * math.pi ** (-(spec.n + 1))
    value = prefactor * _F(coeffs, Y) * base ** (-(spec.n + 1 + 1.0 / spec.K))
    return value, X, Y


def eval_kernel(spec: EggDomainSpec, pair: PointPair) -> KernelValue:
    """閉じた式でBergman核を評価します。

    K = K^{-n} π^{-(n+1)} F(Y) (1 - Z·ξ̄)^{-(n+1+1/K)}、
    X = W ζ̄ (1 - Z·ξ̄)^{-1/K}、Y = (1 - X)^{-1}。べきは主値を用います。

    Args:
        spec (EggDomainSpec): 領域のパラメータ。
        pair (PointPair): 評価点の組。

    Returns:
        KernelValue: 核の値。

    Raises:
        ValueError: 点の組が別の領域に属する場合。
        NumericalOverflowError: 点が境界に近すぎる場合、またはXが1に近すぎる場合。
    """
    if pair.spec != spec:
        raise ValueError(f'点の組の領域が一致しません。指定: {spec} 点: {pair.spec}')
    for point in (pair.p, pair.q):
        if point.defect < BOUNDARY_DEFECT:
            raise NumericalOverflowError(
                '点が境界に近すぎるため核を評価できません。'
                f'境界までの距離: {point.defect:.3e} 点: ({point.W}, {point.Z})'
            )

    value, X, Y = kernel_array(
        kernel_coefficients(spec),
        pair.p.W,
        np.array(pair.p.Z),
        pair.q.W,
        np.array(pair.q.Z)
    )
    if abs(X - 1) < SINGULAR_DISTANCE:
        raise NumericalOverflowError(f'Xが特異点1に近すぎます。X: {X}')
    return KernelValue(complex(value), complex(X), complex(Y))


def kernel_on_fiber(spec: EggDomainSpec, s: ArrayLike) -> ArrayLike:
    """原点上のファイバーでの核K((W,0),(ζ,0))をs = Wζ̄の関数として返します。"""
    y = 1.0 / (1.0 - np.asarray(s))
    return spec.K ** (-spec.n) * math.pi ** (-(spec.n + 1)) * _F(kernel_coefficients(spec), y)


def normalized_kernel(spec: EggDomainSpec, pair: PointPair) -> float:
    """|K(p, q)| / sqrt(K(p, p) K(q, q))を返します。"""
    value = eval_kernel(spec, pair).value
    diagonal_p = eval_kernel(spec, PointPair(pair.p, pair.p)).value.real
    diagonal_q = eval_kernel(spec, PointPair(pair.q, pair.q)).value.real
    return abs(value) / math.sqrt(diagonal_p * diagonal_q)


def domain_volume(spec: EggDomainSpec) -> float:
    """領域の体積π^{n+1} Γ(1/K) / (K Γ(1/K+n+1))を返します。

    原点での核の値の逆数に等しくなります。

    Examples:
        >>> round(domain_volume(EggDomainSpec(1, 1.0)), 6)
        4.934802
    """
    c = 1.0 / spec.K
    return math.exp(
        (spec.n + 1) * math.log(math.pi)
        + gammaln(c) - math.log(spec.K) - gammaln(c + spec.n + 1)
    )

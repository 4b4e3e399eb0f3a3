from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Union

import numpy as np

from .coefficients import EggDomainSpec
from .differentiation import FiniteDifference
from .errors import InvalidBasePointError
from .kernel import DomainPoint, PointPair, eval_kernel

JACOBIAN_STEP = 1e-6

ArrayLike = Union[complex, np.ndarray]


def _inner(z: np.ndarray, a: np.ndarray) -> ArrayLike:
    """<z, a> = Σ z_j conj(a_j)。zは最後の軸を成分とみなします。"""
    return np.sum(z * np.conj(a), axis=-1)


def ball_automorphism(a: Sequence[complex], z: np.ndarray) -> np.ndarray:
    """aを原点に移す単位球の正則自己同型ψ_a(z)を返します。

    ψ_a(z) = (P_a z - a + sqrt(1-|a|^2) Q_a z) / (1 - <z, a>)。
    P_aはaへの射影、Q_a = I - P_aです。a = 0の場合は恒等写像です。

    Args:
        a (Sequence[complex]): 原点に移す点。|a| < 1。
        z (np.ndarray): 写す点。最後の軸を成分とみなします。

    Returns:
        np.ndarray: 像ψ_a(z)。

    Raises:
        InvalidBasePointError: |a| >= 1の場合。
    """
    a = np.asarray(a, dtype=complex)
    z = np.asarray(z, dtype=complex)
    norm_sq = float(np.sum(np.abs(a) ** 2))
    if norm_sq >= 1.0:
        raise InvalidBasePointError(f'基点が単位球に属していません。|a|^2: {norm_sq:.6g}')
    if norm_sq == 0.0:
        return z.copy()

    za = _inner(z, a)
    projection = (za / norm_sq)[..., np.newaxis] * a
    complement = z - projection
    numerator = projection - a + math.sqrt(1.0 - norm_sq) * complement
    return numerator / (1.0 - za)[..., np.newaxis]


@dataclass(frozen=True)
class CenteringAutomorphism:
    """底空間の点Z0を0に移す卵形領域の正則自己同型。

    (W, Z) -> (W [sqrt(1-|Z0|^2) / (1 - <Z, Z0>)]^{1/K}, ψ_{Z0}(Z))

    べきは主値を用います。1 - <Z, Z0>は領域上で実部が正です。

    Args:
        spec (EggDomainSpec): 領域のパラメータ。
        Z0 (tuple[complex, ...]): 0に移す底空間の点。

    Raises:
        InvalidBasePointError: Z0の長さがnでない場合、または|Z0| >= 1の場合。
    """

    spec: EggDomainSpec
    Z0: tuple[complex, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, 'Z0', tuple(complex(z) for z in self.Z0))
        if len(self.Z0) != self.spec.n:
            raise InvalidBasePointError(
                '基点の次元が不正です。'
                f'必要な次元: {self.spec.n} 指定された次元: {len(self.Z0)}'
            )
        if self.norm_sq >= 1.0:
            raise InvalidBasePointError(
                '基点が単位球に属していません。'
                f'|Z0|^2: {self.norm_sq:.6g}'
            )

    @property
    def norm_sq(self) -> float:
        return sum(abs(z) ** 2 for z in self.Z0)

    def is_identity(self) -> bool:
        return self.norm_sq == 0.0

    def map_vector(self, vector: np.ndarray) -> np.ndarray:
        """座標(W, z_1, ..., z_n)を並べた配列の像を返します。領域の外でも式の値を返します。"""
        vector = np.asarray(vector, dtype=complex)
        if self.is_identity():
            return vector.copy()
        W, Z = vector[..., 0], vector[..., 1:]
        Z0 = np.array(self.Z0)
        factor = (math.sqrt(1.0 - self.norm_sq) / (1.0 - _inner(Z, Z0))) ** (1.0 / self.spec.K)
        W_star = W * factor
        Z_star = ball_automorphism(Z0, Z)
        return np.concatenate([np.asarray(W_star)[..., np.newaxis], Z_star], axis=-1)

    def __call__(self, point: DomainPoint) -> DomainPoint:
        return DomainPoint.from_vector(self.spec, self.map_vector(point.as_vector()))

    def jacobian_det(self, point: DomainPoint, step: float = JACOBIAN_STEP) -> complex:
        """点におけるヤコビ行列式を中心差分で求めます。恒等写像の場合は1を返します。"""
        if self.is_identity():
            return 1.0 + 0.0j
        difference = FiniteDifference(self.map_vector, self.spec.dimension, step)
        return complex(np.linalg.det(difference.central(point.as_vector())))


def centering_automorphism(
    spec: EggDomainSpec,
    Z0: Sequence[complex]
) -> CenteringAutomorphism:
    """底空間の点Z0を0に移す自己同型を返します。

    Examples:
        >>> auto = centering_automorphism(EggDomainSpec(1, 1.0), [0.5])
        >>> abs(auto(DomainPoint(EggDomainSpec(1, 1.0), 0.1, (0.5,))).Z[0]) < 1e-12
        True
    """
    return CenteringAutomorphism(spec, tuple(Z0))


def verify_transformation_rule(
    spec: EggDomainSpec,
    auto: CenteringAutomorphism,
    pair: PointPair
) -> float:
    """変換則K(p, q) = det J_F(p) K(F(p), F(q)) conj(det J_F(q))の相対残差を返します。

    Args:
        spec (EggDomainSpec): 領域のパラメータ。
        auto (CenteringAutomorphism): 自己同型F。
        pair (PointPair): 評価点の組。

    Returns:
        float: |K(p,q) - det J_F(p) K(F(p),F(q)) conj(det J_F(q))| / |K(p,q)|。

    Raises:
        NumericalOverflowError: 点が境界に近すぎる場合。
    """
    original = eval_kernel(spec, pair).value
    image = eval_kernel(spec, PointPair(auto(pair.p), auto(pair.q))).value
    transformed = auto.jacobian_det(pair.p) * image * np.conj(auto.jacobian_det(pair.q))
    return abs(original - transformed) / abs(original)


def verify_homogeneous_formula(spec: EggDomainSpec, pair: PointPair) -> float:
    """等質な場合(K = 1、領域は単位球B_{n+1})の公式K(p, q) = det J_F(p) K(0, 0) conj(det J_F(q))の相対残差を返します。

    Fはpを原点に移す単位球の自己同型ψ_pです。

    Raises:
        ValueError: K != 1の場合。
    """
    if not spec.is_ball():
        raise ValueError(f'等質な場合(K = 1)のみ検証できます。K: {spec.K}')

    p = pair.p.as_vector()

    def F(v: np.ndarray) -> np.ndarray:
        return ball_automorphism(p, v)

    difference = FiniteDifference(F, spec.dimension, JACOBIAN_STEP)
    det_p = complex(np.linalg.det(difference.central(p)))
    det_q = complex(np.linalg.det(difference.central(pair.q.as_vector())))
    origin = DomainPoint.origin(spec)
    at_origin = eval_kernel(spec, PointPair(origin, origin)).value
    original = eval_kernel(spec, pair).value
    return abs(original - det_p * at_origin * np.conj(det_q)) / abs(original)

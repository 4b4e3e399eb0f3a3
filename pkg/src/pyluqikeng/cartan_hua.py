from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Union

import numpy as np

from .enums import CartanKind
from .errors import InvalidSpecError, ShapeMismatchError, UnsupportedKindError

# Cholesky分解のピボットがこれ以下の場合は正定値とみなさない。
PIVOT_THRESHOLD = 1e-14
SYMMETRY_ATOL = 1e-12

MatrixLike = Union[np.ndarray, Sequence]


def symmetric_from_entries(p: int, entries: Sequence[complex]) -> np.ndarray:
    """上三角(対角を含む)の成分を行ごとに並べた列からp次対称行列を作ります。

    Raises:
        ShapeMismatchError: 成分の数がp(p+1)/2でない場合。

    Examples:
        >>> symmetric_from_entries(2, [1, 2, 3]).real
        array([[1., 2.],
               [2., 3.]])
    """
    expected = p * (p + 1) // 2
    if len(entries) != expected:
        raise ShapeMismatchError(
            '対称行列の成分の数が不正です。'
            f'必要な数: {expected} 指定された数: {len(entries)}'
        )
    matrix = np.zeros((p, p), dtype=complex)
    matrix[np.triu_indices(p)] = entries
    return matrix + np.triu(matrix, 1).T


def skew_symmetric_from_entries(q: int, entries: Sequence[complex]) -> np.ndarray:
    """狭義上三角の成分を行ごとに並べた列からq次交代行列を作ります。

    Raises:
        ShapeMismatchError: 成分の数がq(q-1)/2でない場合。
    """
    expected = q * (q - 1) // 2
    if len(entries) != expected:
        raise ShapeMismatchError(
            '交代行列の成分の数が不正です。'
            f'必要な数: {expected} 指定された数: {len(entries)}'
        )
    matrix = np.zeros((q, q), dtype=complex)
    matrix[np.triu_indices(q, 1)] = entries
    return matrix - matrix.T


@dataclass(frozen=True)
class CartanDomainSpec:
    """行列で実現される4種類のCartan領域。

    R_I(m, n)は(m, n)行列、R_II(p)はp次対称行列、R_III(q)はq次交代行列、
    R_IV(n)はn次元ベクトルを座標とします。

    Args:
        kind (CartanKind): 領域の種類。
        shape (tuple[int, ...]): 種類Iは(m, n)、それ以外は(p,)、(q,)、(n,)。

    Raises:
        UnsupportedKindError: 例外型(V, VI)が指定された場合。
        InvalidSpecError: 形が不正な場合。
    """

    kind: CartanKind
    shape: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.kind.is_exceptional():
            raise UnsupportedKindError(
                f'例外型のCartan領域は扱えません。種類: {self.kind.describe()}'
            )
        object.__setattr__(self, 'shape', tuple(int(s) for s in self.shape))
        expected = 2 if self.kind == CartanKind.I else 1
        if len(self.shape) != expected or any(s < 1 for s in self.shape):
            raise InvalidSpecError(
                'Cartan領域の形が不正です。'
                f'種類: {self.kind.describe()} 形: {self.shape}'
            )
        if self.kind == CartanKind.III and self.shape[0] < 2:
            raise InvalidSpecError(f'R_III(q)はq >= 2である必要があります。指定値: {self.shape[0]}')

    @classmethod
    def type_I(cls, m: int, n: int) -> CartanDomainSpec:
        return cls(CartanKind.I, (m, n))

    @classmethod
    def type_II(cls, p: int) -> CartanDomainSpec:
        return cls(CartanKind.II, (p,))

    @classmethod
    def type_III(cls, q: int) -> CartanDomainSpec:
        return cls(CartanKind.III, (q,))

    @classmethod
    def type_IV(cls, n: int) -> CartanDomainSpec:
        return cls(CartanKind.IV, (n,))

    @property
    def dimension(self) -> int:
        """領域の複素次元。"""
        if self.kind == CartanKind.I:
            return self.shape[0] * self.shape[1]
        size = self.shape[0]
        if self.kind == CartanKind.II:
            return size * (size + 1) // 2
        if self.kind == CartanKind.III:
            return size * (size - 1) // 2
        return size

    def as_matrix(self, Z: MatrixLike) -> np.ndarray:
        """座標を行列(種類IVはベクトル)に直します。

        種類IIとIIIでは独立な成分の列、または対称性を満たす行列を受け付けます。
        種類Iでは(m, n)行列、または長さmnの列を受け付けます。

        Raises:
            ShapeMismatchError: 形が種類と一致しない場合。
        """
        Z = np.asarray(Z, dtype=complex)
        if self.kind == CartanKind.IV:
            if Z.shape != self.shape:
                raise ShapeMismatchError(f'R_IV({self.shape[0]})の座標の形が不正です。形: {Z.shape}')
            return Z
        if self.kind == CartanKind.I:
            m, n = self.shape
            if Z.ndim == 1 and Z.size == m * n:
                return Z.reshape(m, n)
            if Z.shape != (m, n):
                raise ShapeMismatchError(f'R_I({m}, {n})の座標の形が不正です。形: {Z.shape}')
            return Z

        size = self.shape[0]
        if Z.ndim == 1:
            if self.kind == CartanKind.II:
                return symmetric_from_entries(size, Z)
            return skew_symmetric_from_entries(size, Z)
        if Z.shape != (size, size):
            raise ShapeMismatchError(
                f'{self.kind.describe()}の座標の形が不正です。'
                f'必要な形: {(size, size)} 指定された形: {Z.shape}'
            )
        sign = 1 if self.kind == CartanKind.II else -1
        if not np.allclose(Z, sign * Z.T, rtol=0.0, atol=SYMMETRY_ATOL):
            raise ShapeMismatchError(
                f'{self.kind.describe()}の座標は'
                f'{"対称" if sign == 1 else "交代"}行列である必要があります。'
            )
        return Z


def generic_norm(spec: CartanDomainSpec, Z: MatrixLike) -> float:
    """Cartan領域の一般ノルムN_D(Z, Z̄)を返します。

    種類I-IIIはdet(I - Z Z̄^t)、種類IVは1 - 2 Z Z̄^t + |Z Z^t|^2です。

    Raises:
        ShapeMismatchError: 形が種類と一致しない場合。

    Examples:
        >>> generic_norm(CartanDomainSpec.type_IV(2), [0.5, 0])
        0.5625
    """
    Z = spec.as_matrix(Z)
    if spec.kind == CartanKind.IV:
        return float(1.0 - 2.0 * np.vdot(Z, Z).real + abs(np.dot(Z, Z)) ** 2)
    identity = np.eye(Z.shape[0])
    return float(np.linalg.det(identity - Z @ Z.conj().T).real)


def is_positive_definite(matrix: np.ndarray, threshold: float = PIVOT_THRESHOLD) -> bool:
    """Hermite行列がCholesky分解でき、すべてのピボットがthresholdを超えるかを返します。"""
    try:
        lower = np.linalg.cholesky(matrix)
    except np.linalg.LinAlgError:
        return False
    return bool(np.all(np.abs(np.diag(lower)) ** 2 > threshold))


def is_member(spec: CartanDomainSpec, Z: MatrixLike) -> bool:
    """ZがCartan領域に属するかを返します。

    種類I-IIIはI - Z Z̄^tの正定値性、種類IVは二つの不等式で判定します。
    行列式の符号では判定しません。

    Raises:
        ShapeMismatchError: 形が種類と一致しない場合。
    """
    Z = spec.as_matrix(Z)
    if spec.kind == CartanKind.IV:
        square = abs(np.dot(Z, Z)) ** 2
        return bool(1.0 + square - 2.0 * np.vdot(Z, Z).real > 0 and 1.0 - square > 0)
    identity = np.eye(Z.shape[0])
    return is_positive_definite(identity - Z @ Z.conj().T)


@dataclass(frozen=True)
class HuaBlock:
    """Hua構成の一つのブロック||W_j||^{2p_j} / N^{K_j}。

    Raises:
        InvalidSpecError: N < 1、p <= 0、K <= 0のいずれかの場合。
    """

    N: int
    p: float
    K: float

    def __post_init__(self) -> None:
        if self.N < 1:
            raise InvalidSpecError(f'ブロックの次元は1以上である必要があります。指定値: {self.N}')
        if not (self.p > 0 and math.isfinite(self.p)):
            raise InvalidSpecError(f'指数pは正である必要があります。指定値: {self.p}')
        if not (self.K > 0 and math.isfinite(self.K)):
            raise InvalidSpecError(f'指数Kは正である必要があります。指定値: {self.K}')


@dataclass(frozen=True)
class HuaConstructionSpec:
    """Cartan領域上のHua構成。

    {(W_1, ..., W_r, Z): Z ∈ D, Σ ||W_j||^{2p_j} / N_D(Z, Z̄)^{K_j} < 1}

    すべてのK_jが1の場合はHua領域です。

    Args:
        base (CartanDomainSpec): 底空間のCartan領域。
        blocks (tuple[HuaBlock, ...]): ファイバーのブロック。
    """

    base: CartanDomainSpec
    blocks: tuple[HuaBlock, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, 'blocks', tuple(self.blocks))
        if not self.blocks:
            raise InvalidSpecError('Hua構成には1つ以上のブロックが必要です。')

    @classmethod
    def egg(cls, n: int, K: float) -> HuaConstructionSpec:
        """卵形領域Y_I(1,1,n;K) = {|W|^{2K} + ||Z||^2 < 1}。"""
        return cls(CartanDomainSpec.type_I(1, n), (HuaBlock(1, K, 1.0),))

    @classmethod
    def cartan_hartogs(cls, base: CartanDomainSpec, N: int, K: float) -> HuaConstructionSpec:
        """Cartan-Hartogs領域{||W||^{2K} < N_D(Z, Z̄)}。"""
        return cls(base, (HuaBlock(N, K, 1.0),))

    @classmethod
    def cartan_egg(cls, base: CartanDomainSpec, N1: int, N2: int, K: float) -> HuaConstructionSpec:
        """Cartan-Egg領域{||W_1||^{2K} + ||W_2||^2 < N_D(Z, Z̄)}。"""
        return cls(base, (HuaBlock(N1, K, 1.0), HuaBlock(N2, 1.0, 1.0)))

    @classmethod
    def hua_domain(
        cls,
        base: CartanDomainSpec,
        dims: Sequence[int],
        ps: Sequence[float]
    ) -> HuaConstructionSpec:
        """Hua領域{Σ ||W_j||^{2p_j} < N_D(Z, Z̄)}。"""
        if len(dims) != len(ps):
            raise InvalidSpecError(
                'ブロックの次元と指数の数が一致しません。'
                f'次元: {len(dims)} 指数: {len(ps)}'
            )
        return cls(base, tuple(HuaBlock(N, p, 1.0) for N, p in zip(dims, ps)))

    def is_hua_domain(self) -> bool:
        return all(block.K == 1.0 for block in self.blocks)

    def elementary_cases(self) -> list[int]:
        """核が初等関数で表される場合のうち、該当するものの番号(1-4)を返します。

        1: r = 1。2: p_1 = ... = p_{r-1} = 1。3: すべての1/p_jが正整数。
        4: 1/p_1, ..., 1/p_{r-1}が正整数。いずれもHua領域に限ります。
        """
        if not self.is_hua_domain():
            return []

        def reciprocal_is_integer(p: float) -> bool:
            return math.isclose(1.0 / p, round(1.0 / p), rel_tol=1e-12)

        ps = [block.p for block in self.blocks]
        cases = []
        if len(ps) == 1:
            cases.append(1)
        if all(p == 1.0 for p in ps[:-1]):
            cases.append(2)
        if all(reciprocal_is_integer(p) for p in ps):
            cases.append(3)
        if all(reciprocal_is_integer(p) for p in ps[:-1]):
            cases.append(4)
        return cases


@dataclass(frozen=True)
class HuaMembership:
    """Hua構成の所属判定の結果。"""

    member: bool
    generic_norm: float
    lhs: float

    def to_dict(self) -> dict:
        return {
            'member': self.member,
            'generic_norm': self.generic_norm,
            'lhs': self.lhs if math.isfinite(self.lhs) else None,
        }


def hua_evaluate(
    spec: HuaConstructionSpec,
    W_blocks: Sequence[Sequence[complex]],
    Z: MatrixLike
) -> HuaMembership:
    """所属判定とともに一般ノルムと左辺Σ ||W_j||^{2p_j} / N^{K_j}を返します。

    一般ノルムが正でない場合、左辺はinfとします。

    Raises:
        ShapeMismatchError: ブロックの数または次元、Zの形が一致しない場合。
    """
    if len(W_blocks) != len(spec.blocks):
        raise ShapeMismatchError(
            'ブロックの数が一致しません。'
            f'必要な数: {len(spec.blocks)} 指定された数: {len(W_blocks)}'
        )
    norm = generic_norm(spec.base, Z)
    base_member = is_member(spec.base, Z)

    lhs = 0.0
    for block, W in zip(spec.blocks, W_blocks):
        W = np.atleast_1d(np.asarray(W, dtype=complex))
        if W.shape != (block.N,):
            raise ShapeMismatchError(
                'ブロックの次元が一致しません。'
                f'必要な次元: {block.N} 指定された次元: {W.size}'
            )
        if norm <= 0:
            lhs = math.inf
            continue
        lhs += float(np.vdot(W, W).real) ** block.p / norm ** block.K

    return HuaMembership(bool(base_member and lhs < 1.0), norm, lhs)


def hua_member(
    spec: HuaConstructionSpec,
    W_blocks: Sequence[Sequence[complex]],
    Z: MatrixLike
) -> bool:
    """点がHua構成に属するかを返します。

    Zが底空間に属し、かつΣ ||W_j||^{2p_j} / N_D(Z, Z̄)^{K_j} < 1であることが条件です。

    Examples:
        >>> spec = HuaConstructionSpec(
        ...     CartanDomainSpec.type_IV(2), (HuaBlock(1, 1.0, 1.0), HuaBlock(1, 2.0, 1.0))
        ... )
        >>> hua_member(spec, [[0.5], [0.7]], [0.5, 0])
        True
    """
    return hua_evaluate(spec, W_blocks, Z).member

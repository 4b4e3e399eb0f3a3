from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from .coefficients import EggDomainSpec
from .errors import CutoffTooSmallError, InvalidPointError
from .kernel import PointPair
from .monomial import MonomialIndex, monomial_indices

# 級数の評価に必要な境界までの距離。
MIN_DEFECT = 1e-6
MAX_TAIL_RATIO = 0.1


def _log_norm_sq(spec: EggDomainSpec, a: int, alpha_degree: int, log_alpha_factorial: float) -> float:
    c = (a + 1) / spec.K
    return (
        (spec.n + 1) * math.log(math.pi) + log_alpha_factorial + gammaln(c)
        - math.log(spec.K) - gammaln(c + alpha_degree + spec.n + 1)
    )


def monomial_norm_sq(spec: EggDomainSpec, idx: MonomialIndex) -> float:
    """単項式W^a Z^αのL^2ノルムの二乗を返します。

    ∫_D |W^a Z^α|^2 dV = π^{n+1} α! Γ((a+1)/K) / (K Γ((a+1)/K + |α| + n + 1))

    ガンマ関数は対数で差を取ってから指数をとります。

    Args:
        spec (EggDomainSpec): 領域のパラメータ。
        idx (MonomialIndex): 単項式の指数。

    Returns:
        float: ノルムの二乗。

    Raises:
        ValueError: 指数の次元が領域と一致しない場合。

    Examples:
        >>> round(monomial_norm_sq(EggDomainSpec(1, 1.0), MonomialIndex(0, (0,))), 10)
        4.9348022005
    """
    if len(idx.alpha) != spec.n:
        raise ValueError(
            '単項式の次元が領域と一致しません。'
            f'必要な次元: {spec.n} 指定された次元: {len(idx.alpha)}'
        )
    log_alpha_factorial = float(sum(gammaln(e + 1) for e in idx.alpha))
    return math.exp(_log_norm_sq(spec, idx.a, idx.alpha_degree, log_alpha_factorial))


@dataclass(frozen=True)
class SeriesEvaluation:
    """正規直交展開の部分和。

    Attributes:
        value (complex): 全次数cutoff以下の項の和。
        cutoff (int): 含めた最大の全次数。
        tail_estimate (float): 残りの項の和の大きさの見積もり。
    """

    value: complex
    cutoff: int
    tail_estimate: float


def _grouped_shell(spec: EggDomainSpec, s: complex, u: complex, degree: int) -> np.ndarray:
    # |α| = mの項はまとめるとu^m/m!になる
    a = np.arange(degree + 1)
    m = degree - a
    c = (a + 1) / spec.K
    log_coefficient = (
        math.log(spec.K) - (spec.n + 1) * math.log(math.pi)
        + gammaln(c + m + spec.n + 1) - gammaln(c) - gammaln(m + 1)
    )
    return np.exp(log_coefficient) * np.power(complex(s), a) * np.power(complex(u), m)


def _explicit_shell(spec: EggDomainSpec, pair: PointPair, degree: int) -> np.ndarray:
    p, q = pair.p, pair.q
    terms = [
        idx(p.W, p.Z) * np.conj(idx(q.W, q.Z)) / monomial_norm_sq(spec, idx)
        for idx in monomial_indices(spec.n, degree)
    ]
    return np.array(terms, dtype=complex)


def _tail(magnitudes: list[float]) -> float:
    """直近の殻の大きさの比から残りの和を外挿します。"""
    last = magnitudes[-1]
    if last == 0.0:
        return 0.0
    ratios = [
        later / earlier
        for earlier, later in zip(magnitudes[-3:-1], magnitudes[-2:])
        if earlier > 0.0
    ]
    if not ratios:
        return math.inf
    ratio = max(ratios)
    if ratio >= 1.0:
        return math.inf
    return last * ratio / (1.0 - ratio)


def kernel_series(
    spec: EggDomainSpec,
    pair: PointPair,
    cutoff: int,
    grouped: bool = True
) -> SeriesEvaluation:
    """単項式の正規直交展開でBergman核を求めます。

    全次数a + |α|がcutoff以下の項
    W^a Z^α conj(ζ^a ξ^α) / ||W^a Z^α||^2
    を全次数の殻ごとに足し合わせます。groupedがTrueの場合は同じ殻の中で
    |α|が等しい項を多項定理でまとめます。Falseの場合はすべての単項式を列挙します。

    Args:
        spec (EggDomainSpec): 領域のパラメータ。
        pair (PointPair): 評価点の組。
        cutoff (int): 含める最大の全次数。1以上。
        grouped (bool): |α|が等しい項をまとめて計算するか。

    Returns:
        SeriesEvaluation: 部分和と打ち切り誤差の見積もり。

    Raises:
        ValueError: cutoffが1未満の場合、または点の組が別の領域に属する場合。
        InvalidPointError: 点が境界に近すぎる場合。
        CutoffTooSmallError: 打ち切り誤差の見積もりが値の10%を超える場合。
    """
    if cutoff < 1:
        raise ValueError(f'打ち切り次数は1以上である必要があります。指定値: {cutoff}')
    if pair.spec != spec:
        raise ValueError(f'点の組の領域が一致しません。指定: {spec} 点: {pair.spec}')
    for point in (pair.p, pair.q):
        if point.defect <= MIN_DEFECT:
            raise InvalidPointError(
                '級数の評価には境界から離れた点が必要です。'
                f'境界までの距離: {point.defect:.3e} 点: ({point.W}, {point.Z})'
            )

    s = pair.p.W * np.conj(pair.q.W)
    u = complex(np.sum(np.array(pair.p.Z) * np.conj(np.array(pair.q.Z))))

    value = 0.0j
    magnitudes = []
    for degree in range(cutoff + 1):
        if grouped:
            shell = _grouped_shell(spec, s, u, degree)
        else:
            shell = _explicit_shell(spec, pair, degree)
        value += complex(np.sum(shell))
        magnitudes.append(float(np.sum(np.abs(shell))))

    tail_estimate = _tail(magnitudes)
    if tail_estimate > MAX_TAIL_RATIO * abs(value):
        raise CutoffTooSmallError(
            '打ち切り次数が小さすぎます。'
            f'打ち切り次数: {cutoff} 残りの見積もり: {tail_estimate:.3e} 値: {abs(value):.3e}'
        )
    return SeriesEvaluation(value, cutoff, tail_estimate)

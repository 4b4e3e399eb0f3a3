from __future__ import annotations

import json
import logging
import math
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Union

import numpy as np
from numpy.polynomial import Polynomial
from numpy.polynomial import polynomial as P

from .errors import InvalidSpecError

logger = logging.getLogger(__name__)

Number = Union[float, Fraction]

# 漸化式と閉じた式の食い違いがこれを超えた場合は厳密計算をやり直す。
CROSS_CHECK_RTOL = 1e-9
AGREEMENT_RTOL = 1e-12
# 係数列の最大絶対値に対するこの割合より小さい係数は絶対誤差で比べる。
ZERO_FLOOR_RATIO = 1e-3


@dataclass(frozen=True)
class EggDomainSpec:
    """卵形領域Y_I(1,1,n;K)を定める組(n, K)。

    Args:
        n (int): 底空間である単位球B_nの複素次元。
        K (float): ファイバーの指数。

    Raises:
        InvalidSpecError: nが1以上の整数でない場合、またはKが正の有限値でない場合。

    Examples:
        >>> EggDomainSpec(2, 0.5)
        EggDomainSpec(n=2, K=0.5)
        >>> EggDomainSpec(0, 1.0)
        Traceback (most recent call last):
        ...
        InvalidSpecError: nは1以上の整数である必要があります。指定値: 0
    """

    n: int
    K: float

    def __post_init__(self) -> None:
        if isinstance(self.n, bool) or not isinstance(self.n, (int, np.integer)) \
           or self.n < 1:
            raise InvalidSpecError(f'nは1以上の整数である必要があります。指定値: {self.n}')
        if isinstance(self.K, bool) or not isinstance(self.K, (int, float, np.floating)) \
           or not math.isfinite(self.K) or self.K <= 0:
            raise InvalidSpecError(f'Kは正の有限値である必要があります。指定値: {self.K}')
        object.__setattr__(self, 'n', int(self.n))
        object.__setattr__(self, 'K', float(self.K))

    @property
    def dimension(self) -> int:
        """領域の複素次元n+1。"""
        return self.n + 1

    def is_ball(self) -> bool:
        return self.K == 1.0


@dataclass(frozen=True)
class RealPolynomial:
    """実係数多項式。係数は次数の昇順に保持します。

    根が分かっている場合は、整数点での評価に積の形を用います。

    Attributes:
        coefficients (tuple[float, ...]): 昇順の係数。
        roots (Optional[tuple[float, ...]]): モニック多項式の根。分かっている場合のみ。
    """

    coefficients: tuple[float, ...]
    roots: Optional[tuple[float, ...]] = None

    def __post_init__(self) -> None:
        coefficients = [float(c) for c in self.coefficients]
        while len(coefficients) > 1 and coefficients[-1] == 0.0:
            coefficients.pop()
        if not coefficients:
            coefficients = [0.0]
        object.__setattr__(self, 'coefficients', tuple(coefficients))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def is_zero(self) -> bool:
        return self.degree == 0 and self.coefficients[0] == 0.0

    def __call__(self, x: complex) -> complex:
        if self.roots is not None:
            return math.prod(x - root for root in self.roots)
        return P.polyval(x, self.coefficients)

    def to_numpy(self) -> Polynomial:
        return Polynomial(self.coefficients)


@dataclass(frozen=True)
class KernelCoefficients:
    """Bergman核の係数b_0, ..., b_{n+1}。

    Attributes:
        b (tuple[float, ...]): 係数。長さはn+2。
        spec (EggDomainSpec): 領域のパラメータ。
        exact (bool): 有理数演算でやり直した結果であるか。
    """

    b: tuple[float, ...]
    spec: EggDomainSpec
    exact: bool = field(default=False, compare=False)

    def __post_init__(self) -> None:
        if len(self.b) != self.spec.n + 2:
            raise ValueError(
                '係数の数が不正です。'
                f'必要な数: {self.spec.n + 2} 指定された数: {len(self.b)}'
            )
        if self.b[0] != 0.0:
            raise ValueError(f'b_0は0である必要があります。指定値: {self.b[0]}')

    def __getitem__(self, i: int) -> float:
        return self.b[i]

    def __len__(self) -> int:
        return len(self.b)

    def to_dict(self) -> dict:
        return {'n': self.spec.n, 'K': self.spec.K, 'b': list(self.b)}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> KernelCoefficients:
        data = json.loads(text)
        return cls(tuple(float(b) for b in data['b']), EggDomainSpec(data['n'], data['K']))


def build_P(spec: EggDomainSpec) -> RealPolynomial:
    """多項式P(x) = (x+1)(x+1+K)(x+1+2K)...(x+1+nK)を返します。

    Args:
        spec (EggDomainSpec): 領域のパラメータ。

    Returns:
        RealPolynomial: 次数n+1のモニック多項式。

    Examples:
        >>> build_P(EggDomainSpec(1, 1.0)).coefficients
        (2.0, 3.0, 1.0)
    """
    roots = (-1.0,) + tuple(-1.0 - spec.K * j for j in range(1, spec.n + 1))
    return RealPolynomial(tuple(P.polyfromroots(roots)), roots)


def _evaluate_P(spec: EggDomainSpec, x: int, exact: bool) -> Number:
    K: Number = Fraction(spec.K) if exact else spec.K
    value: Number = x + 1
    for j in range(1, spec.n + 1):
        value *= x + 1 + K * j
    return value


def _sum(terms: list[Number], exact: bool) -> Number:
    if exact:
        return sum(terms, Fraction(0))
    return math.fsum(terms)


def _cancellation_is_severe(
    terms: list[float],
    value: float,
    n: int
) -> bool:
    """丸め誤差の見積もりが許容値を超えるかを返します。"""
    magnitude = math.fsum(abs(t) for t in terms)
    if magnitude == 0.0:
        return False
    if value == 0.0:
        return True
    error = (n + 4) * sys.float_info.epsilon * magnitude / abs(value)
    return error > AGREEMENT_RTOL / 10


def _recurrence(spec: EggDomainSpec, exact: bool) -> tuple[list[Number], bool]:
    b: list[Number] = [Fraction(0) if exact else 0.0]
    severe = False
    for i in range(1, spec.n + 2):
        terms = [_evaluate_P(spec, -i - 1, exact)]
        terms += [-b[k] * (-1) ** k * math.perm(i, k) for k in range(i)]
        numerator = _sum(terms, exact)
        denominator = (-1) ** i * math.factorial(i)
        b.append(numerator / denominator if not exact else Fraction(numerator, denominator))
        if not exact:
            severe = severe or _cancellation_is_severe(terms, numerator, spec.n)
    return b, severe


def _closed_form(spec: EggDomainSpec, exact: bool) -> tuple[list[Number], bool]:
    values = {j: _evaluate_P(spec, -j - 1, exact) for j in range(1, spec.n + 2)}
    b: list[Number] = [Fraction(0) if exact else 0.0]
    severe = False
    for i in range(1, spec.n + 2):
        if exact:
            terms: list[Number] = [
                (-1) ** j * Fraction(values[j], math.factorial(j) * math.factorial(i - j))
                for j in range(1, i + 1)
            ]
        else:
            terms = [
                (-1) ** j * values[j] / (math.factorial(j) * math.factorial(i - j))
                for j in range(1, i + 1)
            ]
        b.append(_sum(terms, exact))
        if not exact:
            severe = severe or _cancellation_is_severe(terms, b[-1], spec.n)
    return b, severe


def coefficients_by_recurrence(spec: EggDomainSpec) -> KernelCoefficients:
    """漸化式によって係数b_iを求めます。

    b_i = [P(-i-1) - Σ_{k<i} b_k (-1)^k i!/(i-k)!] / [(-1)^i i!]

    桁落ちが大きいと見積もられた場合は有理数演算でやり直します。

    Args:
        spec (EggDomainSpec): 領域のパラメータ。

    Returns:
        KernelCoefficients: 係数b_0, ..., b_{n+1}。

    Examples:
        >>> coefficients_by_recurrence(EggDomainSpec(1, 3.0)).b
        (0.0, 2.0, 1.0)
    """
    b, severe = _recurrence(spec, exact=False)
    if severe:
        logger.debug('漸化式の桁落ちが大きいため有理数演算で再計算します。%s', spec)
        b, _ = _recurrence(spec, exact=True)
        return KernelCoefficients(tuple(float(v) for v in b), spec, exact=True)
    return KernelCoefficients(tuple(float(v) for v in b), spec)


def coefficients_by_closed_form(spec: EggDomainSpec) -> KernelCoefficients:
    """閉じた式によって係数b_iを求めます。

    b_i = Σ_{j=1}^{i} (-1)^j P(-j-1) / [j! (i-j)!]

    Args:
        spec (EggDomainSpec): 領域のパラメータ。

    Returns:
        KernelCoefficients: 係数b_0, ..., b_{n+1}。
    """
    b, severe = _closed_form(spec, exact=False)
    if severe:
        logger.debug('閉じた式の桁落ちが大きいため有理数演算で再計算します。%s', spec)
        b, _ = _closed_form(spec, exact=True)
        return KernelCoefficients(tuple(float(v) for v in b), spec, exact=True)
    return KernelCoefficients(tuple(float(v) for v in b), spec)


def relative_disagreement(a: KernelCoefficients, b: KernelCoefficients) -> float:
    """二つの係数列の要素ごとの相対誤差の最大値を返します。

    相殺で0になるはずの係数は丸め誤差だけが残るため、
    ZERO_FLOOR_RATIO * max|b|を分母の下限とします。
    """
    floor = ZERO_FLOOR_RATIO * max(abs(x) for x in (*a.b, *b.b))
    worst = 0.0
    for x, y in zip(a.b, b.b):
        if x == y:
            continue
        worst = max(worst, abs(x - y) / max(abs(x), abs(y), floor))
    return worst


@lru_cache(maxsize=256)
def kernel_coefficients(spec: EggDomainSpec) -> KernelCoefficients:
    """二通りの方法で求めた係数を照合し、核の評価に用いる係数を返します。

    食い違いがCROSS_CHECK_RTOLを超えた場合は有理数演算の結果を返します。

    Args:
        spec (EggDomainSpec): 領域のパラメータ。

    Returns:
        KernelCoefficients: 照合済みの係数。
    """
    by_recurrence = coefficients_by_recurrence(spec)
    by_closed_form = coefficients_by_closed_form(spec)
    if (disagreement := relative_disagreement(by_recurrence, by_closed_form)) > CROSS_CHECK_RTOL:
        logger.warning(
            '漸化式と閉じた式の係数が一致しません。有理数演算で再計算します。'
            'spec: %s 相対誤差: %.3e', spec, disagreement
        )
        b, _ = _recurrence(spec, exact=True)
        return KernelCoefficients(tuple(float(v) for v in b), spec, exact=True)
    return by_recurrence


def coefficient_polynomials(n: int) -> list[Polynomial]:
    """各係数b_iをKの多項式として返します。

    Args:
        n (int): 底空間の次元。

    Returns:
        list[Polynomial]: b_0, ..., b_{n+1}をKの多項式としたもの。

    Examples:
        >>> [list(p.coef) for p in coefficient_polynomials(1)]
        [[0.0], [-1.0, 1.0], [1.0]]
    """
    EggDomainSpec(n, 1.0)

    def P_at(j: int) -> Polynomial:
        # P(-j-1) = (-j) Π_{l=1}^{n} (-j + lK)
        value = Polynomial([-j])
        for l in range(1, n + 1):
            value = value * Polynomial([-j, l])
        return value

    values = {j: P_at(j) for j in range(1, n + 2)}
    result = [Polynomial([0.0])]
    for i in range(1, n + 2):
        total = Polynomial([0.0])
        for j in range(1, i + 1):
            total = total + values[j] * ((-1) ** j / (math.factorial(j) * math.factorial(i - j)))
        result.append(total.trim())
    return result

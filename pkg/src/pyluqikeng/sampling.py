from __future__ import annotations

import logging
import math
from collections.abc import Callable
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .coefficients import EggDomainSpec, kernel_coefficients
from .errors import InsufficientSamplesError
from .kernel import DomainPoint, kernel_array, membership_defect
from .monomial import MonomialIndex

logger = logging.getLogger(__name__)

MIN_SAMPLES = 100_000
DEFAULT_SEED = 20070101
SHARD_SIZE = 250_000
# 標準誤差が|f(z)|のこの割合を超える推定は意味を持たない。
MAX_STANDARD_ERROR_RATIO = 0.5

Integrand = Callable[[np.ndarray, np.ndarray], np.ndarray]


def box_volume(spec: EggDomainSpec) -> float:
    """提案分布の台である単位円板と単位球B_nの積の体積π・π^n/n!を返します。"""
    return math.pi ** (spec.n + 1) / math.factorial(spec.n)


def sample_box(
    spec: EggDomainSpec,
    size: int,
    rng: np.random.Generator
) -> tuple[np.ndarray, np.ndarray]:
    """単位円板 × 単位球B_nから一様に点を生成します。

    Returns:
        tuple: 形が(size,)のWと(size, n)のZ。
    """
    radius = np.sqrt(rng.random(size))
    W = radius * np.exp(2j * math.pi * rng.random(size))

    direction = rng.standard_normal((size, 2 * spec.n))
    direction /= np.linalg.norm(direction, axis=1)[:, np.newaxis]
    direction *= (rng.random(size) ** (1.0 / (2 * spec.n)))[:, np.newaxis]
    Z = direction[:, :spec.n] + 1j * direction[:, spec.n:]
    return W, Z


def sample_domain(
    spec: EggDomainSpec,
    size: int,
    seed: int = DEFAULT_SEED
) -> tuple[np.ndarray, np.ndarray]:
    """棄却法で卵形領域から一様に点を生成します。

    Args:
        spec (EggDomainSpec): 領域のパラメータ。
        size (int): 提案する点の数。受理される点の数はこれより少なくなります。
        seed (int): 乱数のシード。

    Returns:
        tuple: 受理された点のWとZ。
    """
    W, Z = sample_box(spec, size, np.random.default_rng(seed))
    accepted = membership_defect(spec, W, Z) > 0
    return W[accepted], Z[accepted]


def random_points(
    spec: EggDomainSpec,
    count: int,
    seed: int = DEFAULT_SEED,
    scale: float = 1.0
) -> list[DomainPoint]:
    """単位円板 × 単位球B_nをscale倍した集合から領域に属する点を一様にcount個生成します。"""
    rng = np.random.default_rng(seed)
    points: list[DomainPoint] = []
    while len(points) < count:
        W, Z = sample_box(spec, count, rng)
        W, Z = scale * W, scale * Z
        accepted = membership_defect(spec, W, Z) > 0
        points += [
            DomainPoint(spec, w, tuple(z))
            for w, z in zip(W[accepted], Z[accepted])
        ]
    return points[:count]


@dataclass(frozen=True)
class MonteCarloEstimate:
    """モンテカルロ積分の結果。

    Attributes:
        value (complex): 積分の推定値。
        standard_error (float): 推定値の標準誤差。
        samples (int): 提案した点の数。
        accepted (int): 領域に属した点の数。
    """

    value: complex
    standard_error: float
    samples: int
    accepted: int

    def within(self, expected: complex, sigmas: float = 3.0) -> bool:
        return abs(self.value - expected) <= sigmas * self.standard_error


def _shard_sums(
    spec: EggDomainSpec,
    integrand: Integrand,
    size: int,
    seed: np.random.SeedSequence
) -> tuple[complex, float, int]:
    W, Z = sample_box(spec, size, np.random.default_rng(seed))
    accepted = membership_defect(spec, W, Z) > 0
    values = np.zeros(size, dtype=complex)
    values[accepted] = integrand(W[accepted], Z[accepted])
    return complex(np.sum(values)), float(np.sum(np.abs(values) ** 2)), int(np.sum(accepted))


def integrate(
    spec: EggDomainSpec,
    integrand: Integrand,
    samples: int,
    seed: int = DEFAULT_SEED,
    workers: Optional[int] = None
) -> MonteCarloEstimate:
    """卵形領域上の積分を棄却法のモンテカルロ積分で求めます。

    点を一定数ずつの組に分け、シードから派生させた独立な乱数列で生成します。
    組の分け方はworkersによらないため、結果はシードのみで決まります。

    Args:
        spec (EggDomainSpec): 領域のパラメータ。
        integrand (Integrand): 受理された点のW(形(m,))とZ(形(m, n))を受け取り値の配列を返す関数。
        samples (int): 提案する点の数。
        seed (int): 乱数のシード。
        workers (Optional[int]): 並列に計算するスレッド数。

    Returns:
        MonteCarloEstimate: 積分の推定値。

    Raises:
        ValueError: samplesが正でない場合。
    """
    if samples < 1:
        raise ValueError(f'点の数は正である必要があります。指定値: {samples}')

    sizes = [SHARD_SIZE] * (samples // SHARD_SIZE)
    if samples % SHARD_SIZE:
        sizes.append(samples % SHARD_SIZE)
    seeds = np.random.SeedSequence(seed).spawn(len(sizes))

    def run(args: tuple[int, np.random.SeedSequence]) -> tuple[complex, float, int]:
        return _shard_sums(spec, integrand, *args)

    if workers is not None and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            results = list(executor.map(run, zip(sizes, seeds)))
    else:
        results = [run(args) for args in zip(sizes, seeds)]
    logger.debug('%d組で%d点を評価しました。', len(sizes), samples)

    total = sum(r[0] for r in results)
    total_sq = sum(r[1] for r in results)
    accepted = sum(r[2] for r in results)
    mean = total / samples
    variance = max(total_sq / samples - abs(mean) ** 2, 0.0)
    volume = box_volume(spec)
    return MonteCarloEstimate(
        complex(volume * mean),
        volume * math.sqrt(variance / samples),
        samples,
        accepted
    )


def domain_volume_estimate(
    spec: EggDomainSpec,
    samples: int = MIN_SAMPLES,
    seed: int = DEFAULT_SEED
) -> MonteCarloEstimate:
    """領域の体積をモンテカルロ積分で求めます。"""
    return integrate(spec, lambda W, Z: np.ones(W.shape, dtype=complex), samples, seed)


def inner_product(
    spec: EggDomainSpec,
    first: MonomialIndex,
    second: MonomialIndex,
    samples: int = MIN_SAMPLES,
    seed: int = DEFAULT_SEED
) -> MonteCarloEstimate:
    """二つの単項式の内積∫ W^a Z^α conj(W^{a'} Z^{α'}) dVをモンテカルロ積分で求めます。"""
    return integrate(spec, lambda W, Z: first(W, Z) * np.conj(second(W, Z)), samples, seed)


@dataclass(frozen=True)
class ReproducingEstimate:
    """再生性∫ f(T) K(z, T̄) dV = f(z)の検証結果。

    Attributes:
        estimate (MonteCarloEstimate): 積分の推定値。
        expected (complex): f(z)。
        error (float): 相対誤差。f(z) = 0の場合は絶対誤差。
        standard_error (float): 誤差と同じ尺度での標準誤差。
    """

    estimate: MonteCarloEstimate
    expected: complex
    error: float
    standard_error: float

    def within(self, sigmas: float = 3.0) -> bool:
        return self.error <= sigmas * self.standard_error

    def to_dict(self) -> dict:
        return {
            'estimate': [self.estimate.value.real, self.estimate.value.imag],
            'expected': [self.expected.real, self.expected.imag],
            'error': self.error,
            'standard_error': self.standard_error,
            'samples': self.estimate.samples,
        }


def reproducing_check(
    spec: EggDomainSpec,
    f: MonomialIndex,
    z: DomainPoint,
    samples: int = MIN_SAMPLES,
    seed: int = DEFAULT_SEED,
    workers: Optional[int] = None
) -> ReproducingEstimate:
    """単項式fについて核の再生性をモンテカルロ積分で検証します。

    Args:
        spec (EggDomainSpec): 領域のパラメータ。
        f (MonomialIndex): 検証に用いる単項式。
        z (DomainPoint): 評価点。
        samples (int): 提案する点の数。MIN_SAMPLES以上。
        seed (int): 乱数のシード。
        workers (Optional[int]): 並列に計算するスレッド数。

    Returns:
        ReproducingEstimate: 検証結果。

    Raises:
        InsufficientSamplesError: samplesがMIN_SAMPLES未満の場合、
            または標準誤差が|f(z)|の50%を超える場合。
    """
    if samples < MIN_SAMPLES:
        raise InsufficientSamplesError(
            '点の数が不足しています。'
            f'必要な数: {MIN_SAMPLES} 指定された数: {samples}'
        )
    if len(f.alpha) != spec.n:
        raise ValueError(
            '単項式の次元が領域と一致しません。'
            f'必要な次元: {spec.n} 指定された次元: {len(f.alpha)}'
        )

    coeffs = kernel_coefficients(spec)
    base_Z = np.array(z.Z)

    def integrand(W: np.ndarray, Z: np.ndarray) -> np.ndarray:
        value, _, _ = kernel_array(coeffs, z.W, base_Z, W, Z)
        return f(W, Z) * value

    estimate = integrate(spec, integrand, samples, seed, workers)
    expected = complex(f(z.W, base_Z))
    scale = abs(expected) if expected != 0 else 1.0
    if estimate.standard_error > MAX_STANDARD_ERROR_RATIO * scale:
        raise InsufficientSamplesError(
            '標準誤差が大きすぎます。点の数を増やしてください。'
            f'標準誤差: {estimate.standard_error:.3e} |f(z)|: {abs(expected):.3e}'
        )
    return ReproducingEstimate(
        estimate,
        expected,
        abs(estimate.value - expected) / scale,
        estimate.standard_error / scale
    )

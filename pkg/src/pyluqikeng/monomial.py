from __future__ import annotations

import math
from collections.abc import Iterator
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class MonomialIndex:
    """単項式W^a Z^αの指数。

    Args:
        a (int): Wの次数。
        alpha (tuple[int, ...]): Zの各成分の次数。

    Raises:
        ValueError: 負の指数が含まれる場合。
    """

    a: int
    alpha: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, 'alpha', tuple(int(e) for e in self.alpha))
        if self.a < 0 or any(e < 0 for e in self.alpha):
            raise ValueError(
                '単項式の指数は0以上である必要があります。'
                f'a: {self.a} alpha: {self.alpha}'
            )

    @property
    def total_degree(self) -> int:
        return self.a + sum(self.alpha)

    @property
    def alpha_degree(self) -> int:
        return sum(self.alpha)

    def alpha_factorial(self) -> int:
        return math.prod(math.factorial(e) for e in self.alpha)

    def __call__(self, W: complex, Z) -> complex:
        """点(W, Z)での値を返します。配列を渡した場合は最後の軸をZの成分とみなします。"""
        Z = np.asarray(Z)
        value = np.asarray(W) ** self.a
        for j, e in enumerate(self.alpha):
            if e:
                value = value * Z[..., j] ** e
        return value

    def __str__(self) -> str:
        factors = []
        if self.a:
            factors.append(f'w^{self.a}')
        factors += [f'z_{j + 1}^{e}' for j, e in enumerate(self.alpha) if e]
        return '*'.join(factors) or '1'

    @classmethod
    def parse(cls, text: str, n: int) -> MonomialIndex:
        """'w^1*z_2^3'のような文字列から単項式を作ります。'1'は定数です。

        Examples:
            >>> MonomialIndex.parse('w*z_1^2', 2)
            MonomialIndex(a=1, alpha=(2, 0))
        """
        a = 0
        alpha = [0] * n
        for factor in text.replace(' ', '').split('*'):
            if factor in ('', '1'):
                continue
            name, _, power = factor.partition('^')
            exponent = int(power) if power else 1
            if name == 'w':
                a += exponent
            elif name.startswith('z_') and 1 <= int(name[2:]) <= n:
                alpha[int(name[2:]) - 1] += exponent
            else:
                raise ValueError(f'単項式を解釈できません。値: {text}')
        return cls(a, tuple(alpha))


def compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """和がtotalとなる長さpartsの非負整数列を辞書式順に返します。"""
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def monomial_indices(n: int, degree: int) -> Iterator[MonomialIndex]:
    """全次数がdegreeである単項式を辞書式順に返します。"""
    for exponents in compositions(degree, n + 1):
        yield MonomialIndex(exponents[0], exponents[1:])

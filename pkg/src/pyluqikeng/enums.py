from enum import Enum


class LuQiKengStatus(Enum):
    """Lu Qi-Keng判定の結果"""

    LU_QI_KENG = 1
    NOT_LU_QI_KENG = 2
    BORDERLINE = 3

    def describe(self) -> str:
        return LUQIKENGSTATUS_STR[self.name]

    def exit_code(self) -> int:
        return self.value - 1

    @classmethod
    def from_describe(cls, text: str) -> 'LuQiKengStatus':
        for name, value in LUQIKENGSTATUS_STR.items():
            if value == text:
                return cls[name]
        raise ValueError(f'不明な判定結果です。値: {text}')


LUQIKENGSTATUS_STR: dict[str, str] = {
    'LU_QI_KENG': 'LuQiKeng',
    'NOT_LU_QI_KENG': 'NotLuQiKeng',
    'BORDERLINE': 'Borderline'
}


class CartanKind(Enum):
    """Cartan領域の種類"""

    I = 1
    II = 2
    III = 3
    IV = 4
    V = 5
    VI = 6

    def describe(self) -> str:
        return CARTANKIND_STR[self.name]

    def is_exceptional(self) -> bool:
        return self in [CartanKind.V, CartanKind.VI]


CARTANKIND_STR = {
    'I': 'R_I(m, n)',
    'II': 'R_II(p)',
    'III': 'R_III(q)',
    'IV': 'R_IV(n)',
    'V': 'R_V(16)',
    'VI': 'R_VI(27)'
}

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from importlib import metadata
from typing import Any, Optional

HEADER_PREFIX = '# '


def library_version() -> str:
    try:
        return metadata.version('pyluqikeng')
    except metadata.PackageNotFoundError:
        return 'unknown'


@dataclass(frozen=True)
class RunRecord:
    """コマンドの実行記録。

    出力の先頭にJSONのコメント行として書き出します。実行時刻以外は設定とシードのみで決まります。
    実行時刻をNoneにすると、同じ設定とシードに対して同じ行になります。

    Attributes:
        subcommand (str): サブコマンド名。
        config (dict[str, Any]): 解析済みの引数。
        seed (Optional[int]): 乱数のシード。乱数を使わない場合はNone。
        version (str): ライブラリのバージョン。
        timestamp (Optional[str]): 実行時刻(UTC、ISO 8601)。記録しない場合はNone。
    """

    subcommand: str
    config: dict[str, Any]
    seed: Optional[int] = None
    version: str = field(default_factory=library_version)
    timestamp: Optional[str] = field(
        default_factory=lambda: datetime.now(timezone.utc).isoformat(timespec='seconds')
    )

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)

    def header_line(self) -> str:
        return HEADER_PREFIX + json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_header_line(cls, line: str) -> RunRecord:
        if not line.startswith(HEADER_PREFIX):
            raise ValueError(f'実行記録の行ではありません。値: {line}')
        return cls(**json.loads(line[len(HEADER_PREFIX):]))

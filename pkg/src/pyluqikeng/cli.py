"""pyluqikengのコマンドラインインターフェース。

各サブコマンドは先頭に実行記録(RunRecord)をJSONのコメント行として出力し、
続けて結果をJSONまたはCSVで出力します。
"""
from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import json
import logging
import os
import sys
from collections.abc import Sequence
from typing import Any, Optional

import numpy as np

from .acceptance import run_acceptance
from .cartan_hua import CartanDomainSpec, HuaBlock, HuaConstructionSpec, hua_evaluate
from .classifier import DEFAULT_PRECISION, DEFAULT_TOL, SWEEP_GRID_POINTS, classify, threshold_sweep, zero_locus
from .coefficients import EggDomainSpec, kernel_coefficients
from .enums import CartanKind
from .errors import (
    CutoffTooSmallError,
    InsufficientSamplesError,
    KernelZeroOnPathError,
    NumericalOverflowError,
    PyLuQiKengError,
    RootFindingError,
    SingularMetricError,
)
from .kernel import DomainPoint, PointPair, eval_kernel, normalized_kernel
from .records import RunRecord
from .repcoords import representative_coordinates
from .sampling import DEFAULT_SEED
from .series_oracle import kernel_series

logger = logging.getLogger(__name__)

EX_OK = 0
EX_FAILED = 1
EX_USAGE = 64
EX_DATAERR = 65
EX_SOFTWARE = 70
OUTPUT_DIR_ENV = 'PYLUQIKENG_OUTPUT_DIR'
DEFAULT_CUTOFFS = (10, 20, 40, 60, 80, 100)

NUMERIC_ERRORS = (
    NumericalOverflowError,
    RootFindingError,
    SingularMetricError,
    CutoffTooSmallError,
    InsufficientSamplesError,
)


class UsageError(Exception):
    """引数の解析に失敗した場合のエラー"""


class ArgumentParser(argparse.ArgumentParser):
    def error(self, message: str) -> None:
        raise UsageError(f'{self.prog}: error: {message}')


def format_float(value: float) -> str:
    return f'{value:.17g}'


def complex_pairs(values: Sequence[complex]) -> list[list[float]]:
    return [[complex(v).real, complex(v).imag] for v in values]


def parse_complex_array(data: Any) -> np.ndarray:
    """[re, im]の組を末尾の軸に持つ入れ子の配列を複素配列に直します。"""
    array = np.asarray(data, dtype=float)
    if array.ndim == 0 or array.shape[-1] != 2:
        raise ValueError(f'複素数は[re, im]の組で指定する必要があります。値: {data}')
    return array[..., 0] + 1j * array[..., 1]


def load_json_argument(text: str) -> Any:
    """JSON文字列、または@で始まるファイルのパスを読み込みます。'-'は標準入力です。"""
    if text == '-':
        return json.load(sys.stdin)
    if text.startswith('@'):
        with open(text[1:], encoding='utf-8') as f:
            return json.load(f)
    return json.loads(text)


def parse_point(spec: EggDomainSpec, text: str) -> DomainPoint:
    return DomainPoint.from_pairs(spec, load_json_argument(text))


def positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f'1以上の整数である必要があります。指定値: {text}')
    return value


def positive_float(text: str) -> float:
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError(f'正の値である必要があります。指定値: {text}')
    return value


def add_spec_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--n', type=positive_int, required=True, help='底空間の次元')
    parser.add_argument('--K', type=positive_float, required=True, help='ファイバーの指数')


def run_coeffs(args: argparse.Namespace) -> tuple[str, int]:
    coeffs = kernel_coefficients(EggDomainSpec(args.n, args.K))
    if args.format == 'csv':
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator='\n')
        writer.writerow(['i', 'b'])
        writer.writerows([i, format_float(b)] for i, b in enumerate(coeffs.b))
        return buffer.getvalue(), EX_OK
    return coeffs.to_json() + '\n', EX_OK


def run_kernel_eval(args: argparse.Namespace) -> tuple[str, int]:
    spec = EggDomainSpec(args.n, args.K)
    pair = PointPair(parse_point(spec, args.p), parse_point(spec, args.q))
    return json.dumps(eval_kernel(spec, pair).to_dict()) + '\n', EX_OK


def run_oracle_diff(args: argparse.Namespace) -> tuple[str, int]:
    spec = EggDomainSpec(args.n, args.K)
    pair = PointPair(parse_point(spec, args.p), parse_point(spec, args.q))
    closed = eval_kernel(spec, pair).value

    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow([
        'cutoff', 'series_re', 'series_im', 'closed_re', 'closed_im', 'relative_difference'
    ])
    for cutoff in args.cutoffs:
        series = kernel_series(spec, pair, cutoff).value
        writer.writerow([
            cutoff,
            format_float(series.real),
            format_float(series.imag),
            format_float(closed.real),
            format_float(closed.imag),
            format_float(abs(series - closed) / abs(closed)),
        ])
    return buffer.getvalue(), EX_OK


def run_classify(args: argparse.Namespace) -> tuple[str, int]:
    result = classify(EggDomainSpec(args.n, args.K), args.tol)
    return json.dumps(result.to_dict()) + '\n', result.status.exit_code()


def run_sweep(args: argparse.Namespace) -> tuple[str, int]:
    report = threshold_sweep(
        args.n, (args.k_lo, args.k_hi), args.precision, args.grid_points, args.threads
    )
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(['K', 'margin'])
    writer.writerows([format_float(K), format_float(m)] for K, m in report.samples)
    buffer.write(json.dumps(report.to_dict()) + '\n')
    return buffer.getvalue(), EX_OK


def run_zero_locus(args: argparse.Namespace) -> tuple[str, int]:
    spec = EggDomainSpec(args.n, args.K)
    result = classify(spec, args.tol)
    witnesses = []
    for s in result.witness_roots:
        pair = zero_locus(spec, s).fiber_pair()
        witnesses.append({
            's': [s.real, s.imag],
            'p': pair.p.to_pairs(),
            'q': pair.q.to_pairs(),
            'normalized_kernel': normalized_kernel(spec, pair),
        })
    payload = {'status': result.status.describe(), 'witnesses': witnesses}
    return json.dumps(payload) + '\n', EX_OK


def run_rep_coords(args: argparse.Namespace) -> tuple[str, int]:
    spec = EggDomainSpec(args.n, args.K)
    base = parse_point(spec, args.base)
    point = parse_point(spec, args.point)
    try:
        coordinates = representative_coordinates(spec, base, point)
    except KernelZeroOnPathError as e:
        payload = {'error': 'KernelZeroOnPath', 'message': str(e)}
        return json.dumps(payload, ensure_ascii=False) + '\n', EX_DATAERR
    return json.dumps({'coordinates': complex_pairs(coordinates)}) + '\n', EX_OK


def parse_hua_description(data: dict) -> tuple[HuaConstructionSpec, list[np.ndarray], np.ndarray]:
    """hua-checkの入力を解釈します。

    {"base": {"kind": "IV", "shape": [2]},
     "blocks": [{"N": 1, "p": 1.0, "K": 1.0}, ...],
     "W": [[[re, im], ...], ...], "Z": [[re, im], ...]}
    """
    try:
        base = CartanDomainSpec(CartanKind[data['base']['kind']], tuple(data['base']['shape']))
        blocks = tuple(
            HuaBlock(int(b['N']), float(b['p']), float(b.get('K', 1.0))) for b in data['blocks']
        )
        W_blocks = [parse_complex_array(W) for W in data['W']]
        Z = parse_complex_array(data['Z'])
    except (KeyError, TypeError) as e:
        raise ValueError(f'hua-checkの入力が不正です。{e.__class__.__name__}: {e}') from e
    return HuaConstructionSpec(base, blocks), W_blocks, Z


def run_hua_check(args: argparse.Namespace) -> tuple[str, int]:
    spec, W_blocks, Z = parse_hua_description(load_json_argument(args.input))
    return json.dumps(hua_evaluate(spec, W_blocks, Z).to_dict()) + '\n', EX_OK


def run_verify(args: argparse.Namespace) -> tuple[str, int]:
    results = run_acceptance(args.seed)
    buffer = io.StringIO()
    width = max(len(r.name) for r in results)
    for r in results:
        buffer.write(f'{r.name:<{width}}  {"PASS" if r.passed else "FAIL"}  {r.detail}\n')
    return buffer.getvalue(), EX_OK if all(r.passed for r in results) else EX_FAILED


def create_parser() -> ArgumentParser:
    parser = ArgumentParser(prog='pyluqikeng', description='卵形領域のBergman核とLu Qi-Keng判定')
    parser.add_argument('--output', help='出力先のパス。相対パスはPYLUQIKENG_OUTPUT_DIRからの相対')
    parser.add_argument('--verbose', action='store_true', help='詳細なログを出力する')
    parser.add_argument('--no-timestamp', action='store_true', help='実行記録に実行時刻を含めない')
    subparsers = parser.add_subparsers(dest='subcommand', required=True, parser_class=ArgumentParser)

    coeffs = subparsers.add_parser('coeffs', help='核の係数b_iを出力する')
    add_spec_arguments(coeffs)
    coeffs.add_argument('--format', choices=['json', 'csv'], default='json')
    coeffs.set_defaults(handler=run_coeffs)

    kernel_eval = subparsers.add_parser('kernel-eval', help='閉じた式で核を評価する')
    add_spec_arguments(kernel_eval)
    kernel_eval.add_argument('--p', required=True, help='点pの座標 [[re, im], ...]')
    kernel_eval.add_argument('--q', required=True, help='点qの座標 [[re, im], ...]')
    kernel_eval.set_defaults(handler=run_kernel_eval)

    oracle_diff = subparsers.add_parser('oracle-diff', help='閉じた式と級数を比べる')
    add_spec_arguments(oracle_diff)
    oracle_diff.add_argument('--p', required=True)
    oracle_diff.add_argument('--q', required=True)
    oracle_diff.add_argument('--cutoffs', type=positive_int, nargs='+', default=list(DEFAULT_CUTOFFS))
    oracle_diff.set_defaults(handler=run_oracle_diff)

    classify_ = subparsers.add_parser('classify', help='Lu Qi-Keng領域であるかを判定する')
    add_spec_arguments(classify_)
    classify_.add_argument('--tol', type=positive_float, default=DEFAULT_TOL)
    classify_.set_defaults(handler=run_classify)

    sweep = subparsers.add_parser('sweep', help='零点の有無が切り替わるKを求める')
    sweep.add_argument('--n', type=positive_int, required=True)
    sweep.add_argument('--k-lo', type=positive_float, required=True)
    sweep.add_argument('--k-hi', type=positive_float, required=True)
    sweep.add_argument('--precision', type=positive_float, default=DEFAULT_PRECISION)
    sweep.add_argument('--grid-points', type=positive_int, default=SWEEP_GRID_POINTS)
    sweep.add_argument('--threads', type=positive_int, default=None)
    sweep.set_defaults(handler=run_sweep)

    locus = subparsers.add_parser('zero-locus', help='核の零点を与える点の組を出力する')
    add_spec_arguments(locus)
    locus.add_argument('--tol', type=positive_float, default=DEFAULT_TOL)
    locus.set_defaults(handler=run_zero_locus)

    rep = subparsers.add_parser('rep-coords', help='代表座標を求める')
    add_spec_arguments(rep)
    rep.add_argument('--base', required=True)
    rep.add_argument('--point', required=True)
    rep.set_defaults(handler=run_rep_coords)

    hua = subparsers.add_parser('hua-check', help='Hua構成に属するかを判定する')
    hua.add_argument('--input', required=True, help='JSON文字列、@パス、または-(標準入力)')
    hua.set_defaults(handler=run_hua_check)

    verify = subparsers.add_parser('verify', help='受け入れ検査を実行する')
    verify.add_argument('--seed', type=int, default=DEFAULT_SEED)
    verify.set_defaults(handler=run_verify)

    return parser


def resolve_output_path(path: str) -> str:
    if os.path.isabs(path) or not (directory := os.environ.get(OUTPUT_DIR_ENV)):
        return path
    return os.path.join(directory, path)


def record_config(args: argparse.Namespace) -> dict[str, Any]:
    return {
        key: value for key, value in sorted(vars(args).items())
        if key not in ('handler', 'verbose', 'output', 'no_timestamp')
    }


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = create_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        print(e, file=sys.stderr)
        return EX_USAGE

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format='%(levelname)s %(name)s: %(message)s',
        stream=sys.stderr
    )

    try:
        body, code = args.handler(args)
    except NUMERIC_ERRORS as e:
        logger.error('%s: %s', e.__class__.__name__, e)
        return EX_SOFTWARE
    except (PyLuQiKengError, ValueError, OSError) as e:
        logger.error('%s: %s', e.__class__.__name__, e)
        return EX_DATAERR

    record = RunRecord(args.subcommand, record_config(args), getattr(args, 'seed', None))
    if args.no_timestamp:
        record = dataclasses.replace(record, timestamp=None)
    text = record.header_line() + '\n' + body
    if args.output:
        with open(resolve_output_path(args.output), 'w', encoding='utf-8') as f:
            f.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == '__main__':
    sys.exit(main())

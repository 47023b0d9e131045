"""``fslz`` command line: compress, decompress, analyze, quantize, sweep, gen.

Exit codes: 0 success, 1 usage error, 2 data or corruption error.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from ..bounds import build_report
from ..codecs import CODECS, decode, encode
from ..core import Algorithm, read_container, write_container
from ..dictionary import LruParams, RecencyMode
from ..exceptions import FSLZError
from ..lossy import QuantizerConfig, fsdl_decode, fsdl_encode_with_parse, greedy_quantize
from .io import read_symbols, symbols_to_bytes
from .sources import generate, parse_source
from .sweep import SWEEP_CODECS, SweepSpec, run_sweep

EXIT_USAGE = 1
EXIT_DATA = 2
ALGOS = sorted(CODECS) + ["fsdl"]
RECENCY = {"touch": RecencyMode.TOUCH_ON_MATCH, "insert": RecencyMode.INSERT_ONLY}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _int_list(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma separated integers, got {text!r}")


def _lmax(text: str):
    if text == "square":
        return "square"
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError("lmax must be 'square' or an integer")


def _add_input_format(p):
    g = p.add_mutually_exclusive_group()
    g.add_argument("--bits", action="store_true",
                   help="treat the file as a bit string (binary alphabet, MSB first)")
    g.add_argument("--alphabet-size", type=int, default=None, metavar="A",
                   help="one symbol per byte, values < A (default: A=256)")


def _add_codec_args(p, default_algo="lz78lru"):
    p.add_argument("--algo", choices=ALGOS, default=default_algo)
    p.add_argument("-D", type=int, default=256, help="dictionary capacity")
    p.add_argument("--lmax", type=int, default=None,
                   help="max stored phrase length (default (ceil log2 D)^2)")
    p.add_argument("--recency", choices=sorted(RECENCY), default="touch")
    p.add_argument("-L", type=int, default=2, help="FSDL block length")
    p.add_argument("--dmax", default="0", help="FSDL per-symbol distortion, e.g. 1/4")
    p.add_argument("--mode", choices=["observed", "exhaustive"], default="observed")
    p.add_argument("--measure", default="hamming")
    p.add_argument("--window", type=int, default=None,
                   help="FSDL quantizer window N in symbols (default: whole input)")
    _add_input_format(p)


def _quantizer_config(args) -> QuantizerConfig:
    return QuantizerConfig(args.L, args.dmax, args.mode, args.measure, args.window)


def _encode(args, seq):
    if args.algo == "fsdl":
        p = None if args.D is None else LruParams(args.D, args.lmax, RECENCY[args.recency])
        container, parse, _ = fsdl_encode_with_parse(seq, _quantizer_config(args), p)
        return container, parse
    params = {}
    if args.algo not in ("lz78", "lzw"):
        params = {"D": args.D, "L_max": args.lmax, "recency": RECENCY[args.recency]}
    return encode(seq, args.algo, **params)


def cmd_compress(args):
    seq = read_symbols(args.input, args.bits, args.alphabet_size)
    container, _ = _encode(args, seq)
    args.output.write_bytes(write_container(container))


def cmd_decompress(args):
    container = read_container(args.input.read_bytes())
    if container.algorithm is Algorithm.FSDL:
        seq = fsdl_decode(container)
    else:
        seq = decode(container)
    args.output.write_bytes(symbols_to_bytes(seq, args.bits))


def cmd_analyze(args):
    seq = read_symbols(args.input, args.bits, args.alphabet_size)
    container, parse = _encode(args, seq)
    report = build_report(parse, container, args.s)
    print(json.dumps(report.to_dict(), indent=1))


def cmd_quantize(args):
    seq = read_symbols(args.input, args.bits, args.alphabet_size)
    cut = len(seq) - len(seq) % args.L
    if cut != len(seq):
        print(f"note: dropping {len(seq) - cut} trailing symbols (not a full block)",
              file=sys.stderr)
    book, quantized = greedy_quantize(seq.data[:cut], _quantizer_config(args),
                                      seq.alphabet)
    if args.codebook:
        args.codebook.write_text(book.to_json() + "\n")
    if args.out:
        args.out.write_bytes(symbols_to_bytes(quantized, args.bits))
    print(json.dumps({"blocks": len(book.assignments), "centers": len(book.centers),
                      "coverage_counts": book.coverage_counts}))


def cmd_sweep(args):
    if (args.source is None) == (args.input is None):
        raise UsageError("give exactly one of --source or --input")
    src = parse_source(args.source) if args.source else args.input
    spec = SweepSpec(src, args.algo, tuple(args.D), args.lmax, tuple(args.s),
                     RECENCY[args.recency], args.bits, args.alphabet_size, args.out,
                     args.jobs)
    rows = run_sweep(spec)
    if args.out is None:
        print(json.dumps(rows, indent=1))


def cmd_gen(args):
    seq = generate(parse_source(args.source))
    args.out.write_bytes(symbols_to_bytes(seq, args.bits))


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fslz", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("compress", help="compress a file into an FSLZ container")
    _add_codec_args(p)
    p.add_argument("input", type=Path)
    p.add_argument("output", type=Path)
    p.set_defaults(func=cmd_compress)

    p = sub.add_parser("decompress", help="decompress an FSLZ container")
    p.add_argument("--bits", action="store_true", help="pack binary output into bytes")
    p.add_argument("input", type=Path)
    p.add_argument("output", type=Path)
    p.set_defaults(func=cmd_decompress)

    p = sub.add_parser("analyze", help="print a compression report as JSON")
    _add_codec_args(p)
    p.add_argument("--s", type=_int_list, default=[1], help="state counts, e.g. 1,2,4")
    p.add_argument("input", type=Path)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("quantize", help="run the greedy block quantizer")
    p.add_argument("-L", type=int, default=2)
    p.add_argument("--dmax", default="0")
    p.add_argument("--mode", choices=["observed", "exhaustive"], default="observed")
    p.add_argument("--measure", default="hamming")
    p.add_argument("--window", type=int, default=None)
    p.add_argument("--codebook", type=Path, default=None, help="write codebook JSON here")
    p.add_argument("--out", type=Path, default=None, help="write quantized symbols here")
    _add_input_format(p)
    p.add_argument("input", type=Path)
    p.set_defaults(func=cmd_quantize)

    p = sub.add_parser("sweep", help="sweep dictionary sizes, emit CSV or JSON")
    p.add_argument("--algo", choices=SWEEP_CODECS, default="lz78lru")
    p.add_argument("--D", type=_int_list, required=True, help="e.g. 16,64,256")
    p.add_argument("--lmax", type=_lmax, default="square")
    p.add_argument("--recency", choices=sorted(RECENCY), default="touch")
    p.add_argument("--s", type=_int_list, default=[1])
    p.add_argument("--source", default=None, help="e.g. bernoulli:0.5:1000000:seed42")
    p.add_argument("--input", type=Path, default=None)
    p.add_argument("--out", type=Path, default=None, help=".csv or .json")
    p.add_argument("--jobs", type=int, default=1)
    _add_input_format(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("gen", help="write a synthetic source, one byte per symbol")
    p.add_argument("--source", required=True)
    p.add_argument("--out", type=Path, required=True)
    p.add_argument("--bits", action="store_true", help="pack binary symbols 8 per byte")
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except UsageError as exc:
        print(f"fslz: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (FSLZError, ValueError, OSError) as exc:
        print(f"fslz: {exc}", file=sys.stderr)
        return EXIT_DATA
    return 0


if __name__ == "__main__":
    sys.exit(main())

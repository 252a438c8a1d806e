"""Command-line front end.

Exit codes: 0 cut found / file valid, 1 no cut / file invalid,
2 input or usage error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import bench
from .errors import ModelError
from .model import filter_computation
from .traceio import GenParams, generate, parse, serialize, validate

EXIT_FOUND = 0
EXIT_NOCUT = 1
EXIT_ERROR = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_ERROR)


def _read(path: str, check: bool = True):
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise ModelError(f"cannot read {path}: {exc.strerror}") from None
    return parse(data, check=check)


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def _add_gen_flags(p: argparse.ArgumentParser, required: bool) -> None:
    p.add_argument("--processes", type=int, required=required)
    p.add_argument("--states", type=int, required=required)
    p.add_argument("--send-prob", type=float, default=0.3)
    p.add_argument("--recv-prob", type=float, default=0.5)
    p.add_argument("--pred-density", type=float, default=1.0)
    p.add_argument("--seed", type=int, default=0)


def _gen_params(args, seed: int | None = None) -> GenParams:
    return GenParams(
        n=args.processes, m=args.states, send_prob=args.send_prob,
        recv_prob=args.recv_prob, pred_density=args.pred_density,
        seed=args.seed if seed is None else seed,
    )


def cmd_detect(args) -> int:
    comp = _read(args.input)
    fc = filter_computation(comp)
    result = bench.detect(fc, args.algo, args.threads)
    if result.cut is None:
        print("no-cut")
    else:
        print(f"cut {result.cut}")
        for i, j in enumerate(result.cut.indices, start=1):
            s = fc.state(i, j)
            print(f"state {i} {s.index} " + " ".join(str(v) for v in s.clock))
    if args.metrics:
        for key, value in result.metrics.as_dict().items():
            print(f"{key} {value}", file=sys.stderr)
    return EXIT_FOUND if result.found else EXIT_NOCUT


def cmd_generate(args) -> int:
    data = serialize(generate(_gen_params(args)))
    if args.output in (None, "-"):
        sys.stdout.buffer.write(data)
    else:
        Path(args.output).write_bytes(data)
    return 0


def cmd_validate(args) -> int:
    comp = _read(args.input, check=False)
    problems = validate(comp)
    for v in problems:
        print(v, file=sys.stderr)
    return 0 if not problems else 1


def cmd_bench(args) -> int:
    algos = [a.strip() for a in args.algo.split(",") if a.strip()]
    for a in algos:
        if a not in bench.DETECTORS:
            raise ModelError(f"unknown algo {a!r}")
    if args.gen:
        if args.processes is None or args.states is None:
            raise ModelError("--gen needs --processes and --states")
        comps = [generate(_gen_params(args, args.seed + k)) for k in range(args.count)]
    elif args.input:
        comps = [_read(path) for path in args.input]
    else:
        raise ModelError("give --input FILE... or --gen")
    inputs = (filter_computation(c) for c in comps)
    records = bench.run_bench(inputs, algos, args.repeat, args.threads)
    bench.write_csv(records, sys.stdout)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="wcpdetect", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("detect", help="find the minimum satisfying consistent cut")
    p.add_argument("--input", required=True)
    p.add_argument("--algo", choices=sorted(bench.DETECTORS), default="opt")
    p.add_argument("--threads", type=_positive, default=1)
    p.add_argument("--metrics", action="store_true", help="print run counters to stderr")
    p.set_defaults(func=cmd_detect)

    p = sub.add_parser("generate", help="write a seeded random trace")
    _add_gen_flags(p, required=True)
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("validate", help="check trace invariants")
    p.add_argument("--input", required=True)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("bench", help="emit CSV run records")
    p.add_argument("--input", nargs="+")
    p.add_argument("--gen", action="store_true", help="generate inputs instead of reading")
    _add_gen_flags(p, required=False)
    p.add_argument("--count", type=_positive, default=1, help="generated traces (seeds seed..)")
    p.add_argument("--algo", default="opt,jls")
    p.add_argument("--repeat", type=_positive, default=1)
    p.add_argument("--threads", type=_positive, default=1)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ModelError as exc:
        print(f"wcpdetect {args.command}: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    raise SystemExit(main())

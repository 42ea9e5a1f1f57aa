"""Command-line front end: construct, encode, stats, verify, bench."""

from __future__ import annotations

import argparse
import json
import sys
from collections import Counter

from . import construction
from .core import BitBuffer, CodeConfig, PairCase, classify_pair
from .fileio import (BIT_FORMATS, FormatError, read_bits, read_frozen_set, write_bits,
                     write_frozen_set)
from .inplace import encode_nspc, encode_spc
from .instrumentation import BENCH_MODES, OpLedger, assert_complexity, benchmark
from .oracle import MAX_ORACLE_N, encode_nonsystematic_oracle, encode_systematic_oracle
from .parallel import CaseDViolation, case_d_pairs, encode_spc_parallel2, propagation_stats
from .verify import EXHAUSTIVE_MAX_N, exhaustive_cases, random_cases, run_cases


class CliError(Exception):
    """Reported as a single ``error:`` line; exit status 1."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        sys.stderr.write(f"error: {message}\n")
        sys.exit(2)


def _emit(fmt: str, data: dict) -> None:
    if fmt == "structured":
        print(json.dumps(data, sort_keys=True))
    else:
        for k, v in data.items():
            print(f"{k}={v}")


def pair_counts(config: CodeConfig) -> dict[str, int]:
    counts = Counter(classify_pair(config, psi) for psi in range(config.N // 2))
    return {f"count_{case.value}": counts[case] for case in PairCase}


# -- construct ---------------------------------------------------------------

def cmd_construct(args) -> int:
    param = args.param
    if param is None:
        param = 0.5 if args.method == "bec" else 2.0
    if not 0 <= args.k <= (1 << args.n):
        raise CliError(f"--k must be in [0, {1 << args.n}], got {args.k}")
    config = construction.construct(args.n, args.k, args.method, param, args.snr_type, args.order)
    bad = case_d_pairs(config)
    comments = [f"method={args.method} param={param} snr_type={args.snr_type} order={args.order}"]
    if bad:
        comments.append("warning: case-d pairs at psi=" + ",".join(map(str, bad)))
    write_frozen_set(args.out, config, comments)
    report = {"N": config.N, "K": config.K, **pair_counts(config),
              "no_case_d": "pass" if not bad else "fail"}
    _emit(args.format, report)
    if bad:
        raise CliError(f"constructed set has {len(bad)} case-d pair(s); file written with warning")
    return 0


# -- encode ------------------------------------------------------------------

def _load_config(args) -> CodeConfig:
    if args.frozen_set:
        config = read_frozen_set(args.frozen_set)
    elif args.mode == "nspc" and args.n:
        config = CodeConfig(args.n, ())
    else:
        raise CliError("--frozen-set is required (nspc also accepts --n)")
    if args.frozen_values:
        values = read_bits(args.frozen_values, args.bit_format, config.N - config.K)
        if len(values) != config.N - config.K:
            raise CliError(f"--frozen-values has {len(values)} bits, expected {config.N - config.K}")
        config = config.with_frozen_values(values.to_list())
    return config


def cmd_encode(args) -> int:
    config = _load_config(args)
    N, K = config.N, config.K
    ledger = OpLedger()
    checked = True if args.check else None
    notes = {}
    u = None

    if args.mode == "nspc":
        u_in = read_bits(args.input, args.bit_format, N)
        x = encode_nspc(config.n, u_in, ledger=ledger, checked=checked)
    else:
        if args.full_x:
            x_full = read_bits(args.input, args.bit_format, N)
            x_info = x_full.take(config.info_set)
        else:
            x_info = read_bits(args.input, args.bit_format, K)
        encoder = encode_spc
        if args.mode == "spc-par2":
            bad = case_d_pairs(config)
            if bad and not args.force_serial:
                raise CaseDViolation(bad)
            if bad:
                notes["routed"] = "spc (forced serial: case-d pairs present)"
            else:
                encoder = encode_spc_parallel2
        x, u = encoder(config, x_info, None, emit_u=bool(args.emit_u), ledger=ledger,
                       checked=checked)

    if args.check:
        if config.n <= MAX_ORACLE_N:
            if args.mode == "nspc":
                ok = x == encode_nonsystematic_oracle(config.n, u_in)
            else:
                u_ref, x_ref = encode_systematic_oracle(config, x_info)
                ok = x == x_ref and (u is None or u == u_ref)
            if not ok:
                raise CliError("oracle mismatch: fast encoder disagrees with x = uG")
            notes["check.oracle"] = "pass"
        else:
            notes["check.oracle"] = f"skipped (n > {MAX_ORACLE_N})"
        cx = assert_complexity(config, ledger)
        if not cx.passed:
            raise CliError("complexity check failed: " + " ".join(cx.lines()))
        notes["check.complexity"] = "pass"

    write_bits(args.out, x, args.bit_format)
    if args.emit_u and u is not None:
        write_bits(args.emit_u, u, args.bit_format)
    if args.report or args.check:
        _emit(args.format, {"mode": args.mode, "N": N, "K": K, **ledger.as_dict(), **notes})
    return 0


# -- stats -------------------------------------------------------------------

def cmd_stats(args) -> int:
    config = read_frozen_set(args.frozen_set)
    stats = propagation_stats(config)
    _emit(args.format, {
        "N": stats.N,
        "K": config.K,
        "count_a": stats.count_a,
        "count_b": stats.count_b,
        "count_c": stats.count_c,
        "total_propagations": stats.total_propagations,
        "speedup_percent": f"{stats.speedup_percent:.1f}",
    })
    return 0


# -- verify ------------------------------------------------------------------

def _parse_case(n: int, spec: str):
    try:
        info_text, bits_text = spec.split(":")
        info = tuple(int(i) for i in info_text.split(",") if i.strip())
        bits = BitBuffer.from_str(bits_text.strip())
    except ValueError as exc:
        raise CliError(f"bad --case {spec!r}: expected 'i,j,...:bits'") from exc
    config = CodeConfig(n, info)
    if len(bits) != config.N:
        raise CliError(f"--case input has {len(bits)} bits, expected {config.N}")
    return [(config, [bits])]


def cmd_verify(args) -> int:
    if not 1 <= args.n <= MAX_ORACLE_N:
        raise CliError(f"--n must be in [1, {MAX_ORACLE_N}] (oracle bound)")
    if args.case:
        cases = _parse_case(args.n, args.case)
    elif args.exhaustive:
        if args.n > EXHAUSTIVE_MAX_N:
            raise CliError(f"--exhaustive supports n <= {EXHAUSTIVE_MAX_N}")
        cases = exhaustive_cases(args.n)
    else:
        cases = random_cases(args.n, args.trials, args.seed, args.inputs_per_config)
    report = run_cases(cases, mutate_xor=args.inject_mutation)
    for line in report.lines():
        print(line)
    if not report.passed:
        print(f"replay: polarcode verify {report.failure.replay()}")
        raise CliError(str(report.failure))
    return 0


# -- bench -------------------------------------------------------------------

def cmd_bench(args) -> int:
    if args.frozen_set:
        config = read_frozen_set(args.frozen_set)
    elif args.n is not None and args.k is not None:
        config = construction.construct(args.n, args.k, args.method,
                                        0.5 if args.method == "bec" else 2.0)
    else:
        raise CliError("give --frozen-set or both --n and --k")
    result = benchmark(config, args.mode, args.trials, encodes_per_trial=args.encodes,
                       seed=args.seed)
    _emit(args.format, result.as_dict())
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="polarcode", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def fmt(p):
        p.add_argument("--format", choices=("text", "structured"), default="text",
                       help="report as key=value lines or one JSON object")

    p = sub.add_parser("construct", help="build a frozen-set file")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--method", choices=("bec", "ga"), default="ga")
    p.add_argument("--param", type=float, help="erasure probability (bec) or design SNR in dB (ga)")
    p.add_argument("--snr-type", choices=("ebno", "esno"), default="ebno")
    p.add_argument("--order", choices=construction.ORDERS, default="natural",
                   help="bit-reversed reproduces sets published for B_N F^n indexing")
    p.add_argument("--out", required=True)
    fmt(p)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("encode", help="encode one block")
    p.add_argument("--frozen-set")
    p.add_argument("--n", type=int, help="block exponent for nspc without a frozen-set file")
    p.add_argument("--mode", choices=("spc", "spc-par2", "nspc"), default="spc")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--bit-format", choices=BIT_FORMATS, default="ascii")
    p.add_argument("--frozen-values", help="bit file with the N-K frozen bits (default zeros)")
    p.add_argument("--full-x", action="store_true",
                   help="input holds a full N-bit x; only its info-set bits are used")
    p.add_argument("--emit-u", metavar="PATH", help="also write the recovered source word")
    p.add_argument("--check", action="store_true", help="compare with the matrix oracle and "
                   "check XOR/memory counts")
    p.add_argument("--force-serial", action="store_true",
                   help="spc-par2: fall back to serial encoding on case-d sets")
    p.add_argument("--report", action="store_true", help="print operation counts")
    fmt(p)
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("stats", help="pair-case counts and 2-bit parallel speedup")
    p.add_argument("--frozen-set", required=True)
    fmt(p)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("verify", help="check encoders against the matrix oracle")
    p.add_argument("--n", type=int, required=True)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--exhaustive", action="store_true")
    g.add_argument("--trials", type=int, default=1000)
    g.add_argument("--case", help="replay one case, 'info,indices:inputbits'")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--inputs-per-config", type=int, default=1)
    p.add_argument("--inject-mutation", type=int, nargs="?", const=0, default=None,
                   help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="wall-clock throughput and propagation counts")
    p.add_argument("--frozen-set")
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--method", choices=("bec", "ga"), default="ga")
    p.add_argument("--mode", choices=BENCH_MODES, default="serial")
    p.add_argument("--trials", type=int, default=5)
    p.add_argument("--encodes", type=int, default=20, help="encodes per trial")
    p.add_argument("--seed", type=int, default=0)
    fmt(p)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (CliError, CaseDViolation, FormatError, ValueError, OSError) as exc:
        msg = " ".join(str(exc).split())
        sys.stderr.write(f"error: {msg}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())

"""Equivalence sweeps of the fast encoders against the matrix oracle."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .core import BitBuffer, CodeConfig
from .inplace import encode_nspc, encode_spc
from .instrumentation import OpLedger, assert_complexity
from .oracle import MAX_ORACLE_N, encode_nonsystematic_oracle, encode_systematic_oracle
from .parallel import CaseDViolation, case_d_pairs, encode_spc_parallel2

EXHAUSTIVE_MAX_N = 3


@dataclass
class Mismatch:
    check: str
    config: CodeConfig
    inputs: BitBuffer
    detail: str

    def replay(self) -> str:
        info = ",".join(str(i) for i in self.config.info_set)
        return f"--n {self.config.n} --case '{info}:{self.inputs.to_str()}'"

    def __str__(self) -> str:
        info = ",".join(str(i) for i in self.config.info_set)
        return (f"mismatch check={self.check} n={self.config.n} info={info} "
                f"input={self.inputs.to_str()} {self.detail}")


@dataclass
class VerifyReport:
    configs: int = 0
    cases: int = 0
    case_d_configs: int = 0
    checks: dict[str, int] = field(default_factory=dict)
    failure: Mismatch | None = None

    @property
    def passed(self) -> bool:
        return self.failure is None

    def bump(self, name: str) -> None:
        self.checks[name] = self.checks.get(name, 0) + 1

    def lines(self) -> list[str]:
        out = [f"configs={self.configs}", f"cases={self.cases}",
               f"case_d_configs={self.case_d_configs}"]
        out += [f"checks.{k}={v}" for k, v in sorted(self.checks.items())]
        out.append(f"verify.pass={'yes' if self.passed else 'no'}")
        return out


def split_input(config: CodeConfig, bits: BitBuffer) -> tuple[BitBuffer, BitBuffer]:
    """First ``K`` bits are the user payload, the remaining ``N - K`` the frozen values."""
    K, N = config.K, config.N
    return bits.take(range(K)), bits.take(range(K, N))


def check_case(config: CodeConfig, bits: BitBuffer, report: VerifyReport,
               mutate_xor: int | None = None) -> Mismatch | None:
    """Run every encoder on one (info set, N input bits) case."""
    x_info, u_frozen = split_input(config, bits)
    report.cases += 1

    u_ref, x_ref = encode_systematic_oracle(config, x_info, u_frozen)
    ledger = OpLedger()
    x, u = encode_spc(config, x_info, u_frozen, emit_u=True, ledger=ledger,
                      checked=True, _mutate_xor=mutate_xor)
    if x != x_ref or u != u_ref:
        return Mismatch("spc-vs-oracle", config, bits,
                        f"expected x={x_ref.to_str()} got x={x.to_str()}")
    report.bump("spc-vs-oracle")
    if x.take(config.info_set) != x_info:
        return Mismatch("systematic", config, bits, "x on info set differs from input")
    cx = assert_complexity(config, ledger)
    if not cx.passed:
        return Mismatch("spc-complexity", config, bits, " ".join(cx.lines()))
    report.bump("spc-complexity")

    if case_d_pairs(config):
        try:
            encode_spc_parallel2(config, x_info, u_frozen, checked=True)
        except CaseDViolation:
            report.bump("par2-rejects-case-d")
        else:
            return Mismatch("par2-case-d", config, bits, "case-d config was not rejected")
    else:
        pledger = OpLedger()
        xp, up = encode_spc_parallel2(config, x_info, u_frozen, emit_u=True,
                                      ledger=pledger, checked=True)
        if xp != x or up != u:
            return Mismatch("par2-vs-spc", config, bits,
                            f"expected x={x.to_str()} got x={xp.to_str()}")
        report.bump("par2-vs-spc")
        if pledger.xor_count != ledger.xor_count or not assert_complexity(config, pledger).passed:
            return Mismatch("par2-complexity", config, bits, str(pledger))
        report.bump("par2-complexity")

    nledger = OpLedger()
    xn = encode_nspc(config.n, bits, ledger=nledger, checked=True)
    xn_ref = encode_nonsystematic_oracle(config.n, bits)
    if xn != xn_ref:
        return Mismatch("nspc-vs-oracle", config, bits,
                        f"expected x={xn_ref.to_str()} got x={xn.to_str()}")
    report.bump("nspc-vs-oracle")
    if not assert_complexity(config, nledger).passed:
        return Mismatch("nspc-complexity", config, bits, str(nledger))
    report.bump("nspc-complexity")
    return None


def run_cases(cases: Iterable[tuple[CodeConfig, Iterable[BitBuffer]]],
              mutate_xor: int | None = None) -> VerifyReport:
    """Stops at the first mismatch, which is kept in ``report.failure``."""
    report = VerifyReport()
    for config, inputs in cases:
        report.configs += 1
        if case_d_pairs(config):
            report.case_d_configs += 1
        for bits in inputs:
            failure = check_case(config, bits, report, mutate_xor)
            if failure is not None:
                report.failure = failure
                return report
    return report


def _check_n(n: int, limit: int) -> None:
    if not 1 <= n <= limit:
        raise ValueError(f"n must be in [1, {limit}], got {n}")


def exhaustive_cases(n: int) -> Iterator[tuple[CodeConfig, Iterator[BitBuffer]]]:
    """Every info set with every assignment of the N input bits."""
    _check_n(n, EXHAUSTIVE_MAX_N)
    N = 1 << n
    for mask in range(1 << N):
        yield CodeConfig.from_mask(n, mask), (BitBuffer.from_int(v, N) for v in range(1 << N))


def random_info_set(rng: random.Random, n: int, valid: bool = False) -> CodeConfig:
    """Uniform info set, or (``valid``) one with no case-d pair."""
    N = 1 << n
    if not valid:
        return CodeConfig.from_mask(n, rng.getrandbits(N))
    info = []
    for psi in range(N // 2):
        case = rng.randrange(3)  # a, b, c
        if case == 0:
            info += [2 * psi, 2 * psi + 1]
        elif case == 2:
            info.append(2 * psi + 1)
    return CodeConfig(n, tuple(info))


def random_cases(n: int, trials: int, seed: int, inputs_per_config: int = 1
                 ) -> Iterator[tuple[CodeConfig, list[BitBuffer]]]:
    """``trials`` (info set, input) samples; info sets alternate uniform / case-d-free."""
    _check_n(n, MAX_ORACLE_N)
    rng = random.Random(seed)
    N = 1 << n
    done = 0
    k = 0
    while done < trials:
        config = random_info_set(rng, n, valid=bool(k & 1))
        count = min(inputs_per_config, trials - done)
        yield config, [BitBuffer.from_int(rng.getrandbits(N), N) for _ in range(count)]
        done += count
        k += 1

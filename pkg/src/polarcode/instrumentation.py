"""Operation/memory accounting and wall-clock benchmarking for the encoders."""

from __future__ import annotations

import os
import random
import statistics
import time
from dataclasses import asdict, dataclass, field

from .core import CodeConfig

PROFILE_ENV = "POLARCODE_PROFILE"
PROFILES = ("checked", "release")


def active_profile() -> str:
    """Instrumentation profile from ``POLARCODE_PROFILE``; ``checked`` unless set."""
    value = os.environ.get(PROFILE_ENV, "checked").strip().lower() or "checked"
    if value not in PROFILES:
        raise ValueError(f"{PROFILE_ENV} must be one of {PROFILES}, got {value!r}")
    return value


def resolve_checked(checked: bool | None) -> bool:
    return active_profile() == "checked" if checked is None else checked


@dataclass
class OpLedger:
    """Counters for one encode call.

    ``xor_count``/``copy_count`` classify each layer step of the butterfly
    network; loading a known bit into the working store and writing results
    to the I/O buffers are not layer steps and are not counted.
    ``peak_aux_model_bits`` counts logical bits of working memory, I/O
    buffers excluded.
    """

    xor_count: int = 0
    copy_count: int = 0
    peak_aux_model_bits: int = 0
    propagations: int = 0

    def reset(self) -> None:
        self.xor_count = self.copy_count = 0
        self.peak_aux_model_bits = self.propagations = 0

    def allocate(self, model_bits: int) -> None:
        self.peak_aux_model_bits = max(self.peak_aux_model_bits, model_bits)

    def as_dict(self) -> dict:
        return asdict(self)


@dataclass
class CheckResult:
    name: str
    expected: int
    observed: int

    @property
    def passed(self) -> bool:
        return self.expected == self.observed


@dataclass
class ComplexityReport:
    N: int
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def as_dict(self) -> dict:
        return {
            "N": self.N,
            "passed": self.passed,
            "checks": [
                {"name": c.name, "expected": c.expected, "observed": c.observed, "passed": c.passed}
                for c in self.checks
            ],
        }

    def lines(self) -> list[str]:
        out = [f"N={self.N}"]
        for c in self.checks:
            out.append(f"{c.name}.expected={c.expected}")
            out.append(f"{c.name}.observed={c.observed}")
            out.append(f"{c.name}.pass={'yes' if c.passed else 'no'}")
        out.append(f"complexity.pass={'yes' if self.passed else 'no'}")
        return out


def expected_xor_count(N: int) -> int:
    """``(N/2) * log2(N)``."""
    return (N // 2) * (N.bit_length() - 1)


def assert_complexity(config: CodeConfig | int, ledger: OpLedger) -> ComplexityReport:
    """Compare a finished encode's ledger with the N-bit / (N/2)log2N bounds.

    Failures are reported, not raised.
    """
    N = config if isinstance(config, int) else config.N
    report = ComplexityReport(N)
    report.checks.append(CheckResult("xor_count", expected_xor_count(N), ledger.xor_count))
    report.checks.append(CheckResult("peak_aux_model_bits", N, ledger.peak_aux_model_bits))
    return report


@dataclass
class BenchmarkReport:
    mode: str
    N: int
    K: int
    trials: int
    propagations: int
    model_speedup: float
    encodes_per_sec_mean: float
    encodes_per_sec_stdev: float
    encodes_per_sec_min: float
    encodes_per_sec_max: float

    def as_dict(self) -> dict:
        return asdict(self)


BENCH_MODES = ("serial", "parallel2", "nspc")


def benchmark(config: CodeConfig, mode: str = "serial", trials: int = 5, *,
              encodes_per_trial: int = 20, seed: int = 0) -> BenchmarkReport:
    """Time ``encodes_per_trial`` encodes per trial on seeded random inputs.

    Encodes run with the release profile (no memory tracking). The
    propagation count comes from a separate instrumented encode.
    """
    from .inplace import encode_nspc, encode_spc
    from .parallel import encode_spc_parallel2

    if mode not in BENCH_MODES:
        raise ValueError(f"mode must be one of {BENCH_MODES}, got {mode!r}")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = random.Random(seed)
    N, K = config.N, config.K

    def make_input():
        if mode == "nspc":
            return ([rng.getrandbits(1) for _ in range(N)],)
        return ([rng.getrandbits(1) for _ in range(K)], config.frozen_values)

    def run(args, ledger=None, checked=False):
        if mode == "nspc":
            return encode_nspc(config.n, *args, ledger=ledger, checked=checked)
        if mode == "serial":
            return encode_spc(config, *args, emit_u=False, ledger=ledger, checked=checked)
        return encode_spc_parallel2(config, *args, emit_u=False, ledger=ledger, checked=checked)

    ledger = OpLedger()
    run(make_input(), ledger, checked=True)

    rates = []
    for _ in range(trials):
        inputs = [make_input() for _ in range(encodes_per_trial)]
        start = time.perf_counter()
        for args in inputs:
            run(args)
        elapsed = time.perf_counter() - start
        rates.append(encodes_per_trial / elapsed if elapsed > 0 else float("inf"))

    return BenchmarkReport(
        mode=mode,
        N=N,
        K=K,
        trials=trials,
        propagations=ledger.propagations,
        model_speedup=N / ledger.propagations,
        encodes_per_sec_mean=statistics.fmean(rates),
        encodes_per_sec_stdev=statistics.stdev(rates) if len(rates) > 1 else 0.0,
        encodes_per_sec_min=min(rates),
        encodes_per_sec_max=max(rates),
    )

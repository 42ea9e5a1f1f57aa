"""Two-rows-at-a-time variant of the in-place systematic encoder.

Rows ``2*psi`` and ``2*psi + 1`` share every selector bit above layer 0 and
sit at adjacent working addresses, so when both are user rows (case a) or
both frozen rows (case b) they can travel through the network as one pair.
A frozen row above a user row (case c) still runs as two serial passes. A
user row above a frozen row (case d) is rejected: reliability-ordered
constructions on symmetric channels never produce it.

Layer 0 gets a second working cell ``D[1,0]``; the temporary bit of the
serial encoder is dropped, so working memory stays at ``N`` bits.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import BitBuffer, CodeConfig, PairCase, classify_pair
from .inplace import LayerMemory
from .instrumentation import OpLedger, resolve_checked


class CaseDViolation(ValueError):
    """Info set has a user bit directly above a frozen bit in some pair."""

    def __init__(self, psis):
        self.psis = tuple(psis)
        shown = ", ".join(str(p) for p in self.psis[:16])
        more = "" if len(self.psis) <= 16 else f", ... ({len(self.psis)} total)"
        super().__init__(f"case-d pair(s) at psi={shown}{more}: user bit 2*psi with frozen bit 2*psi+1")


def case_d_pairs(config: CodeConfig) -> list[int]:
    mask = config.info_mask
    return [psi for psi in range(config.N // 2) if mask[2 * psi] and not mask[2 * psi + 1]]


def check_no_case_d(config: CodeConfig) -> None:
    bad = case_d_pairs(config)
    if bad:
        raise CaseDViolation(bad)


def encode_spc_parallel2(config: CodeConfig, x_info, u_frozen=None, emit_u: bool = True, *,
                         ledger: OpLedger | None = None,
                         checked: bool | None = None) -> tuple[BitBuffer, BitBuffer | None]:
    """Systematic encode processing two rows per propagation where possible.

    Same arguments and results as :func:`polarcode.inplace.encode_spc`.
    Raises :class:`CaseDViolation` before touching any data if the info set
    contains a case-d pair.
    """
    check_no_case_d(config)
    if u_frozen is None:
        u_frozen = config.frozen_values
    x, u = config.scatter(x_info, u_frozen)
    n, N = config.n, config.N
    mask = config.info_mask
    mem = LayerMemory(n, pair_layout=True, checked=resolve_checked(checked))
    get, put = mem.bits.get, mem.bits.put
    xget, xput = x.get, x.put
    xors = copies = propagations = 0

    for psi in range(N // 2 - 1, -1, -1):
        phi = 2 * psi
        top, bottom = mask[phi], mask[phi + 1]
        if top and bottom:
            # (a) both user: pair moves right to left.
            x1 = xget(phi + 1)
            put(0, xget(phi) ^ x1)
            put(1, x1)
            xors += 1
            copies += 1
            prev = 0
            for lam in range(1, n):
                base = (1 << lam) + (phi & ((1 << lam) - 1))
                if (phi >> lam) & 1:
                    put(base, get(prev))
                    put(base + 1, get(prev + 1))
                    copies += 2
                else:
                    put(base, get(base) ^ get(prev))
                    put(base + 1, get(base + 1) ^ get(prev + 1))
                    xors += 2
                prev = base
            if emit_u:
                u.put(phi, get(prev))
                u.put(phi + 1, get(prev + 1))
            propagations += 1
        elif not top and not bottom:
            # (b) both frozen: D[0,0], D[1,0] act as the pair's temporaries.
            put(0, u.get(phi))
            put(1, u.get(phi + 1))
            for lam in range(n - 1, 0, -1):
                base = (1 << lam) + (phi & ((1 << lam) - 1))
                if (phi >> lam) & 1:
                    put(base, get(0))
                    put(base + 1, get(1))
                    copies += 2
                else:
                    put(0, get(0) ^ get(base))
                    put(1, get(1) ^ get(base + 1))
                    xors += 2
            xput(phi, get(0) ^ get(1))
            xput(phi + 1, get(1))
            xors += 1
            copies += 1
            propagations += 1
        elif bottom:
            # (c) user row phi+1 first (D[1,0] stands in for D[0,0]), then
            # frozen row phi (D[0,0] stands in for the temporary).
            put(1, xget(phi + 1))
            copies += 1
            prev = 1
            for lam in range(1, n):
                cell = (1 << lam) + ((phi + 1) & ((1 << lam) - 1))
                if (phi >> lam) & 1:
                    put(cell, get(prev))
                    copies += 1
                else:
                    put(cell, get(cell) ^ get(prev))
                    xors += 1
                prev = cell
            if emit_u:
                u.put(phi + 1, get(prev))

            put(0, u.get(phi))
            for lam in range(n - 1, 0, -1):
                cell = (1 << lam) + (phi & ((1 << lam) - 1))
                if (phi >> lam) & 1:
                    put(cell, get(0))
                    copies += 1
                else:
                    put(0, get(0) ^ get(cell))
                    xors += 1
            xput(phi, get(0) ^ get(1))
            xors += 1
            propagations += 2
        else:  # pragma: no cover - rejected by check_no_case_d
            raise CaseDViolation([psi])

    if ledger is not None:
        ledger.reset()
        ledger.allocate(mem.model_bits)
        ledger.xor_count, ledger.copy_count = xors, copies
        ledger.propagations = propagations
    return x, (u if emit_u else None)


@dataclass(frozen=True)
class PropagationStats:
    N: int
    count_a: int
    count_b: int
    count_c: int

    @property
    def total_propagations(self) -> int:
        return self.count_a + self.count_b + 2 * self.count_c

    @property
    def speedup_ratio(self) -> float:
        return self.N / self.total_propagations

    @property
    def speedup_percent(self) -> float:
        return (self.speedup_ratio - 1.0) * 100.0

    def as_tuple(self) -> tuple[int, int, int, int, float]:
        return (self.count_a, self.count_b, self.count_c, self.total_propagations, self.speedup_ratio)

    def as_dict(self) -> dict:
        return {
            "N": self.N,
            "count_a": self.count_a,
            "count_b": self.count_b,
            "count_c": self.count_c,
            "total_propagations": self.total_propagations,
            "speedup_ratio": self.speedup_ratio,
            "speedup_percent": self.speedup_percent,
        }


def propagation_stats(config: CodeConfig) -> PropagationStats:
    """Count pair cases; cases a and b cost one propagation, case c two."""
    counts = {case: 0 for case in PairCase}
    for psi in range(config.N // 2):
        counts[classify_pair(config, psi)] += 1
    check_no_case_d(config)
    return PropagationStats(
        config.N,
        counts[PairCase.A_BOTH_USER],
        counts[PairCase.B_BOTH_FROZEN],
        counts[PairCase.C_FROZEN_TOP_USER_BOTTOM],
    )

"""Serial in-place encoder for systematic and nonsystematic polar codes.

Rows ("horizontal connections") of the butterfly network are processed from
``phi = N-1`` down to 0. Layer ``lam`` keeps ``2**lam`` working bits that are
recycled from block to block, and one temporary bit carries a frozen row's
value from left to right, so the whole working store is exactly ``N`` bits.
At layer ``lam`` the row bit ``b_lam = (phi >> lam) & 1`` selects a copy
(1) or an XOR (0), and the working cell is ``a_lam = phi mod 2**lam``.
"""

from __future__ import annotations

from .core import BitBuffer, CodeConfig, _as_buffer
from .instrumentation import OpLedger, resolve_checked


class ScheduleError(RuntimeError):
    """A working-memory cell was read before the schedule wrote it."""


class _TrackedBits:
    """Bit store that rejects reads of never-written cells.

    One byte per cell: 0 or 1 once written, 2 before the first write.
    """

    __slots__ = ("_cells",)

    def __init__(self, length: int):
        self._cells = bytearray(b"\x02" * length)

    def __len__(self) -> int:
        return len(self._cells)

    def get(self, i: int) -> int:
        v = self._cells[i]
        if v > 1:
            raise ScheduleError(f"working cell {i} read before first write")
        return v

    def put(self, i: int, bit: int) -> None:
        self._cells[i] = bit


class LayerMemory:
    """Working store ``D[a, lam]`` for all layers, laid out in one buffer.

    Serial layout: layer ``lam`` at offset ``2**lam - 1`` (``N - 1`` cells)
    followed by the temporary bit. Pair layout (2-bit parallel encoder):
    layer 0 has two cells at offset 0, layer ``lam >= 1`` sits at offset
    ``2**lam``, and there is no temporary. Both total ``N`` model bits.
    """

    def __init__(self, n: int, *, pair_layout: bool = False, checked: bool = False):
        self.n = n
        self.N = 1 << n
        self.pair_layout = pair_layout
        self.temp_bits = 0 if pair_layout else 1
        self.model_bits = sum(self.size(lam) for lam in range(n)) + self.temp_bits
        if self.model_bits != self.N:
            raise AssertionError(f"working store is {self.model_bits} bits, expected {self.N}")
        self.bits = _TrackedBits(self.N) if checked else BitBuffer(self.N)

    def size(self, lam: int) -> int:
        if self.pair_layout and lam == 0:
            return 2
        return 1 << lam

    def offset(self, lam: int) -> int:
        if self.pair_layout:
            return 0 if lam == 0 else 1 << lam
        return (1 << lam) - 1

    @property
    def temp(self) -> int:
        if self.pair_layout:
            raise AttributeError("pair layout has no temporary bit")
        return self.N - 1

    def cell(self, lam: int, addr: int) -> int:
        if not 0 <= lam < self.n:
            raise IndexError(f"layer {lam} out of range [0, {self.n})")
        if not 0 <= addr < self.size(lam):
            raise IndexError(f"address {addr} out of range for layer {lam}")
        return self.offset(lam) + addr

    def read(self, lam: int, addr: int) -> int:
        return self.bits.get(self.cell(lam, addr))

    def write(self, lam: int, addr: int, bit: int) -> None:
        self.bits.put(self.cell(lam, addr), bit)


def schedule_indices(phi: int, n: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Copy/XOR selector bits and working addresses for row ``phi``.

    Both come straight out of ``phi``: ``b[lam]`` is bit ``lam`` and
    ``a[lam]`` is the low ``lam`` bits (``a[0]`` is always 0).

    >>> schedule_indices(6, 3)
    ((0, 1, 1), (0, 0, 2))
    """
    if not 0 <= phi < (1 << n):
        raise ValueError(f"phi={phi} out of range for n={n}")
    b = tuple((phi >> lam) & 1 for lam in range(n))
    a = tuple(phi & ((1 << lam) - 1) for lam in range(n))
    return b, a


def _serial_pass(n: int, info_mask, x: BitBuffer, u: BitBuffer, mem: LayerMemory,
                 emit_u: bool, mutate_at: int = -1) -> tuple[int, int]:
    """Run every row through the network in place; returns (xors, copies).

    ``mutate_at`` turns the XOR with that running index into a copy. It
    exists only so tests can prove the checks catch a single wrong op.
    """
    N = 1 << n
    bits = mem.bits
    get, put = bits.get, bits.put
    xget, xput = x.get, x.put
    t = mem.temp
    xors = copies = 0

    for phi in range(N - 1, -1, -1):
        if info_mask[phi]:
            # Known codeword bit: propagate right to left.
            if phi & 1:
                put(0, xget(phi))
                copies += 1
            else:
                put(0, xget(phi) if xors == mutate_at else get(0) ^ xget(phi))
                xors += 1
            prev = 0
            for lam in range(1, n):
                cell = (1 << lam) - 1 + (phi & ((1 << lam) - 1))
                if (phi >> lam) & 1:
                    put(cell, get(prev))
                    copies += 1
                else:
                    put(cell, get(prev) if xors == mutate_at else get(cell) ^ get(prev))
                    xors += 1
                prev = cell
            if emit_u:
                u.put(phi, get(prev))
        else:
            # Known source bit: propagate left to right through the temp bit.
            put(t, u.get(phi))
            for lam in range(n - 1, 0, -1):
                cell = (1 << lam) - 1 + (phi & ((1 << lam) - 1))
                if (phi >> lam) & 1:
                    put(cell, get(t))
                    copies += 1
                else:
                    put(t, get(cell) if xors == mutate_at else get(t) ^ get(cell))
                    xors += 1
            if phi & 1:
                xput(phi, get(t))
                put(0, get(t))
                copies += 1
            else:
                # D[0,0] still holds x[phi+1], the partner this XOR needs.
                xput(phi, get(t) if xors == mutate_at else get(t) ^ get(0))
                xors += 1
    return xors, copies


def encode_spc(config: CodeConfig, x_info, u_frozen=None, emit_u: bool = True, *,
               ledger: OpLedger | None = None, checked: bool | None = None,
               _mutate_xor: int | None = None) -> tuple[BitBuffer, BitBuffer | None]:
    """Systematic encode with ``N`` bits of working memory.

    Parameters
    ----------
    config : CodeConfig
        Block length and information set.
    x_info : bits
        User bits, placed verbatim on the information set of the codeword.
    u_frozen : bits, optional
        Frozen source bits; defaults to ``config.frozen_values``.
    emit_u : bool
        Also recover the full source word ``u``. Skipping it saves one
        write per information row and nothing else.
    ledger : OpLedger, optional
        Receives XOR/copy counts, working-memory size and propagations.
    checked : bool, optional
        Fail on any read of a working cell the schedule has not written yet.
        Defaults to the ``POLARCODE_PROFILE`` setting.

    Returns
    -------
    x : BitBuffer
        Full codeword.
    u : BitBuffer or None
        Full source word, when ``emit_u``.
    """
    if u_frozen is None:
        u_frozen = config.frozen_values
    x, u = config.scatter(x_info, u_frozen)
    mem = LayerMemory(config.n, checked=resolve_checked(checked))
    xors, copies = _serial_pass(config.n, config.info_mask, x, u, mem, emit_u,
                                -1 if _mutate_xor is None else _mutate_xor)
    if ledger is not None:
        ledger.reset()
        ledger.allocate(mem.model_bits)
        ledger.xor_count, ledger.copy_count = xors, copies
        ledger.propagations = config.N
    return x, (u if emit_u else None)


def encode_nspc(config: CodeConfig | int, u, *, ledger: OpLedger | None = None,
                checked: bool | None = None) -> BitBuffer:
    """Nonsystematic encode ``x = u G`` using only left-to-right propagation.

    ``config`` may be a ``CodeConfig`` or just the exponent ``n``; only the
    block length matters since every row of ``u`` is known.
    """
    n = config if isinstance(config, int) else config.n
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    N = 1 << n
    u = _as_buffer(u, N, "u").copy()
    x = BitBuffer(N)
    mem = LayerMemory(n, checked=resolve_checked(checked))
    xors, copies = _serial_pass(n, (False,) * N, x, u, mem, emit_u=False)
    if ledger is not None:
        ledger.reset()
        ledger.allocate(mem.model_bits)
        ledger.xor_count, ledger.copy_count = xors, copies
        ledger.propagations = N
    return x

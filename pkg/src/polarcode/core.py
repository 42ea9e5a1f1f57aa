"""Shared types: code parameters, packed bit buffers and pair classification."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Sequence


class BitBuffer:
    """Fixed-length bit sequence packed eight bits per byte.

    Bit ``i`` lives in byte ``i >> 3`` at position ``i & 7`` (bit 0 first),
    which is also the on-disk order of raw bit files.
    """

    __slots__ = ("_len", "_data")

    def __init__(self, length: int, data: bytes | bytearray | None = None):
        if length < 0:
            raise ValueError(f"length must be non-negative, got {length}")
        nbytes = (length + 7) >> 3
        if data is None:
            self._data = bytearray(nbytes)
        else:
            if len(data) != nbytes:
                raise ValueError(f"need {nbytes} bytes for {length} bits, got {len(data)}")
            self._data = bytearray(data)
            tail = length & 7
            if tail:
                self._data[-1] &= (1 << tail) - 1
        self._len = length

    @classmethod
    def from_bits(cls, bits: Iterable[int]) -> "BitBuffer":
        bits = list(bits)
        buf = cls(len(bits))
        for i, b in enumerate(bits):
            if b not in (0, 1):
                raise ValueError(f"bit {i} is {b!r}, expected 0 or 1")
            if b:
                buf._data[i >> 3] |= 1 << (i & 7)
        return buf

    @classmethod
    def from_int(cls, value: int, length: int) -> "BitBuffer":
        """Bit ``i`` of the buffer is bit ``i`` of ``value``."""
        return cls(length, value.to_bytes((length + 7) >> 3, "little"))

    @classmethod
    def from_str(cls, text: str) -> "BitBuffer":
        return cls.from_bits(int(c) for c in text)

    def __len__(self) -> int:
        return self._len

    def _check(self, i: int) -> int:
        if i < 0:
            i += self._len
        if not 0 <= i < self._len:
            raise IndexError(f"bit index {i} out of range for length {self._len}")
        return i

    def __getitem__(self, i: int) -> int:
        i = self._check(i)
        return (self._data[i >> 3] >> (i & 7)) & 1

    def __setitem__(self, i: int, bit: int) -> None:
        i = self._check(i)
        if bit:
            self._data[i >> 3] |= 1 << (i & 7)
        else:
            self._data[i >> 3] &= ~(1 << (i & 7)) & 0xFF

    # Unchecked accessors for encoder inner loops.
    def get(self, i: int) -> int:
        return (self._data[i >> 3] >> (i & 7)) & 1

    def put(self, i: int, bit: int) -> None:
        if bit:
            self._data[i >> 3] |= 1 << (i & 7)
        else:
            self._data[i >> 3] &= ~(1 << (i & 7)) & 0xFF

    def __ixor__(self, other: "BitBuffer") -> "BitBuffer":
        if len(other) != self._len:
            raise ValueError(f"length mismatch: {self._len} vs {len(other)}")
        for k, byte in enumerate(other._data):
            self._data[k] ^= byte
        return self

    def __xor__(self, other: "BitBuffer") -> "BitBuffer":
        out = self.copy()
        out ^= other
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BitBuffer):
            return NotImplemented
        return self._len == other._len and self._data == other._data

    def __iter__(self):
        data = self._data
        for i in range(self._len):
            yield (data[i >> 3] >> (i & 7)) & 1

    def __repr__(self) -> str:
        return f"BitBuffer('{self.to_str()}')"

    def copy(self) -> "BitBuffer":
        return BitBuffer(self._len, self._data)

    def clear(self) -> None:
        for k in range(len(self._data)):
            self._data[k] = 0

    def count(self) -> int:
        return sum(bin(b).count("1") for b in self._data)

    def take(self, indices: Sequence[int]) -> "BitBuffer":
        return BitBuffer.from_bits(self[i] for i in indices)

    def to_list(self) -> list[int]:
        return list(self)

    def to_str(self) -> str:
        return "".join("1" if b else "0" for b in self)

    def to_int(self) -> int:
        return int.from_bytes(self._data, "little")

    def to_bytes(self) -> bytes:
        return bytes(self._data)


def _as_buffer(bits, length: int, what: str) -> BitBuffer:
    buf = bits if isinstance(bits, BitBuffer) else BitBuffer.from_bits(bits)
    if len(buf) != length:
        raise ValueError(f"{what} has length {len(buf)}, expected {length}")
    return buf


@dataclass(frozen=True)
class CodeConfig:
    """Block length ``N = 2**n`` with its information and frozen index sets.

    ``info_set`` holds the positions of user bits (positions of ``x`` for a
    systematic code, of ``u`` for a nonsystematic one). ``frozen_values``
    lists the known bits of ``u`` on the frozen set, in ascending index order.
    """

    n: int
    info_set: tuple[int, ...]
    frozen_values: tuple[int, ...] | None = None
    frozen_set: tuple[int, ...] = field(init=False)
    info_mask: tuple[bool, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError(f"n must be an integer >= 1, got {self.n!r}")
        N = 1 << self.n
        info = tuple(int(i) for i in self.info_set)
        for prev, cur in zip(info, info[1:]):
            if cur <= prev:
                raise ValueError("info_set must be strictly increasing")
        if info and not (0 <= info[0] and info[-1] < N):
            raise ValueError(f"info_set indices must lie in [0, {N})")
        mask = [False] * N
        for i in info:
            mask[i] = True
        frozen = tuple(i for i in range(N) if not mask[i])
        if self.frozen_values is None:
            values = (0,) * len(frozen)
        else:
            values = tuple(int(v) for v in self.frozen_values)
            if len(values) != len(frozen):
                raise ValueError(f"frozen_values has length {len(values)}, expected {len(frozen)}")
            if any(v not in (0, 1) for v in values):
                raise ValueError("frozen_values must be bits")
        object.__setattr__(self, "info_set", info)
        object.__setattr__(self, "frozen_set", frozen)
        object.__setattr__(self, "frozen_values", values)
        object.__setattr__(self, "info_mask", tuple(mask))

    @classmethod
    def from_mask(cls, n: int, mask: int, frozen_values=None) -> "CodeConfig":
        """Info set from the set bits of ``mask`` (bit ``i`` set means ``i`` in A)."""
        return cls(n, tuple(i for i in range(1 << n) if (mask >> i) & 1), frozen_values)

    @property
    def N(self) -> int:
        return 1 << self.n

    @property
    def K(self) -> int:
        return len(self.info_set)

    def is_info(self, i: int) -> bool:
        return self.info_mask[i]

    def with_frozen_values(self, values) -> "CodeConfig":
        return CodeConfig(self.n, self.info_set, tuple(values))

    def scatter(self, x_info, u_frozen) -> tuple[BitBuffer, BitBuffer]:
        """Full-length ``x`` and ``u`` holding only the known systematic inputs."""
        x_info = _as_buffer(x_info, self.K, "x_info")
        u_frozen = _as_buffer(u_frozen, self.N - self.K, "u_frozen")
        x = BitBuffer(self.N)
        u = BitBuffer(self.N)
        for k, i in enumerate(self.info_set):
            x.put(i, x_info.get(k))
        for k, i in enumerate(self.frozen_set):
            u.put(i, u_frozen.get(k))
        return x, u


class PairCase(enum.Enum):
    """Frozen/user pattern of the consecutive pair ``(2*psi, 2*psi + 1)``."""

    A_BOTH_USER = "a"
    B_BOTH_FROZEN = "b"
    C_FROZEN_TOP_USER_BOTTOM = "c"
    D_USER_TOP_FROZEN_BOTTOM = "d"


def classify_pair(config: CodeConfig, psi: int) -> PairCase:
    if not 0 <= psi < config.N // 2:
        raise IndexError(f"pair index {psi} out of range [0, {config.N // 2})")
    top = config.info_mask[2 * psi]
    bottom = config.info_mask[2 * psi + 1]
    if top:
        return PairCase.A_BOTH_USER if bottom else PairCase.D_USER_TOP_FROZEN_BOTTOM
    return PairCase.C_FROZEN_TOP_USER_BOTTOM if bottom else PairCase.B_BOTH_FROZEN

"""Frozen-set files and bit files.

Frozen-set file (text)::

    polar-frozen v1 N=8 K=5
    1
    3
    ...

The body lists the information-set indices, one per line, ascending. Lines
starting with ``#`` are comments (``cmd_construct`` uses one to flag a set
that failed validation).

Bit files are either ASCII ``0``/``1`` characters (whitespace ignored) or raw
packed bytes with bit ``i`` at byte ``i // 8``, bit position ``i % 8``. A raw
file does not record its length; the reader is told how many bits to expect.
"""

from __future__ import annotations

import os
import re
from pathlib import Path

from .core import BitBuffer, CodeConfig

_HEADER = re.compile(r"^polar-frozen v1 N=(\d+) K=(\d+)$")
BIT_FORMATS = ("ascii", "raw")


class FormatError(ValueError):
    pass


def format_frozen_set(config: CodeConfig, comments=()) -> str:
    lines = [f"polar-frozen v1 N={config.N} K={config.K}"]
    lines.extend(f"# {c}" for c in comments)
    lines.extend(str(i) for i in config.info_set)
    return "\n".join(lines) + "\n"


def write_frozen_set(path: str | os.PathLike, config: CodeConfig, comments=()) -> None:
    Path(path).write_text(format_frozen_set(config, comments))


def parse_frozen_set(text: str) -> CodeConfig:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise FormatError("empty frozen-set file")
    m = _HEADER.match(lines[0])
    if not m:
        raise FormatError(f"bad header {lines[0]!r}, expected 'polar-frozen v1 N=<N> K=<K>'")
    N, K = int(m.group(1)), int(m.group(2))
    if N < 2 or N & (N - 1):
        raise FormatError(f"N={N} is not a power of two >= 2")
    body = lines[1:]
    if len(body) != K:
        raise FormatError(f"header says K={K} but body has {len(body)} indices")
    info = []
    for ln in body:
        if not ln.isdigit():
            raise FormatError(f"bad index line {ln!r}")
        i = int(ln)
        if i >= N:
            raise FormatError(f"index {i} out of range [0, {N})")
        if info and i <= info[-1]:
            raise FormatError("indices must be strictly increasing")
        info.append(i)
    return CodeConfig(N.bit_length() - 1, tuple(info))


def read_frozen_set(path: str | os.PathLike) -> CodeConfig:
    return parse_frozen_set(Path(path).read_text())


def encode_bits(bits: BitBuffer, fmt: str = "ascii") -> bytes:
    if fmt == "ascii":
        return (bits.to_str() + "\n").encode("ascii")
    if fmt == "raw":
        return bits.to_bytes()
    raise ValueError(f"bit format must be one of {BIT_FORMATS}, got {fmt!r}")


def decode_bits(data: bytes, fmt: str = "ascii", length: int | None = None) -> BitBuffer:
    if fmt == "ascii":
        text = "".join(data.decode("ascii").split())
        if any(c not in "01" for c in text):
            raise FormatError("ascii bit file may contain only '0', '1' and whitespace")
        bits = BitBuffer.from_str(text)
        if length is not None and len(bits) != length:
            raise FormatError(f"expected {length} bits, file has {len(bits)}")
        return bits
    if fmt == "raw":
        if length is None:
            raise FormatError("raw bit files need an explicit length")
        need = (length + 7) >> 3
        if len(data) != need:
            raise FormatError(f"expected {need} bytes for {length} bits, file has {len(data)}")
        return BitBuffer(length, data)
    raise ValueError(f"bit format must be one of {BIT_FORMATS}, got {fmt!r}")


def write_bits(path: str | os.PathLike, bits: BitBuffer, fmt: str = "ascii") -> None:
    Path(path).write_bytes(encode_bits(bits, fmt))


def read_bits(path: str | os.PathLike, fmt: str = "ascii", length: int | None = None) -> BitBuffer:
    return decode_bits(Path(path).read_bytes(), fmt, length)

"""Dense GF(2) reference encoders.

Deliberately naive: rows are Python ints used as bitsets (bit ``j`` is column
``j``), and systematic encoding goes through an explicit inverse of the
information-set block of the generator. Used only to check the fast encoders.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Sequence

from .core import BitBuffer, CodeConfig, _as_buffer

MAX_ORACLE_N = 16


class Gf2ShapeError(ValueError):
    """Operands have incompatible or non-square shapes."""


class SingularMatrixError(ArithmeticError):
    """Matrix has no inverse over GF(2)."""


class Gf2Matrix:
    __slots__ = ("rows", "cols", "_bits")

    def __init__(self, rows: int, cols: int, row_bits: Sequence[int] | None = None):
        self.rows = rows
        self.cols = cols
        if row_bits is None:
            self._bits = [0] * rows
        else:
            if len(row_bits) != rows:
                raise Gf2ShapeError(f"expected {rows} rows, got {len(row_bits)}")
            limit = 1 << cols
            if any(r < 0 or r >= limit for r in row_bits):
                raise ValueError(f"row bitset wider than {cols} columns")
            self._bits = list(row_bits)

    @classmethod
    def _wrap(cls, rows: int, cols: int, row_bits: list[int]) -> "Gf2Matrix":
        # Internal results are well-formed by construction; skip validation.
        m = cls.__new__(cls)
        m.rows, m.cols, m._bits = rows, cols, row_bits
        return m

    @classmethod
    def from_lists(cls, entries: Sequence[Sequence[int]]) -> "Gf2Matrix":
        rows = len(entries)
        cols = len(entries[0]) if rows else 0
        bits = []
        for r in entries:
            if len(r) != cols:
                raise Gf2ShapeError("ragged rows")
            bits.append(sum(1 << j for j, v in enumerate(r) if v & 1))
        return cls(rows, cols, bits)

    @classmethod
    def identity(cls, size: int) -> "Gf2Matrix":
        return cls(size, size, [1 << i for i in range(size)])

    @classmethod
    def row_vector(cls, bits) -> "Gf2Matrix":
        buf = bits if isinstance(bits, BitBuffer) else BitBuffer.from_bits(bits)
        return cls._wrap(1, len(buf), [buf.to_int()])

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def row(self, i: int) -> int:
        return self._bits[i]

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f"entry ({i}, {j}) outside {self.rows}x{self.cols}")
        return (self._bits[i] >> j) & 1

    def to_lists(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.cols)] for r in self._bits]

    def to_buffer(self) -> BitBuffer:
        if self.rows != 1:
            raise Gf2ShapeError("only a row vector converts to a bit buffer")
        return BitBuffer.from_int(self._bits[0], self.cols)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Gf2Matrix):
            return NotImplemented
        return self.shape == other.shape and self._bits == other._bits

    def __repr__(self) -> str:
        return f"Gf2Matrix({self.to_lists()})"

    def __add__(self, other: "Gf2Matrix") -> "Gf2Matrix":
        if self.shape != other.shape:
            raise Gf2ShapeError(f"cannot add {self.shape} and {other.shape}")
        return Gf2Matrix._wrap(self.rows, self.cols, [a ^ b for a, b in zip(self._bits, other._bits)])

    def __matmul__(self, other: "Gf2Matrix") -> "Gf2Matrix":
        if self.cols != other.rows:
            raise Gf2ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        out = []
        for r in self._bits:
            acc = 0
            k = 0
            while r:
                if r & 1:
                    acc ^= other._bits[k]
                r >>= 1
                k += 1
            out.append(acc)
        return Gf2Matrix._wrap(self.rows, other.cols, out)

    def kron(self, other: "Gf2Matrix") -> "Gf2Matrix":
        out = []
        for a in self._bits:
            for b in other._bits:
                acc = 0
                for j in range(self.cols):
                    if (a >> j) & 1:
                        acc |= b << (j * other.cols)
                out.append(acc)
        return Gf2Matrix(self.rows * other.rows, self.cols * other.cols, out)

    def rank(self) -> int:
        work = list(self._bits)
        rank = 0
        for col in range(self.cols):
            pivot = next((r for r in range(rank, len(work)) if (work[r] >> col) & 1), None)
            if pivot is None:
                continue
            work[rank], work[pivot] = work[pivot], work[rank]
            for r in range(len(work)):
                if r != rank and (work[r] >> col) & 1:
                    work[r] ^= work[rank]
            rank += 1
        return rank


KERNEL = Gf2Matrix.from_lists([[1, 0], [1, 1]])


@lru_cache(maxsize=None)
def kron_power(n: int) -> Gf2Matrix:
    """``F`` Kronecker-multiplied with itself ``n`` times, no bit reversal."""
    if not 1 <= n <= MAX_ORACLE_N:
        raise ValueError(f"oracle supports 1 <= n <= {MAX_ORACLE_N}, got {n}")
    G = KERNEL
    for _ in range(n - 1):
        G = G.kron(KERNEL)
    return G


def submatrix(G: Gf2Matrix, row_set: Sequence[int], col_set: Sequence[int]) -> Gf2Matrix:
    for name, idx, bound in (("row", row_set, G.rows), ("column", col_set, G.cols)):
        for i in idx:
            if not 0 <= i < bound:
                raise IndexError(f"{name} index {i} out of range [0, {bound})")
    out = []
    for i in row_set:
        r = G.row(i)
        out.append(sum(((r >> j) & 1) << k for k, j in enumerate(col_set)))
    return Gf2Matrix(len(row_set), len(col_set), out)


def gf2_invert(M: Gf2Matrix) -> Gf2Matrix:
    """Gauss-Jordan inverse, pivoting on the first row with a one in the column."""
    if M.rows != M.cols:
        raise Gf2ShapeError(f"cannot invert non-square {M.shape} matrix")
    size = M.rows
    # Augmented rows: low `size` bits hold M, high bits hold the identity.
    work = [M.row(i) | (1 << (size + i)) for i in range(size)]
    for col in range(size):
        pivot = next((r for r in range(col, size) if (work[r] >> col) & 1), None)
        if pivot is None:
            raise SingularMatrixError(f"matrix is singular (no pivot in column {col})")
        work[col], work[pivot] = work[pivot], work[col]
        p = work[col]
        for r in range(size):
            if r != col and (work[r] >> col) & 1:
                work[r] ^= p
    return Gf2Matrix(size, size, [r >> size for r in work])


def _check_oracle_config(config: CodeConfig) -> None:
    if config.n > MAX_ORACLE_N:
        raise ValueError(f"oracle supports n <= {MAX_ORACLE_N}, got {config.n}")


def encode_nonsystematic_oracle(config: CodeConfig | int, u) -> BitBuffer:
    """``x = u G`` by explicit vector-matrix product."""
    n = config if isinstance(config, int) else config.n
    G = kron_power(n)
    u = _as_buffer(u, G.rows, "u")
    return (Gf2Matrix.row_vector(u) @ G).to_buffer()


class _SystematicBlocks:
    """Generator blocks split by information set, with the inverse of G_AA."""

    def __init__(self, n: int, info: tuple[int, ...]):
        G = kron_power(n)
        N = 1 << n
        info_set = set(info)
        frozen = tuple(i for i in range(N) if i not in info_set)
        self.info = info
        self.frozen = frozen
        self.G_fa = submatrix(G, frozen, info)
        self.G_af = submatrix(G, info, frozen)
        self.G_ff = submatrix(G, frozen, frozen)
        try:
            self.G_aa_inv = gf2_invert(submatrix(G, info, info))
        except SingularMatrixError as exc:
            raise RuntimeError(f"G_AA singular for info set {info}; oracle is broken") from exc


@lru_cache(maxsize=4096)
def _blocks(n: int, info: tuple[int, ...]) -> _SystematicBlocks:
    return _SystematicBlocks(n, info)


def encode_systematic_oracle(config: CodeConfig, x_info, u_frozen=None) -> tuple[BitBuffer, BitBuffer]:
    """Solve ``x = u G`` for the unknown halves of ``u`` and ``x``.

    Parameters
    ----------
    config : CodeConfig
        Block length and information set.
    x_info : bits
        Codeword bits on the information set, ascending index order.
    u_frozen : bits, optional
        Source bits on the frozen set; defaults to ``config.frozen_values``.

    Returns
    -------
    u, x : BitBuffer
        Full source word and full codeword.
    """
    _check_oracle_config(config)
    if u_frozen is None:
        u_frozen = config.frozen_values
    x_info = _as_buffer(x_info, config.K, "x_info")
    u_frozen = _as_buffer(u_frozen, config.N - config.K, "u_frozen")
    blk = _blocks(config.n, config.info_set)

    xa = Gf2Matrix.row_vector(x_info)
    uf = Gf2Matrix.row_vector(u_frozen)
    if config.K:
        ua = (xa + uf @ blk.G_fa) @ blk.G_aa_inv
        xf = ua @ blk.G_af + uf @ blk.G_ff
    else:
        ua = Gf2Matrix(1, 0, [0])
        xf = uf @ blk.G_ff

    u, x = BitBuffer(config.N), BitBuffer(config.N)
    ua_bits, xf_bits = ua.row(0), xf.row(0)
    for k, i in enumerate(blk.info):
        x.put(i, x_info.get(k))
        u.put(i, (ua_bits >> k) & 1)
    for k, i in enumerate(blk.frozen):
        u.put(i, u_frozen.get(k))
        x.put(i, (xf_bits >> k) & 1)
    return u, x

"""Exact linear algebra over GF(2) on int-packed bit vectors.

Vectors are immutable wrappers around Python ints (bit i = coordinate i),
matrices pack each row into one int.  Elimination always picks the lowest
index pivot first, so ranks, kernels, particular solutions and coset
enumeration order are reproducible across runs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence


class EnumerationLimitError(RuntimeError):
    """A coset enumeration would exceed the configured cap."""

    def __init__(self, required: int, cap: int):
        super().__init__(
            f"enumeration requires {required} vectors but the cap is {cap}"
            f" (rerun with --max-enum {required} or higher)"
        )
        self.required = required
        self.cap = cap


@dataclass(frozen=True)
class BitVec:
    """GF(2) vector of fixed length; addition is bitwise XOR."""

    bits: int
    length: int

    def __post_init__(self):
        if self.length < 0 or self.bits < 0 or self.bits >> self.length:
            raise ValueError("bits do not fit the declared length")

    @staticmethod
    def zero(length: int) -> "BitVec":
        return BitVec(0, length)

    @staticmethod
    def unit(length: int, index: int) -> "BitVec":
        return BitVec(1 << index, length)

    @staticmethod
    def from_indices(length: int, indices: Iterable[int]) -> "BitVec":
        bits = 0
        for i in indices:
            bits |= 1 << i
        return BitVec(bits, length)

    def __add__(self, other: "BitVec") -> "BitVec":
        if self.length != other.length:
            raise ValueError("length mismatch")
        return BitVec(self.bits ^ other.bits, self.length)

    __xor__ = __add__

    def get(self, index: int) -> int:
        return (self.bits >> index) & 1

    def support(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.length) if (self.bits >> i) & 1)

    def weight(self) -> int:
        return self.bits.bit_count()

    def is_zero(self) -> bool:
        return self.bits == 0


@dataclass(frozen=True)
class BitMatrix:
    """GF(2) matrix, one int per row (bit c of row_words[r] = entry (r, c))."""

    rows: int
    cols: int
    row_words: tuple[int, ...]

    def __post_init__(self):
        if len(self.row_words) != self.rows:
            raise ValueError("row count mismatch")
        mask = (1 << self.cols) - 1
        if any(w < 0 or w & ~mask for w in self.row_words):
            raise ValueError("row word out of range")

    @staticmethod
    def zero(rows: int, cols: int) -> "BitMatrix":
        return BitMatrix(rows, cols, (0,) * rows)

    @staticmethod
    def identity(n: int) -> "BitMatrix":
        return BitMatrix(n, n, tuple(1 << i for i in range(n)))

    @staticmethod
    def from_rows(rows: Sequence[Sequence[int]]) -> "BitMatrix":
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        words = []
        for row in rows:
            w = 0
            for c, v in enumerate(row):
                if v & 1:
                    w |= 1 << c
            words.append(w)
        return BitMatrix(nrows, ncols, tuple(words))

    @staticmethod
    def from_columns(columns: Sequence[int], rows: int) -> "BitMatrix":
        """Build from column bitmasks (bit r of columns[c] = entry (r, c))."""
        words = [0] * rows
        for c, col in enumerate(columns):
            while col:
                low = col & -col
                words[low.bit_length() - 1] |= 1 << c
                col ^= low
        return BitMatrix(rows, len(columns), tuple(words))

    def column(self, c: int) -> BitVec:
        bits = 0
        for r, w in enumerate(self.row_words):
            if (w >> c) & 1:
                bits |= 1 << r
        return BitVec(bits, self.rows)

    def columns(self) -> list[int]:
        cols = [0] * self.cols
        for r, w in enumerate(self.row_words):
            while w:
                low = w & -w
                cols[low.bit_length() - 1] |= 1 << r
                w ^= low
        return cols

    def restrict_columns(self, keep: Sequence[int]) -> "BitMatrix":
        """Submatrix with the listed columns, reindexed in the given order."""
        words = []
        for w in self.row_words:
            nw = 0
            for new_c, old_c in enumerate(keep):
                if (w >> old_c) & 1:
                    nw |= 1 << new_c
            words.append(nw)
        return BitMatrix(self.rows, len(keep), tuple(words))

    def mul_vec(self, x: BitVec) -> BitVec:
        if x.length != self.cols:
            raise ValueError("dimension mismatch")
        bits = 0
        for r, w in enumerate(self.row_words):
            if (w & x.bits).bit_count() & 1:
                bits |= 1 << r
        return BitVec(bits, self.rows)


class Span:
    """Incrementally row-reduced span of GF(2) vectors (membership oracle)."""

    def __init__(self, length: int, vectors: Iterable[BitVec] = ()):
        self.length = length
        self._pivots: dict[int, int] = {}
        for v in vectors:
            self.add(v)

    @property
    def dim(self) -> int:
        return len(self._pivots)

    def _reduce(self, bits: int) -> int:
        while bits:
            low = (bits & -bits).bit_length() - 1
            row = self._pivots.get(low)
            if row is None:
                return bits
            bits ^= row
        return 0

    def add(self, v: BitVec) -> bool:
        """Add a vector; True if the dimension grew."""
        if v.length != self.length:
            raise ValueError("length mismatch")
        rem = self._reduce(v.bits)
        if rem == 0:
            return False
        self._pivots[(rem & -rem).bit_length() - 1] = rem
        return True

    def contains(self, v: BitVec) -> bool:
        if v.length != self.length:
            raise ValueError("length mismatch")
        return self._reduce(v.bits) == 0


def _eliminate(words: list[int], cols: int) -> list[tuple[int, int]]:
    """In-place RREF; returns (pivot_row, pivot_col) pairs, lowest column first."""
    pivots = []
    row = 0
    for col in range(cols):
        sel = None
        for r in range(row, len(words)):
            if (words[r] >> col) & 1:
                sel = r
                break
        if sel is None:
            continue
        words[row], words[sel] = words[sel], words[row]
        for r in range(len(words)):
            if r != row and (words[r] >> col) & 1:
                words[r] ^= words[row]
        pivots.append((row, col))
        row += 1
        if row == len(words):
            break
    return pivots


def rank(m: BitMatrix) -> int:
    """Dimension of the column space (= row space) over GF(2)."""
    words = list(m.row_words)
    return len(_eliminate(words, m.cols))


def solve(m: BitMatrix, b: BitVec) -> Optional[BitVec]:
    """Some x with m·x = b, or None if b is outside the column space.

    Free variables are set to zero, so the particular solution is unique
    for a given matrix.
    """
    if b.length != m.rows:
        raise ValueError("right-hand side length must equal the row count")
    aug = [w | (((b.bits >> r) & 1) << m.cols) for r, w in enumerate(m.row_words)]
    pivots = _eliminate(aug, m.cols)
    pivot_rows = {r for r, _ in pivots}
    for r, w in enumerate(aug):
        if r not in pivot_rows and (w >> m.cols) & 1:
            return None
    bits = 0
    for r, c in pivots:
        if (aug[r] >> m.cols) & 1:
            bits |= 1 << c
    return BitVec(bits, m.cols)


def kernel_basis(m: BitMatrix) -> list[BitVec]:
    """Basis of {x : m·x = 0}, one vector per free column, ascending."""
    words = list(m.row_words)
    pivots = _eliminate(words, m.cols)
    pivot_cols = {c: r for r, c in pivots}
    basis = []
    for free in range(m.cols):
        if free in pivot_cols:
            continue
        bits = 1 << free
        for c, r in pivot_cols.items():
            if (words[r] >> free) & 1:
                bits |= 1 << c
        basis.append(BitVec(bits, m.cols))
    return basis


def column_space_basis(m: BitMatrix) -> list[BitVec]:
    """First maximal independent subset of the columns, in column order."""
    span = Span(m.rows)
    basis = []
    for col in m.columns():
        v = BitVec(col, m.rows)
        if span.add(v):
            basis.append(v)
    return basis


def enumerate_coset(x0: BitVec, basis: Sequence[BitVec], cap: int) -> Iterator[BitVec]:
    """Yield all 2^len(basis) vectors of x0 + span(basis), each exactly once.

    Gray-code order: consecutive vectors differ by one basis element.
    Raises EnumerationLimitError (naming the required budget) when the
    coset is larger than cap.  Callers must ensure basis independence for
    the "exactly once" guarantee.
    """
    for v in basis:
        if v.length != x0.length:
            raise ValueError("length mismatch")
    k = len(basis)
    required = 1 << k
    if required > cap:
        raise EnumerationLimitError(required, cap)
    bits = x0.bits
    yield BitVec(bits, x0.length)
    prev_gray = 0
    for i in range(1, required):
        gray = i ^ (i >> 1)
        flip = (gray ^ prev_gray).bit_length() - 1
        prev_gray = gray
        bits ^= basis[flip].bits
        yield BitVec(bits, x0.length)

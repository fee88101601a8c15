"""GF(2) linear algebra on int bitsets (bit j of a row is column j)."""

from __future__ import annotations

from typing import Iterable, Sequence


def parity(x: int) -> int:
    return bin(x).count("1") & 1


class Reducer:
    """Incremental echelon basis: keeps one pivot row per leading bit."""

    def __init__(self, vectors: Iterable[int] = ()):
        self.pivots: dict[int, int] = {}
        for v in vectors:
            self.add(v)

    def reduce(self, v: int) -> int:
        while v:
            top = v.bit_length() - 1
            row = self.pivots.get(top)
            if row is None:
                return v
            v ^= row
        return 0

    def add(self, v: int) -> bool:
        """Insert ``v``; return True if it was independent of the basis."""
        v = self.reduce(v)
        if not v:
            return False
        self.pivots[v.bit_length() - 1] = v
        return True

    def __contains__(self, v: int) -> bool:
        return self.reduce(v) == 0

    def __len__(self) -> int:
        return len(self.pivots)


def rank(rows: Iterable[int]) -> int:
    return len(Reducer(rows))


def nullspace(rows: Sequence[int], ncols: int) -> list[int]:
    """Basis of ``{x : parity(row & x) == 0 for every row}``."""
    pivots: dict[int, int] = {}  # pivot column -> fully reduced row
    for r in rows:
        for col, prow in pivots.items():
            if r >> col & 1:
                r ^= prow
        if not r:
            continue
        col = (r & -r).bit_length() - 1
        for c, prow in pivots.items():
            if prow >> col & 1:
                pivots[c] = prow ^ r
        pivots[col] = r
    basis = []
    for free in range(ncols):
        if free in pivots:
            continue
        x = 1 << free
        for col, prow in pivots.items():
            if prow >> free & 1:
                x |= 1 << col
        basis.append(x)
    return basis


class Gf2Matrix:
    """Dense GF(2) matrix of shape ``rows x cols`` stored as row bitsets."""

    def __init__(self, nrows: int, ncols: int, rows: Sequence[int] | None = None):
        self.nrows, self.ncols = nrows, ncols
        self.rows = list(rows) if rows is not None else [0] * nrows
        if len(self.rows) != nrows or any(r >> ncols for r in self.rows):
            raise ValueError("row data does not match the shape")

    @classmethod
    def from_columns(cls, nrows: int, columns: Sequence[int]) -> Gf2Matrix:
        rows = [0] * nrows
        for j, col in enumerate(columns):
            c = col
            while c:
                low = c & -c
                rows[low.bit_length() - 1] |= 1 << j
                c ^= low
        return cls(nrows, len(columns), rows)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.rows[i] >> j & 1

    def transpose(self) -> Gf2Matrix:
        return Gf2Matrix.from_columns(self.ncols, self.rows)

    def __matmul__(self, other: Gf2Matrix) -> Gf2Matrix:
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        out = []
        for r in self.rows:
            acc = 0
            k = 0
            while r:
                if r & 1:
                    acc ^= other.rows[k]
                r >>= 1
                k += 1
            out.append(acc)
        return Gf2Matrix(self.nrows, other.ncols, out)

    def is_zero(self) -> bool:
        return not any(self.rows)

    def rank(self) -> int:
        return rank(self.rows)

    def nullspace(self) -> list[int]:
        return nullspace(self.rows, self.ncols)

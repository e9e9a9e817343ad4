"""Sparse integer matrices and exact rank over the rationals.

Rank uses fraction-free row elimination: rows are cross-multiplied with the
pivot row (so every intermediate value is an integer) and renormalized by
their gcd to keep coefficients small. Pivots are chosen Markowitz-style to
limit fill-in. No floating point anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd


@dataclass(frozen=True)
class SparseIntMatrix:
    """Immutable sparse integer matrix as sorted (row, col, value) triples."""

    rows: int
    cols: int
    entries: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        seen = set()
        for r, c, v in self.entries:
            if not (0 <= r < self.rows and 0 <= c < self.cols):
                raise ValueError(f"entry ({r},{c}) out of bounds")
            if v == 0:
                raise ValueError("zero coefficients must not be stored")
            if (r, c) in seen:
                raise ValueError(f"duplicate entry at ({r},{c})")
            seen.add((r, c))

    @staticmethod
    def from_dict(rows: int, cols: int, data: dict[tuple[int, int], int]) -> SparseIntMatrix:
        entries = tuple(sorted((r, c, v) for (r, c), v in data.items() if v != 0))
        return SparseIntMatrix(rows, cols, entries)

    @staticmethod
    def zero(rows: int, cols: int) -> SparseIntMatrix:
        return SparseIntMatrix(rows, cols, ())

    @property
    def is_zero(self) -> bool:
        return not self.entries

    def column(self, j: int) -> dict[int, int]:
        return {r: v for r, c, v in self.entries if c == j}

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for r, c, v in self.entries:
            out[r][c] = v
        return out

    def matmul(self, other: SparseIntMatrix) -> SparseIntMatrix:
        if self.cols != other.rows:
            raise ValueError("inner dimensions disagree")
        by_col: dict[int, list[tuple[int, int]]] = {}
        for r, c, v in self.entries:
            by_col.setdefault(c, []).append((r, v))
        acc: dict[tuple[int, int], int] = {}
        for rr, cc, vv in other.entries:
            for r, v in by_col.get(rr, ()):
                key = (r, cc)
                acc[key] = acc.get(key, 0) + v * vv
        return SparseIntMatrix.from_dict(self.rows, other.cols, acc)

    def permuted(self, row_perm: list[int] | None = None,
                 col_perm: list[int] | None = None) -> SparseIntMatrix:
        entries = []
        for r, c, v in self.entries:
            entries.append((row_perm[r] if row_perm else r,
                            col_perm[c] if col_perm else c, v))
        return SparseIntMatrix(self.rows, self.cols, tuple(sorted(entries)))


def rank_exact(M: SparseIntMatrix) -> int:
    """Rank of M over the rationals, by exact integer elimination."""
    rows: dict[int, dict[int, int]] = {}
    for r, c, v in M.entries:
        rows.setdefault(r, {})[c] = v
    col_rows: dict[int, set[int]] = {}
    for r, row in rows.items():
        for c in row:
            col_rows.setdefault(c, set()).add(r)
    rank = 0
    while rows:
        best_key = None
        best = (-1, -1)
        for r, row in rows.items():
            rfill = len(row) - 1
            for c, v in row.items():
                score = rfill * (len(col_rows[c]) - 1)
                key = (score, abs(v), r, c)
                if best_key is None or key < best_key:
                    best_key = key
                    best = (r, c)
        prow, pcol = best
        pivot_row = rows.pop(prow)
        pivot = pivot_row[pcol]
        for c in pivot_row:
            col_rows[c].discard(prow)
        rank += 1
        for r2 in sorted(col_rows[pcol]):
            row2 = rows[r2]
            factor = row2.pop(pcol)
            col_rows[pcol].discard(r2)
            for c in row2:
                row2[c] *= pivot
            for c, v in pivot_row.items():
                if c == pcol:
                    continue
                nv = row2.get(c, 0) - factor * v
                if nv:
                    row2[c] = nv
                    col_rows[c].add(r2)
                elif c in row2:
                    del row2[c]
                    col_rows[c].discard(r2)
            if not row2:
                del rows[r2]
                continue
            g = 0
            for v in row2.values():
                g = gcd(g, v)
                if g == 1:
                    break
            if g > 1:
                for c in row2:
                    row2[c] //= g
    return rank

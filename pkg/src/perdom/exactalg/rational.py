"""Exact linear algebra over the rationals.

rational_rank runs an integer Gaussian elimination (rows are cleared of
denominators, then kept gcd-normalized), so every arithmetic step is exact.
Rows live in int64 numpy arrays while their entries are provably small and
fall back to Python big integers otherwise; no floating point anywhere.

rank_mod_prime is the fast modular cross-check used by the test suite; it is
a consistency probe, never the primary answer.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ..errors import InternalCheckError

_SAFE = 2**62
_NP_LIMIT = 2**31


def _to_int_row(row):
    """Clear denominators and normalize by the gcd; returns list of ints."""
    den = 1
    for x in row:
        if isinstance(x, Fraction):
            den = den * x.denominator // math.gcd(den, x.denominator)
        elif not isinstance(x, (int, np.integer)):
            raise TypeError(f"matrix entries must be int or Fraction, got {type(x)}")
    ints = [int(x * den) if isinstance(x, Fraction) else int(x) * den for x in row]
    g = 0
    for x in ints:
        g = math.gcd(g, x)
    if g > 1:
        ints = [x // g for x in ints]
    return ints


def _row_max(row) -> int:
    if isinstance(row, np.ndarray):
        return int(np.max(np.abs(row))) if row.size else 0
    return max((abs(x) for x in row), default=0)


def _normalize(row):
    """gcd-reduce; return int64 array when entries fit, else a list."""
    if isinstance(row, np.ndarray):
        g = int(np.gcd.reduce(np.abs(row)))
        if g > 1:
            row = row // g
        return row
    g = 0
    for x in row:
        g = math.gcd(g, x)
    if g > 1:
        row = [x // g for x in row]
    if max((abs(x) for x in row), default=0) < _NP_LIMIT:
        return np.array(row, dtype=np.int64)
    return row


def _combine(piv, row, f, pivot_row):
    """row <- piv*row - f*pivot_row, exactly."""
    both_np = isinstance(row, np.ndarray) and isinstance(pivot_row, np.ndarray)
    if both_np:
        bound = abs(piv) * _row_max(row) + abs(f) * _row_max(pivot_row)
        if bound < _SAFE:
            return _normalize(piv * row - f * pivot_row)
    a = row.tolist() if isinstance(row, np.ndarray) else row
    b = pivot_row.tolist() if isinstance(pivot_row, np.ndarray) else pivot_row
    return _normalize([piv * x - f * y for x, y in zip(a, b)])


def rational_rank(rows) -> int:
    """Exact rank over Q of a matrix given as rows of ints or Fractions."""
    if isinstance(rows, np.ndarray):
        rows = rows.tolist()
    work = []
    for r in rows:
        ints = _to_int_row(r)
        if any(ints):
            work.append(_normalize(ints))
    if not work:
        return 0
    ncols = len(rows[0])
    rank = 0
    for c in range(ncols):
        cand = None
        for i in range(rank, len(work)):
            v = int(work[i][c])
            if v != 0 and (cand is None or abs(v) < abs(cand[1])):
                cand = (i, v)
                if abs(v) == 1:
                    break
        if cand is None:
            continue
        i, piv = cand
        work[rank], work[i] = work[i], work[rank]
        pivot_row = work[rank]
        for j in range(rank + 1, len(work)):
            f = int(work[j][c])
            if f:
                work[j] = _combine(piv, work[j], f, pivot_row)
        rank += 1
        if rank == len(work):
            break
    return rank


def rank_mod_prime(rows, p: int) -> int:
    """Rank over GF(p); a lower bound for the rational rank (cross-check)."""
    if p >= _NP_LIMIT:
        raise ValueError("prime too large for the int64 modular elimination")
    mat = [[int(x % p) for x in _to_int_row(r)] for r in rows]
    mat = [r for r in mat if any(r)]
    if not mat:
        return 0
    a = np.array(mat, dtype=np.int64)
    nrows, ncols = a.shape
    rank = 0
    for c in range(ncols):
        sel = None
        for i in range(rank, nrows):
            if a[i, c]:
                sel = i
                break
        if sel is None:
            continue
        a[[rank, sel]] = a[[sel, rank]]
        inv = pow(int(a[rank, c]), p - 2, p)
        a[rank] = (a[rank] * inv) % p
        col = a[rank + 1 :, c].copy()
        nz = np.nonzero(col)[0]
        if nz.size:
            a[rank + 1 + nz] = (a[rank + 1 + nz] - np.outer(col[nz], a[rank])) % p
        rank += 1
        if rank == nrows:
            break
    return rank


@dataclass(frozen=True)
class MatrixQ:
    """Immutable exact matrix (entries int or Fraction)."""

    rows: int
    cols: int
    entries: tuple[tuple, ...]

    @classmethod
    def from_rows(cls, entries, cols: int | None = None) -> "MatrixQ":
        entries = tuple(tuple(r) for r in entries)
        if entries:
            cols = len(entries[0])
            if any(len(r) != cols for r in entries):
                raise ValueError("ragged matrix")
        elif cols is None:
            raise ValueError("empty matrix needs an explicit column count")
        return cls(len(entries), cols, entries)

    def rank(self) -> int:
        return rational_rank(self.entries)

    def is_zero(self) -> bool:
        return all(all(x == 0 for x in r) for r in self.entries)


def mat_mul_exact(a: MatrixQ, b: MatrixQ) -> MatrixQ:
    """Exact product; uses int64 when the entry bound allows it."""
    if a.cols != b.rows:
        raise ValueError(f"shape mismatch: {a.rows}x{a.cols} @ {b.rows}x{b.cols}")
    if a.rows == 0 or b.cols == 0 or a.cols == 0:
        return MatrixQ(a.rows, b.cols, tuple(tuple([0] * b.cols) for _ in range(a.rows)))
    all_int = all(
        isinstance(x, (int, np.integer)) for r in a.entries for x in r
    ) and all(isinstance(x, (int, np.integer)) for r in b.entries for x in r)
    if all_int:
        ma = max((abs(x) for r in a.entries for x in r), default=0)
        mb = max((abs(x) for r in b.entries for x in r), default=0)
        if ma * mb * a.cols < _SAFE:
            prod = np.array(a.entries, dtype=np.int64) @ np.array(b.entries, dtype=np.int64)
            return MatrixQ(a.rows, b.cols, tuple(tuple(int(x) for x in r) for r in prod))
    bt = list(zip(*b.entries))
    out = tuple(
        tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a.entries
    )
    return MatrixQ(a.rows, b.cols, out)


@dataclass(frozen=True)
class ChainComplexQ:
    """A finite cochain complex of exact matrices.

    Term j has dimension dims[j] and sits in degree offset + j; maps[j]
    sends term j to term j+1 and has shape (dims[j+1], dims[j]) acting on
    column vectors.  Validation checks shapes and that consecutive maps
    compose to zero.
    """

    offset: int
    dims: tuple[int, ...]
    maps: tuple[MatrixQ, ...]

    def degree_range(self) -> range:
        return range(self.offset, self.offset + len(self.dims))

    def homology_dims(self) -> tuple[int, ...]:
        ranks = [m.rank() for m in self.maps]
        out = []
        for j, dim in enumerate(self.dims):
            below = ranks[j - 1] if j > 0 else 0
            above = ranks[j] if j < len(self.maps) else 0
            out.append(dim - below - above)
        return tuple(out)

    def euler_characteristic(self) -> int:
        sign = 1 if self.offset % 2 == 0 else -1
        out = 0
        for dim in self.dims:
            out += sign * dim
            sign = -sign
        return out


def chain_complex(offset: int, dims, maps) -> ChainComplexQ:
    """Build and validate a ChainComplexQ; raises on nonzero composition."""
    dims = tuple(dims)
    maps = tuple(maps)
    if len(maps) != max(len(dims) - 1, 0):
        raise ValueError("need exactly one map between consecutive terms")
    for j, m in enumerate(maps):
        if (m.rows, m.cols) != (dims[j + 1], dims[j]):
            raise ValueError(
                f"map {j} has shape {m.rows}x{m.cols}, expected {dims[j+1]}x{dims[j]}"
            )
    for j in range(len(maps) - 1):
        if not mat_mul_exact(maps[j + 1], maps[j]).is_zero():
            raise InternalCheckError(
                f"differentials {j} and {j+1} do not compose to zero"
            )
    return ChainComplexQ(offset, dims, maps)


def homology_dims(complex_: ChainComplexQ) -> tuple[int, ...]:
    return complex_.homology_dims()

"""Subspace calculus over GF(q): echelon forms, lattice operations, enumeration.

A subspace is stored by its reduced row echelon basis, which is a canonical
form: two subspaces are equal iff their stored bases are identical tuples.
That makes SubspaceGF hashable and lets enumeration produce each subspace
exactly once without deduplication.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product

from ..errors import ConfigError
from .gf import FieldSpec
from .qcount import q_binomial


def rref(field: FieldSpec, rows) -> tuple[tuple[tuple[int, ...], ...], tuple[int, ...]]:
    """Reduced row echelon form.  Returns (nonzero rows, pivot columns)."""
    mat = [list(r) for r in rows]
    nrows = len(mat)
    ncols = len(mat[0]) if mat else 0
    pivots = []
    r = 0
    for c in range(ncols):
        sel = next((i for i in range(r, nrows) if mat[i][c] != 0), None)
        if sel is None:
            continue
        mat[r], mat[sel] = mat[sel], mat[r]
        inv = field.inv(mat[r][c])
        mat[r] = [field.mul(inv, x) for x in mat[r]]
        for i in range(nrows):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return tuple(tuple(row) for row in mat[:r]), tuple(pivots)


def mat_mul(field: FieldSpec, a, b) -> tuple[tuple[int, ...], ...]:
    """Product of matrices with entries in `field` (rows of tuples)."""
    bt = list(zip(*b))
    out = []
    for row in a:
        new = []
        for col in bt:
            acc = 0
            for x, y in zip(row, col):
                if x and y:
                    acc = field.add(acc, field.mul(x, y))
            new.append(acc)
        out.append(tuple(new))
    return tuple(out)


def right_kernel(field: FieldSpec, rows, ncols: int) -> tuple[tuple[int, ...], ...]:
    """Basis of {x : rows . x = 0} (column-vector kernel)."""
    red, pivots = rref(field, rows) if rows else ((), ())
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for f in free:
        vec = [0] * ncols
        vec[f] = 1
        for r, c in enumerate(pivots):
            # solve pivot entries against the free column
            vec[c] = field.neg(red[r][f])
        basis.append(tuple(vec))
    return tuple(basis)


@dataclass(frozen=True)
class SubspaceGF:
    """A subspace of GF(q)^d in canonical (reduced echelon) form."""

    field: FieldSpec
    ambient_dim: int
    basis: tuple[tuple[int, ...], ...]

    @classmethod
    def from_rows(cls, field: FieldSpec, ambient_dim: int, rows) -> "SubspaceGF":
        red, _ = rref(field, rows)
        return cls(field, ambient_dim, red)

    @classmethod
    def zero(cls, field: FieldSpec, ambient_dim: int) -> "SubspaceGF":
        return cls(field, ambient_dim, ())

    @classmethod
    def full(cls, field: FieldSpec, ambient_dim: int) -> "SubspaceGF":
        rows = tuple(
            tuple(1 if i == j else 0 for j in range(ambient_dim))
            for i in range(ambient_dim)
        )
        return cls(field, ambient_dim, rows)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def _check_compatible(self, other: "SubspaceGF"):
        if self.field != other.field or self.ambient_dim != other.ambient_dim:
            raise ConfigError("subspace operation across different ambients")

    def contains_vector(self, v) -> bool:
        v = list(v)
        for row in self.basis:
            pc = next(i for i, x in enumerate(row) if x == 1)
            if v[pc]:
                f = v[pc]
                v = [self.field.sub(x, self.field.mul(f, y)) for x, y in zip(v, row)]
        return all(x == 0 for x in v)

    def is_subspace_of(self, other: "SubspaceGF") -> bool:
        self._check_compatible(other)
        return all(other.contains_vector(row) for row in self.basis)

    def sum_with(self, other: "SubspaceGF") -> "SubspaceGF":
        self._check_compatible(other)
        return SubspaceGF.from_rows(self.field, self.ambient_dim, self.basis + other.basis)

    def intersect(self, other: "SubspaceGF") -> "SubspaceGF":
        self._check_compatible(other)
        if not self.basis or not other.basis:
            return SubspaceGF.zero(self.field, self.ambient_dim)
        stacked = self.basis + other.basis
        # coefficient vectors (c, c') with c.A + c'.B = 0 give points of A meet B
        transposed = tuple(zip(*stacked))
        kern = right_kernel(self.field, transposed, len(stacked))
        a = self.dim
        vecs = []
        for coeffs in kern:
            vec = [0] * self.ambient_dim
            for ci, row in zip(coeffs[:a], self.basis):
                if ci:
                    vec = [
                        self.field.add(x, self.field.mul(ci, y))
                        for x, y in zip(vec, row)
                    ]
            vecs.append(tuple(vec))
        return SubspaceGF.from_rows(self.field, self.ambient_dim, vecs)

    def extend_scalars(self, target: FieldSpec) -> "SubspaceGF":
        """Reinterpret the echelon basis over an extension of the prime field."""
        if not target.is_extension_of(self.field):
            if target == self.field:
                return self
            raise ConfigError(
                f"{target!r} is not an extension of {self.field!r} supported here"
            )
        # prime-field elements are the constants 0..p-1 in the extension,
        # and a reduced echelon basis stays reduced echelon under relabelling
        return SubspaceGF(target, self.ambient_dim, self.basis)

    def sort_key(self):
        return (self.dim, self.basis)


def subspace_sum(a: SubspaceGF, b: SubspaceGF) -> SubspaceGF:
    return a.sum_with(b)


def subspace_intersect(a: SubspaceGF, b: SubspaceGF) -> SubspaceGF:
    return a.intersect(b)


def _rref_rows(field: FieldSpec, d: int, k: int):
    """Yield every reduced echelon basis of a k-subspace of field^d once."""
    if k == 0:
        yield ()
        return
    for pivots in combinations(range(d), k):
        free_pos = []
        pivot_set = set(pivots)
        for r, pc in enumerate(pivots):
            for c in range(pc + 1, d):
                if c not in pivot_set:
                    free_pos.append((r, c))
        for values in product(range(field.order), repeat=len(free_pos)):
            rows = [[0] * d for _ in range(k)]
            for r, pc in enumerate(pivots):
                rows[r][pc] = 1
            for (r, c), v in zip(free_pos, values):
                rows[r][c] = v
            yield tuple(tuple(r) for r in rows)


@lru_cache(maxsize=None)
def enumerate_subspaces(field: FieldSpec, d: int, dim: int) -> tuple[SubspaceGF, ...]:
    """All dim-dimensional subspaces of field^d, canonically ordered."""
    if not 0 <= dim <= d:
        raise ConfigError(f"dimension {dim} out of range for ambient {d}")
    out = tuple(
        sorted(
            (SubspaceGF(field, d, rows) for rows in _rref_rows(field, d, dim)),
            key=SubspaceGF.sort_key,
        )
    )
    assert len(out) == q_binomial(d, dim, field.order)
    return out


def _chains_within(field: FieldSpec, ambient_dim: int, span_rows, dims):
    """Chains of subspaces of the row space of span_rows, given in ambient
    coordinates, with prescribed increasing dims."""
    if not dims:
        yield ()
        return
    m = len(span_rows)
    k = dims[-1]
    for coord_rows in _rref_rows(field, m, k):
        amb_rows = mat_mul(field, coord_rows, span_rows)
        member = SubspaceGF.from_rows(field, ambient_dim, amb_rows)
        for prefix in _chains_within(field, ambient_dim, amb_rows, dims[:-1]):
            yield prefix + (member,)


def enumerate_chains(field: FieldSpec, d: int, dims: tuple[int, ...]):
    """All chains W_1 < W_2 < ... of subspaces of field^d with the given
    strictly increasing proper dimensions, each chain exactly once."""
    for dim in dims:
        if not 0 < dim < d:
            raise ConfigError(f"chain dimension {dim} must be proper in ambient {d}")
    if list(dims) != sorted(set(dims)):
        raise ConfigError("chain dimensions must be strictly increasing")
    full = SubspaceGF.full(field, d)
    yield from _chains_within(field, d, full.basis, tuple(dims))

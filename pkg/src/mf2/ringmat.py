"""Matrices over polynomial rings and over finite fields.

RingMatrix holds RingPoly entries (row-major, immutable by convention)
and supplies the block algebra the factorization layer is built on.
FieldMatrix holds serialized field values; its elimination routines run
on int bitsets when the field is GF(2) (one row = one int) and fall
back to generic table arithmetic for extensions.
"""

from __future__ import annotations

from typing import Callable, Optional, Sequence

from .gf2k import FieldElem, FieldSpec
from .ringpoly import ParseError, RingDescriptor, RingPoly, parse_poly

__all__ = [
    "RingMatrix",
    "FieldMatrix",
    "commutator",
    "block2",
    "blocks_of",
    "matrix_partial",
    "specialize",
    "parse_matrix",
    "rank",
    "kernel_basis",
    "solve",
]


class RingMatrix:
    __slots__ = ("ring", "rows", "cols", "entries")

    def __init__(self, ring: RingDescriptor, rows: int, cols: int, entries: Sequence[RingPoly]):
        if rows < 1 or cols < 1:
            raise ValueError("matrix dimensions must be positive")
        if len(entries) != rows * cols:
            raise ValueError("entry count does not match dimensions")
        for e in entries:
            if e.ring != ring:
                raise ValueError("ring mismatch in matrix entry")
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", tuple(entries))

    def __setattr__(self, name, value):
        raise AttributeError("RingMatrix is immutable")

    @classmethod
    def from_rows(cls, ring: RingDescriptor, rows: Sequence[Sequence[RingPoly]]) -> "RingMatrix":
        r = len(rows)
        c = len(rows[0])
        if any(len(row) != c for row in rows):
            raise ValueError("ragged rows")
        return cls(ring, r, c, [e for row in rows for e in row])

    @classmethod
    def zeros(cls, ring: RingDescriptor, rows: int, cols: int) -> "RingMatrix":
        z = RingPoly.zero(ring)
        return cls(ring, rows, cols, [z] * (rows * cols))

    @classmethod
    def identity(cls, ring: RingDescriptor, n: int) -> "RingMatrix":
        z, o = RingPoly.zero(ring), RingPoly.one(ring)
        return cls(ring, n, n, [o if i == j else z for i in range(n) for j in range(n)])

    def at(self, i: int, j: int) -> RingPoly:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[RingPoly, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def is_zero(self) -> bool:
        return all(e.is_zero() for e in self.entries)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RingMatrix)
            and self.ring == other.ring
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self) -> int:
        return hash((self.ring, self.rows, self.cols, self.entries))

    def __add__(self, other: "RingMatrix") -> "RingMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("dimension mismatch in matrix sum")
        return RingMatrix(
            self.ring, self.rows, self.cols,
            [a + b for a, b in zip(self.entries, other.entries)],
        )

    __sub__ = __add__

    def __mul__(self, other: "RingMatrix") -> "RingMatrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch in matrix product")
        out = []
        for i in range(self.rows):
            my_row = self.row(i)
            for j in range(other.cols):
                acc = RingPoly.zero(self.ring)
                for k in range(self.cols):
                    a = my_row[k]
                    b = other.at(k, j)
                    if a.is_zero() or b.is_zero():
                        continue
                    acc = acc + a * b
                out.append(acc)
        return RingMatrix(self.ring, self.rows, other.cols, out)

    def scale(self, c: RingPoly) -> "RingMatrix":
        return RingMatrix(self.ring, self.rows, self.cols, [c * e for e in self.entries])

    def map_entries(self, fn: Callable[[RingPoly], RingPoly]) -> "RingMatrix":
        return RingMatrix(self.ring, self.rows, self.cols, [fn(e) for e in self.entries])

    def transpose(self) -> "RingMatrix":
        return RingMatrix(
            self.ring, self.cols, self.rows,
            [self.at(i, j) for j in range(self.cols) for i in range(self.rows)],
        )

    def support_hull(self) -> list[tuple[int, int]]:
        """Per-variable (min, max) exponent over all entries; (0, 0) if all zero."""
        n = self.ring.nvars
        lo = [0] * n
        hi = [0] * n
        seen = False
        for e in self.entries:
            b = e.support_bounds()
            if b is None:
                continue
            if not seen:
                lo = [x for x, _ in b]
                hi = [x for _, x in b]
                seen = True
            else:
                lo = [min(a, x) for a, (x, _) in zip(lo, b)]
                hi = [max(a, x) for a, (_, x) in zip(hi, b)]
        return list(zip(lo, hi))

    def __str__(self) -> str:
        return "; ".join(
            ", ".join(str(self.at(i, j)) for j in range(self.cols))
            for i in range(self.rows)
        )

    def __repr__(self) -> str:
        return f"RingMatrix({self})"


def commutator(a: RingMatrix, b: RingMatrix) -> RingMatrix:
    """[a, b] = ab + ba, which in characteristic 2 is also the anticommutator."""
    return a * b + b * a


def block2(a: RingMatrix, b: RingMatrix, c: RingMatrix, d: RingMatrix) -> RingMatrix:
    """Assemble [[a, b], [c, d]] from equally sized square blocks."""
    n = a.rows
    for m in (a, b, c, d):
        if m.rows != n or m.cols != n:
            raise ValueError("block2 needs four square blocks of equal size")
    rows = []
    for i in range(n):
        rows.append(list(a.row(i)) + list(b.row(i)))
    for i in range(n):
        rows.append(list(c.row(i)) + list(d.row(i)))
    return RingMatrix.from_rows(a.ring, rows)


def blocks_of(m: RingMatrix) -> tuple[RingMatrix, RingMatrix, RingMatrix, RingMatrix]:
    """Split an even-sized square matrix into its four half-size blocks."""
    if not m.is_square() or m.rows % 2:
        raise ValueError("blocks_of needs an even square matrix")
    n = m.rows // 2

    def block(r0: int, c0: int) -> RingMatrix:
        return RingMatrix(
            m.ring, n, n,
            [m.at(r0 + i, c0 + j) for i in range(n) for j in range(n)],
        )

    return block(0, 0), block(0, n), block(n, 0), block(n, n)


def matrix_partial(m: RingMatrix, var: int | str) -> RingMatrix:
    return m.map_entries(lambda e: e.partial(var))


def specialize(m: RingMatrix, point: Sequence[FieldElem]) -> "FieldMatrix":
    """Evaluate every entry at a point (over the ring's field or an extension)."""
    if not point:
        raise ValueError("empty point")
    spec = point[0].spec
    vals = [m.at(i, j).evaluate(point).value for i in range(m.rows) for j in range(m.cols)]
    return FieldMatrix(spec, m.rows, m.cols, vals)


def parse_matrix(text: str, ring: RingDescriptor, rows: Optional[int] = None,
                 cols: Optional[int] = None, line_offset: int = 0) -> RingMatrix:
    """Rows separated by ';' (or newlines), entries by ','."""
    normalized = text.replace("\n", ";")
    row_texts = [r for r in normalized.split(";") if r.strip()]
    if not row_texts:
        raise ParseError("empty matrix", 1 + line_offset, 1)
    entries = []
    ncols = None
    for r_i, row_text in enumerate(row_texts):
        cells = row_text.split(",")
        if ncols is None:
            ncols = len(cells)
        elif len(cells) != ncols:
            raise ParseError(
                f"row {r_i + 1} has {len(cells)} entries, expected {ncols}",
                1 + line_offset, 1,
            )
        for cell in cells:
            entries.append(parse_poly(cell, ring, line_offset))
    nrows = len(row_texts)
    if rows is not None and (nrows, ncols) != (rows, cols):
        raise ParseError(
            f"matrix is {nrows}x{ncols}, expected {rows}x{cols}", 1 + line_offset, 1
        )
    return RingMatrix(ring, nrows, ncols, entries)


# -- field matrices -------------------------------------------------------------


class FieldMatrix:
    """Dense matrix of serialized GF(2^k) values, row-major."""

    __slots__ = ("spec", "rows", "cols", "entries")

    def __init__(self, spec: FieldSpec, rows: int, cols: int, entries: Sequence[int]):
        if len(entries) != rows * cols:
            raise ValueError("entry count does not match dimensions")
        for v in entries:
            spec.validate(v)
        object.__setattr__(self, "spec", spec)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", tuple(entries))

    def __setattr__(self, name, value):
        raise AttributeError("FieldMatrix is immutable")

    @classmethod
    def identity(cls, spec: FieldSpec, n: int) -> "FieldMatrix":
        return cls(spec, n, n, [1 if i == j else 0 for i in range(n) for j in range(n)])

    def at(self, i: int, j: int) -> int:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FieldMatrix)
            and (self.spec, self.rows, self.cols, self.entries)
            == (other.spec, other.rows, other.cols, other.entries)
        )

    def __hash__(self) -> int:
        return hash((self.spec, self.rows, self.cols, self.entries))

    def __add__(self, other: "FieldMatrix") -> "FieldMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("dimension mismatch")
        return FieldMatrix(
            self.spec, self.rows, self.cols,
            [a ^ b for a, b in zip(self.entries, other.entries)],
        )

    def __mul__(self, other: "FieldMatrix") -> "FieldMatrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        mul = self.spec.mul
        out = []
        for i in range(self.rows):
            r = self.row(i)
            for j in range(other.cols):
                acc = 0
                for k in range(self.cols):
                    if r[k]:
                        acc ^= mul(r[k], other.at(k, j))
                out.append(acc)
        return FieldMatrix(self.spec, self.rows, other.cols, out)

    def apply(self, vec: Sequence[int]) -> list[int]:
        if len(vec) != self.cols:
            raise ValueError("dimension mismatch")
        mul = self.spec.mul
        out = []
        for i in range(self.rows):
            r = self.row(i)
            acc = 0
            for k in range(self.cols):
                if r[k] and vec[k]:
                    acc ^= mul(r[k], vec[k])
            out.append(acc)
        return out

    def __str__(self) -> str:
        return "; ".join(
            ", ".join(str(self.at(i, j)) for j in range(self.cols))
            for i in range(self.rows)
        )


# -- elimination ---------------------------------------------------------------
#
# GF(2) rows are packed into ints, bit j = column j; extension fields use
# plain lists.  Both paths do full forward elimination with column pivots
# in ascending order, which keeps every derived convention deterministic.


def _pack_rows(m: FieldMatrix) -> list[int]:
    out = []
    for i in range(m.rows):
        acc = 0
        for j, v in enumerate(m.row(i)):
            if v:
                acc |= 1 << j
        out.append(acc)
    return out


def gf2_rank(rows: list[int]) -> int:
    """Rank of packed GF(2) row vectors (destroys nothing; copies internally)."""
    pivots: dict[int, int] = {}
    r = 0
    for row in rows:
        while row:
            low = (row & -row).bit_length() - 1
            if low in pivots:
                row ^= pivots[low]
            else:
                pivots[low] = row
                r += 1
                break
    return r


def gf2_solve_combination(rows: list[int], target: int, width: int) -> Optional[list[int]]:
    """Coefficients c with xor of c_i * rows_i == target, or None.

    Free coefficients are zero; among reduced echelon choices this picks the
    combination produced by eliminating in ascending column order.
    """
    pivots: dict[int, tuple[int, int]] = {}  # low bit -> (row, combination bits)
    for idx, row in enumerate(rows):
        comb = 1 << idx
        while row:
            low = (row & -row).bit_length() - 1
            if low in pivots:
                prow, pcomb = pivots[low]
                row ^= prow
                comb ^= pcomb
            else:
                pivots[low] = (row, comb)
                break
    comb = 0
    while target:
        low = (target & -target).bit_length() - 1
        if low not in pivots:
            return None
        prow, pcomb = pivots[low]
        target ^= prow
        comb ^= pcomb
    return [(comb >> i) & 1 for i in range(width)]


def _generic_echelon(rows: list[list[int]], spec: FieldSpec) -> tuple[list[list[int]], list[int]]:
    """Row echelon form (in place on a copy); returns (rows, pivot column list)."""
    mul, inv = spec.mul, spec.inv
    rows = [list(r) for r in rows]
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    pivot_cols = []
    pr = 0
    for c in range(ncols):
        sel = None
        for i in range(pr, nrows):
            if rows[i][c]:
                sel = i
                break
        if sel is None:
            continue
        rows[pr], rows[sel] = rows[sel], rows[pr]
        piv = rows[pr]
        s = inv(piv[c])
        if s != 1:
            rows[pr] = piv = [mul(s, v) for v in piv]
        for i in range(nrows):
            if i != pr and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a ^ mul(f, b) for a, b in zip(rows[i], piv)]
        pivot_cols.append(c)
        pr += 1
        if pr == nrows:
            break
    return rows, pivot_cols


def rank(m: FieldMatrix) -> int:
    if m.spec.k == 1:
        return gf2_rank(_pack_rows(m))
    _, pivots = _generic_echelon([list(m.row(i)) for i in range(m.rows)], m.spec)
    return len(pivots)


def kernel_basis(m: FieldMatrix) -> list[list[int]]:
    """Basis of {x : m x = 0}; one vector per free column, ascending."""
    spec = m.spec
    rows = [list(m.row(i)) for i in range(m.rows)]
    red, pivot_cols = _generic_echelon(rows, spec)
    pivot_of_col = {c: i for i, c in enumerate(pivot_cols)}
    free_cols = [c for c in range(m.cols) if c not in pivot_of_col]
    basis = []
    for fc in free_cols:
        vec = [0] * m.cols
        vec[fc] = 1
        for c, i in pivot_of_col.items():
            vec[c] = red[i][fc]  # reduced echelon: pivot rows are unit there
        basis.append(vec)
    return basis


def solve(m: FieldMatrix, b: Sequence[int]) -> Optional[list[int]]:
    """One solution of m x = b with free variables set to zero, or None."""
    if len(b) != m.rows:
        raise ValueError("dimension mismatch")
    spec = m.spec
    aug = [list(m.row(i)) + [b[i]] for i in range(m.rows)]
    red, pivot_cols = _generic_echelon(aug, spec)
    x = [0] * m.cols
    for i, c in enumerate(pivot_cols):
        if c == m.cols:  # pivot in the augmented column: inconsistent
            return None
        x[c] = red[i][m.cols]
    # rows below the pivots must have zero tail
    for i in range(len(pivot_cols), m.rows):
        if red[i][m.cols]:
            return None
    return x

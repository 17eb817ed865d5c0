"""Finite-window cohomology of morphism complexes.

Hom(X, Y) between factorizations of one potential carries the
differential d(f) = Q_Y f + f Q_X with d^2 = 0, but it is infinite
dimensional over the ground field.  Ranks are therefore taken on
finite monomial windows: B_d spans the matrices whose entry exponents
lie in [-d, d] for Laurent variables and [0, d] otherwise.  The window
diagnostic

    h_d = dim ker(d restricted to B_d) - dim(d(B_{d+1}) ∩ span B_d)

counts closed morphisms inside the window minus the coboundaries that
land inside it with witnesses allowed one step beyond.  Coboundaries
are closed (d^2 = 0), so the subtraction is an honest subquotient
dimension; the sequence is reported raw, with no monotonicity claim,
and its stable value is a diagnostic for (not a proof of) the actual
cohomology dimension.  Exact answers come from the witness solver and
the point certification below.

Specializing at a field point collapses d to a finite operator; local
reports carry kernel/image dimensions and deterministic coordinates of
chosen classes in the local cohomology.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

from .gf2k import FieldElem, FieldSpec
from .mfcore import HomotopyWitness, Morphism, UngradedMF
from .ringmat import (
    FieldMatrix,
    RingMatrix,
    _generic_echelon,
    gf2_rank,
    gf2_solve_combination,
    kernel_basis,
    rank,
    solve,
    specialize,
)
from .ringpoly import RingDescriptor, RingPoly

__all__ = [
    "Window",
    "delta_as_field_matrix",
    "cohomology_dims",
    "solve_exactness",
    "find_critical_points",
    "certify_at_point",
    "LocalCohomologyReport",
]


@dataclass(frozen=True)
class Window:
    """Per-variable exponent bounds (lo, hi), inclusive; lo > hi is empty."""

    ring: RingDescriptor
    bounds: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if len(self.bounds) != self.ring.nvars:
            raise ValueError("window needs one bound pair per variable")
        for (lo, hi), laur in zip(self.bounds, self.ring.laurent):
            if not laur and lo < 0:
                raise ValueError("negative window bound on non-Laurent variable")

    @classmethod
    def symmetric(cls, ring: RingDescriptor, d: int) -> "Window":
        """[-d, d] per Laurent variable, [0, d] otherwise."""
        return cls(ring, tuple((-d, d) if laur else (0, d) for laur in ring.laurent))

    @property
    def size(self) -> int:
        n = 1
        for lo, hi in self.bounds:
            n *= max(hi - lo + 1, 0)
        return n

    def monomials(self) -> list[tuple[int, ...]]:
        return list(itertools.product(*[range(lo, hi + 1) for lo, hi in self.bounds]))

    def contains(self, exps: Sequence[int]) -> bool:
        return all(lo <= e <= hi for e, (lo, hi) in zip(exps, self.bounds))

    def expanded(self, hull: Sequence[tuple[int, int]]) -> "Window":
        """Grow the window so that shifting by any hull exponent stays inside."""
        bs = []
        for (lo, hi), (hlo, hhi), laur in zip(self.bounds, hull, self.ring.laurent):
            nlo = lo + min(hlo, 0)
            nhi = hi + max(hhi, 0)
            if not laur:
                nlo = max(nlo, 0)
            bs.append((nlo, nhi))
        return Window(self.ring, tuple(bs))

    def union(self, other: "Window") -> "Window":
        if other.ring != self.ring:
            raise ValueError("ring mismatch between windows")
        return Window(self.ring, tuple(
            (min(a, c), max(b, d)) for (a, b), (c, d) in zip(self.bounds, other.bounds)
        ))


def _check_pair(src: UngradedMF, tgt: UngradedMF) -> None:
    if src.ring != tgt.ring:
        raise ValueError("ring mismatch between source and target")
    if src.w != tgt.w:
        raise ValueError("potential mismatch: hom-sets need a common potential")


def _combined_hull(a: RingMatrix, b: RingMatrix) -> list[tuple[int, int]]:
    ha = a.support_hull()
    hb = b.support_hull()
    return [(min(x, u), max(y, v)) for (x, y), (u, v) in zip(ha, hb)]


def _hom_basis(src: UngradedMF, tgt: UngradedMF, win: Window):
    mons = win.monomials()
    return [
        (i, j, e)
        for i in range(tgt.size)
        for j in range(src.size)
        for e in mons
    ]


def _delta_columns(src: UngradedMF, tgt: UngradedMF, basis_in, out_index) -> list[dict[int, int]]:
    """Sparse columns of d over the hom bases; raises if an image term
    falls outside the output window."""
    qs, qt = src.q, tgt.q
    cols = []
    for i, j, e in basis_in:
        acc: dict[tuple[int, int, tuple[int, ...]], int] = {}
        for r in range(tgt.size):
            for s_exp, c in qt.at(r, i).terms.items():
                key = (r, j, tuple(a + b for a, b in zip(e, s_exp)))
                prev = acc.get(key, 0) ^ c
                if prev:
                    acc[key] = prev
                else:
                    acc.pop(key, None)
        for c_j in range(src.size):
            for s_exp, c in qs.at(j, c_j).terms.items():
                key = (i, c_j, tuple(a + b for a, b in zip(e, s_exp)))
                prev = acc.get(key, 0) ^ c
                if prev:
                    acc[key] = prev
                else:
                    acc.pop(key, None)
        col: dict[int, int] = {}
        for key, coeff in acc.items():
            idx = out_index.get(key)
            if idx is None:
                raise ValueError(
                    "window overflow: differential image leaves the output window"
                )
            col[idx] = coeff
        cols.append(col)
    return cols


def delta_as_field_matrix(src: UngradedMF, tgt: UngradedMF,
                          win_in: Window, win_out: Window) -> FieldMatrix:
    """Dense matrix of d: Hom(win_in) -> Hom(win_out) over the ground field.

    Columns follow the (row, col, monomial) basis of win_in, rows the same
    basis of win_out; meant for small windows (the rank pipeline keeps
    columns sparse instead).
    """
    _check_pair(src, tgt)
    basis_in = _hom_basis(src, tgt, win_in)
    basis_out = _hom_basis(src, tgt, win_out)
    out_index = {key: n for n, key in enumerate(basis_out)}
    cols = _delta_columns(src, tgt, basis_in, out_index)
    nrows, ncols = len(basis_out), len(basis_in)
    entries = [0] * (nrows * ncols)
    for c_idx, col in enumerate(cols):
        for r_idx, v in col.items():
            entries[r_idx * ncols + c_idx] = v
    return FieldMatrix(src.ring.field, nrows, ncols, entries)


def _window_quotient_dims(src: UngradedMF, tgt: UngradedMF, d: int,
                          hull) -> tuple[int, int]:
    """(dim ker(d | B_d), dim(d(B_{d+1}) ∩ span B_d)) for the hom complex.

    Output coordinates are ordered outside-B_d first; with lowest-index
    pivoting, image vectors whose pivot falls in the inside block have no
    outside component, so counting those pivots measures the intersection.
    """
    ring = src.ring
    win_d = Window.symmetric(ring, d)
    dom = Window.symmetric(ring, d + 1)
    basis_dom = _hom_basis(src, tgt, dom)
    basis_out = _hom_basis(src, tgt, dom.expanded(hull))
    outside = [k for k in basis_out if not win_d.contains(k[2])]
    inside = [k for k in basis_out if win_d.contains(k[2])]
    out_index = {k: n for n, k in enumerate(outside + inside)}
    split = len(outside)
    cols = _delta_columns(src, tgt, basis_dom, out_index)
    spec = ring.field
    n_d = tgt.size * src.size * win_d.size
    if spec.k == 1:
        packed = [sum(1 << idx for idx in col) for col in cols]
        sub = [p for p, (_, _, e) in zip(packed, basis_dom) if win_d.contains(e)]
        kernel_dim = n_d - gf2_rank(sub)
        pivots: dict[int, int] = {}
        inner = 0
        for row in packed:
            while row:
                low = (row & -row).bit_length() - 1
                if low in pivots:
                    row ^= pivots[low]
                else:
                    pivots[low] = row
                    if low >= split:
                        inner += 1
                    break
        return kernel_dim, inner
    width = len(out_index)

    def as_rows(columns):
        rows = []
        for col in columns:
            row = [0] * width
            for idx, v in col.items():
                row[idx] = v
            rows.append(row)
        return rows

    sub = [c for c, (_, _, e) in zip(cols, basis_dom) if win_d.contains(e)]
    _, sub_pivots = _generic_echelon(as_rows(sub), spec) if sub else ([], [])
    kernel_dim = n_d - len(sub_pivots)
    _, pivots_cols = _generic_echelon(as_rows(cols), spec) if cols else ([], [])
    inner = sum(1 for c in pivots_cols if c >= split)
    return kernel_dim, inner


def cohomology_dims(src: UngradedMF, tgt: UngradedMF, d_max: int) -> dict[int, int]:
    """{d: h_d} for d = 1..d_max over the hom complex Hom(src, tgt)."""
    _check_pair(src, tgt)
    if d_max < 1:
        raise ValueError("d_max must be at least 1")
    hull = _combined_hull(src.q, tgt.q)
    dims = {}
    for d in range(1, d_max + 1):
        kernel_dim, boundary_dim = _window_quotient_dims(src, tgt, d, hull)
        dims[d] = kernel_dim - boundary_dim
    return dims


def solve_exactness(f: Morphism, window: Window) -> Optional[HomotopyWitness]:
    """Search the window for g with d(g) = f; the witness re-verifies
    symbolically, None means no witness exists inside this window."""
    src, tgt = f.source, f.target
    if window.ring != src.ring:
        raise ValueError("window ring does not match the morphism")
    hull = _combined_hull(src.q, tgt.q)
    win_out = window.expanded(hull)
    fh = f.f.support_hull()
    win_out = win_out.union(Window(src.ring, tuple(fh)))
    basis_in = _hom_basis(src, tgt, window)
    basis_out = _hom_basis(src, tgt, win_out)
    out_index = {key: n for n, key in enumerate(basis_out)}
    cols = _delta_columns(src, tgt, basis_in, out_index)
    spec = src.ring.field
    if spec.k == 1:
        packed = [sum(1 << idx for idx in col) for col in cols]
        target = 0
        for i in range(tgt.size):
            for j in range(src.size):
                for e, c in f.f.at(i, j).terms.items():
                    target |= 1 << out_index[(i, j, e)]
        coeffs = gf2_solve_combination(packed, target, len(cols))
    else:
        nrows, ncols = len(basis_out), len(basis_in)
        entries = [0] * (nrows * ncols)
        for c_idx, col in enumerate(cols):
            for r_idx, v in col.items():
                entries[r_idx * ncols + c_idx] = v
        m = FieldMatrix(spec, nrows, ncols, entries)
        tvec = [0] * nrows
        for i in range(tgt.size):
            for j in range(src.size):
                for e, c in f.f.at(i, j).terms.items():
                    tvec[out_index[(i, j, e)]] = c
        coeffs = solve(m, tvec)
    if coeffs is None:
        return None
    gterms: dict[tuple[int, int], dict[tuple[int, ...], int]] = {}
    for idx, c in enumerate(coeffs):
        if not c:
            continue
        i, j, e = basis_in[idx]
        cell = gterms.setdefault((i, j), {})
        prev = cell.get(e, 0) ^ c
        if prev:
            cell[e] = prev
        else:
            cell.pop(e, None)
    ring = src.ring
    g_entries = [
        RingPoly(ring, gterms.get((i, j), {}))
        for i in range(tgt.size)
        for j in range(src.size)
    ]
    g = RingMatrix(ring, tgt.size, src.size, g_entries)
    return HomotopyWitness(f, g)


# -- local analysis at field points ------------------------------------------------


def find_critical_points(w: RingPoly, spec: FieldSpec) -> list[tuple[FieldElem, ...]]:
    """All points with every partial derivative of w vanishing; Laurent
    variables range over nonzero field elements only."""
    ring = w.ring
    partials = [w.partial(i) for i in range(ring.nvars)]
    axes = []
    for laur in ring.laurent:
        elems = list(spec.elements())
        axes.append([e for e in elems if e.value] if laur else elems)
    out = []
    for point in itertools.product(*axes):
        if all(not p.evaluate(point).value for p in partials):
            out.append(point)
    return out


def _reduce_vec(vec: list[int], ech: list[tuple[int, list[int]]], spec: FieldSpec) -> list[int]:
    mul = spec.mul
    vec = list(vec)
    for lead, row in ech:
        c = vec[lead]
        if c:
            vec = [a ^ mul(c, b) for a, b in zip(vec, row)]
    return vec


def _ech_insert(vec: list[int], ech: list[tuple[int, list[int]]], spec: FieldSpec) -> bool:
    """Reduce vec against the echelon and insert the remainder if nonzero.

    The echelon is kept fully reduced (each row is zero at every other
    row's leading index, leading coefficients are 1, rows sorted by
    leading index), so a single reduction pass yields the canonical
    representative modulo the row space."""
    red = _reduce_vec(vec, ech, spec)
    lead = next((i for i, v in enumerate(red) if v), None)
    if lead is None:
        return False
    mul = spec.mul
    s = spec.inv(red[lead])
    newrow = [mul(s, v) for v in red]
    for k, (l2, row2) in enumerate(ech):
        c = row2[lead]
        if c:
            ech[k] = (l2, [a ^ mul(c, b) for a, b in zip(row2, newrow)])
    ech.append((lead, newrow))
    ech.sort(key=lambda lr: lr[0])
    return True


@dataclass(frozen=True)
class LocalCohomologyReport:
    """Kernel/image data of the specialized differential at one point,
    with coordinates of the requested classes in a fixed basis of the
    local cohomology (all-zero coordinates = locally exact)."""

    point: tuple[FieldElem, ...]
    kernel_dim: int
    image_dim: int
    class_coordinates: tuple[tuple[int, ...], ...]

    @property
    def local_dim(self) -> int:
        return self.kernel_dim - self.image_dim

    def is_exact(self, idx: int) -> bool:
        return not any(self.class_coordinates[idx])


def certify_at_point(src: UngradedMF, tgt: UngradedMF,
                     point: Sequence[FieldElem],
                     classes: Sequence[RingMatrix] = ()) -> LocalCohomologyReport:
    """Specialize the hom differential at a point and locate classes in
    the local cohomology ker/im."""
    _check_pair(src, tgt)
    qs = specialize(src.q, point)
    qt = specialize(tgt.q, point)
    spec = qs.spec
    m, n = tgt.size, src.size
    ncols = m * n
    entries = [0] * (ncols * ncols)
    # column (r, c) is d(e_rc) = qt e_rc + e_rc qs, stored row-major
    for r in range(m):
        for c in range(n):
            col = r * n + c
            for i in range(m):
                v = qt.at(i, r)
                if v:
                    row = i * n + c
                    entries[row * ncols + col] ^= v
            for j in range(n):
                v = qs.at(c, j)
                if v:
                    row = r * n + j
                    entries[row * ncols + col] ^= v
    dmat = FieldMatrix(spec, ncols, ncols, entries)
    image_dim = rank(dmat)
    kernel_dim = ncols - image_dim
    im_ech: list[tuple[int, list[int]]] = []
    for col in range(ncols):
        _ech_insert([dmat.at(r, col) for r in range(ncols)], im_ech, spec)
    ext_ech: list[tuple[int, list[int]]] = []
    for v in kernel_basis(dmat):
        _ech_insert(_reduce_vec(v, im_ech, spec), ext_ech, spec)
    coords = []
    mul = spec.mul
    for cls in classes:
        fp = specialize(cls, point)
        if (fp.rows, fp.cols) != (m, n):
            raise ValueError("class shape does not match the hom space")
        vec = list(fp.entries)
        if any(dmat.apply(vec)):
            raise ValueError("class is not closed at the point")
        red = _reduce_vec(vec, im_ech, spec)
        cc = []
        for lead, row in ext_ech:
            c = red[lead]
            cc.append(c)
            if c:
                red = [a ^ mul(c, b) for a, b in zip(red, row)]
        if any(red):
            raise ValueError("class escapes the local kernel decomposition")
        coords.append(tuple(cc))
    return LocalCohomologyReport(tuple(point), kernel_dim, image_dim, tuple(coords))

"""Window cohomology tests.

Analytic oracles: for the 1x1 factorization [x+y] of x^2+y^2 the
differential vanishes identically and nothing is exact, so
h_d = dim B_d = (d+1)^2.  For Q = [[x, y], [y, x]] the differential is
f -> y*[[b+c, a+d], [a+d, b+c]]: closed means a=d and b=c (kernel
dimension 2(d+1)^2), and a coboundary y*u lands inside B_d exactly
when u has y-degree at most d-1 (2d(d+1) of those), so
h_d = 2(d+1)^2 - 2d(d+1) = 2d+2.  The 4x4 Laurent factorization below
has three-dimensional stable cohomology.
"""

from __future__ import annotations

import random

import pytest

from mf2.cohomwin import (
    Window,
    certify_at_point,
    cohomology_dims,
    delta_as_field_matrix,
    find_critical_points,
    solve_exactness,
)
from mf2.gf2k import GF2, default_spec
from mf2.mfcore import Morphism, UngradedMF, contract_at_noncritical
from mf2.ringmat import RingMatrix, parse_matrix, rank
from mf2.ringpoly import RingDescriptor, RingPoly, parse_poly

P2 = RingDescriptor(GF2, ("x", "y"), (False, False))
L2 = RingDescriptor(GF2, ("x", "y"), (True, True))

RP2_TEXT = (
    "0, 1, 1, x^-1*y^-1; "
    "y, 0, x^-1, 1; "
    "x, y^-1, 0, 1; "
    "1, x, y, 0"
)


def scalar_line():
    w = parse_poly("x^2 + y^2", P2)
    q = parse_matrix("x + y", P2)
    return UngradedMF(w, q)


def a1():
    w = parse_poly("x^2 + y^2", P2)
    q = parse_matrix("x, y; y, x", P2)
    return UngradedMF(w, q)


def rp2():
    w = parse_poly("x + y + x^-1*y^-1", L2)
    return UngradedMF(w, parse_matrix(RP2_TEXT, L2))


def test_window_basics():
    win = Window.symmetric(L2, 2)
    assert win.bounds == ((-2, 2), (-2, 2))
    assert win.size == 25
    assert len(win.monomials()) == 25
    assert win.contains((-2, 1)) and not win.contains((3, 0))
    pwin = Window.symmetric(P2, 2)
    assert pwin.bounds == ((0, 2), (0, 2))
    assert pwin.size == 9


def test_window_expansion_clamps_polynomial_variables():
    pwin = Window.symmetric(P2, 1)
    grown = pwin.expanded([(-1, 1), (0, 2)])
    assert grown.bounds == ((0, 2), (0, 3))
    lwin = Window.symmetric(L2, 1)
    assert lwin.expanded([(-1, 1), (-1, 1)]).bounds == ((-2, 2), (-2, 2))


def test_empty_window():
    win = Window.symmetric(P2, -1)
    assert win.size == 0
    assert win.monomials() == []


def test_window_rejects_negative_bound_on_polynomial_variable():
    with pytest.raises(ValueError, match="non-Laurent"):
        Window(P2, ((-1, 1), (0, 1)))


def test_delta_matrix_small_oracle():
    x = a1()
    win = Window.symmetric(P2, 0)
    out = win.expanded([(0, 1), (0, 1)])
    m = delta_as_field_matrix(x, x, win, out)
    # columns: unit matrices e_00, e_01, e_10, e_11 at the constant monomial;
    # d(e_00) = y*(e_01 + e_10), so each column has exactly two entries
    assert m.cols == 4
    assert m.rows == 4 * out.size
    for c in range(4):
        assert sum(1 for r in range(m.rows) if m.at(r, c)) == 2
    assert rank(m) == 2


def test_window_overflow_raises():
    x = a1()
    win = Window.symmetric(P2, 1)
    with pytest.raises(ValueError, match="window overflow"):
        delta_as_field_matrix(x, x, win, win)


def test_cohomology_scalar_line():
    x = scalar_line()
    assert cohomology_dims(x, x, 3) == {d: (d + 1) ** 2 for d in (1, 2, 3)}


def test_cohomology_a1():
    x = a1()
    assert cohomology_dims(x, x, 3) == {d: 2 * d + 2 for d in (1, 2, 3)}


def test_cohomology_rp2_stabilizes_at_three():
    x = rp2()
    dims = cohomology_dims(x, x, 3)
    assert dims[2] == 3
    assert dims[3] == 3


def test_solve_exactness_round_trip():
    x = a1()
    rng = random.Random(99)
    win = Window.symmetric(P2, 2)
    mons = win.monomials()
    for _ in range(5):
        entries = []
        for _ in range(4):
            terms = {}
            for e in rng.sample(mons, 3):
                terms[e] = 1
            entries.append(RingPoly(P2, terms))
        g = RingMatrix(P2, 2, 2, entries)
        f = Morphism(x, x, x.q * g + g * x.q)
        wit = solve_exactness(f, win)
        assert wit is not None
        assert x.q * wit.g + wit.g * x.q == f.f


def test_solve_exactness_rejects_nonexact():
    x = a1()
    ident = Morphism(x, x, RingMatrix.identity(P2, 2))
    assert ident.is_closed()
    assert solve_exactness(ident, Window.symmetric(P2, 3)) is None


def test_solve_exactness_matches_closed_form_witness():
    x = rp2()
    dw = x.w.partial("x")
    f = Morphism(x, x, RingMatrix.identity(L2, 4).scale(dw))
    wit = solve_exactness(f, Window.symmetric(L2, 2))
    assert wit is not None
    assert x.q * wit.g + wit.g * x.q == f.f


def test_critical_points():
    w = parse_poly("x + y + x^-1*y^-1", L2)
    over2 = find_critical_points(w, GF2)
    assert len(over2) == 1
    gf4 = default_spec(2)
    pts = find_critical_points(w, gf4)
    assert len(pts) == 3
    for p in pts:
        assert p[0] == p[1]
        assert (p[0] * p[0] * p[0]).value == 1


def test_certify_at_critical_point():
    x = rp2()
    ident = RingMatrix.identity(L2, 4)
    exact = x.q * ident + ident * x.q  # zero, stand-in for an exact class
    one = GF2.one()
    rep = certify_at_point(x, x, (one, one), [ident, exact])
    assert rep.local_dim == rep.kernel_dim - rep.image_dim
    assert rep.local_dim > 0
    assert not rep.is_exact(0)  # identity survives at a critical point
    assert rep.is_exact(1)


def test_certify_at_noncritical_point_is_trivial():
    x = rp2()
    gf4 = default_spec(2)
    crit = set(find_critical_points(x.w, gf4))
    noncrit = next(
        p for p in ((gf4.element(a), gf4.element(b))
                    for a in range(1, 4) for b in range(1, 4))
        if p not in crit
    )
    rep = certify_at_point(x, x, noncrit, [RingMatrix.identity(L2, 4)])
    assert rep.local_dim == 0
    assert rep.is_exact(0)
    # cross-check with the closed-form contraction
    var = "x" if x.w.partial("x").evaluate(noncrit) else "y"
    contract_at_noncritical(x, noncrit, var)


def test_certify_scalar_classes_scale_coordinates():
    x = rp2()
    gf4 = default_spec(2)
    xv = RingPoly.variable(L2, "x")
    classes = [
        RingMatrix.identity(L2, 4),
        RingMatrix.identity(L2, 4).scale(xv),
        RingMatrix.identity(L2, 4).scale(xv * xv),
    ]
    for p in find_critical_points(x.w, gf4):
        rep = certify_at_point(x, x, p, classes)
        a = p[0].value
        base = rep.class_coordinates[0]
        got1 = rep.class_coordinates[1]
        got2 = rep.class_coordinates[2]
        assert got1 == tuple(gf4.mul(a, c) for c in base)
        assert got2 == tuple(gf4.mul(gf4.mul(a, a), c) for c in base)
        assert not rep.is_exact(0)


def test_certify_rejects_nonclosed_class():
    x = a1()
    bad = RingMatrix(P2, 2, 2, [
        RingPoly.one(P2), RingPoly.zero(P2),
        RingPoly.zero(P2), RingPoly.zero(P2),
    ])
    one = GF2.one()
    with pytest.raises(ValueError, match="not closed"):
        certify_at_point(x, x, (one, one), [bad])

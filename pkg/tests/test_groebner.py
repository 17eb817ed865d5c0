"""Groebner engine tests.

Hand-derived oracle for the projective-plane potential: the cleared
partials are x^2*y+1 and x*y^2+1; y*(x^2*y+1) + x*(x*y^2+1) = x+y in
characteristic 2, and modulo x+y the first generator becomes x^3+1.
The quotient is 3-dimensional with x acting as a cyclic shift, so the
minimal polynomial of the x-action is x^3+1.
"""

from __future__ import annotations

import random

import pytest

from mf2.gf2k import GF2, default_spec
from mf2.groebner import (
    TermOrder,
    buchberger,
    laurent_jacobian_ideal,
    minimal_polynomial,
    normal_form,
    quotient_ring,
)
from mf2.ringmat import FieldMatrix
from mf2.ringpoly import RingDescriptor, RingPoly, parse_poly

P2 = RingDescriptor(GF2, ("x", "y"), (False, False))
P3 = RingDescriptor(GF2, ("x", "y", "z"), (False, False, False))
L2 = RingDescriptor(GF2, ("x", "y"), (True, True))


def test_grevlex_order_basics():
    o = TermOrder.grevlex(2)
    assert o.key((1, 0)) > o.key((0, 1))  # x > y
    assert o.key((0, 2)) > o.key((1, 0))  # degree dominates
    assert o.key((2, 1)) > o.key((1, 2))


def test_lex_vs_grevlex_disagree():
    lex = TermOrder.lex(2)
    grevlex = TermOrder.grevlex(2)
    # x^3 vs x*y: lex prefers the pure power chain, grevlex the higher degree
    assert lex.key((3, 0)) > lex.key((1, 1))
    assert grevlex.key((3, 0)) > grevlex.key((1, 1))
    # x vs y^2: lex says x bigger, grevlex says y^2 bigger
    assert lex.key((1, 0)) > lex.key((0, 2))
    assert grevlex.key((0, 2)) > grevlex.key((1, 0))


def test_buchberger_projective_plane_generators():
    gens = [parse_poly("x^2*y + 1", P2), parse_poly("x*y^2 + 1", P2)]
    gb = buchberger(gens, TermOrder.grevlex(2))
    assert parse_poly("x + y", P2) in gb
    # every S-polynomial reduces to zero over the basis
    for g in gens:
        assert normal_form(g, gb, TermOrder.grevlex(2)).is_zero()


def test_buchberger_rejects_laurent_input():
    with pytest.raises(ValueError, match="clear denominators"):
        buchberger([parse_poly("x^-1 + y", L2)], TermOrder.grevlex(2))


def test_normal_form_is_idempotent_and_linear():
    order = TermOrder.grevlex(2)
    gb = buchberger([parse_poly("x^2 + y", P2), parse_poly("y^2 + x", P2)], order)
    rng = random.Random(11)
    for _ in range(30):
        p = RingPoly(P2, {(rng.randrange(5), rng.randrange(5)): 1 for _ in range(3)})
        q = RingPoly(P2, {(rng.randrange(5), rng.randrange(5)): 1 for _ in range(3)})
        nf_p = normal_form(p, gb, order)
        assert normal_form(nf_p, gb, order) == nf_p
        assert normal_form(p + q, gb, order) == nf_p + normal_form(q, gb, order)
    # ideal membership: generators reduce to zero
    assert normal_form(parse_poly("x^2 + y", P2), gb, order).is_zero()


def test_jacobian_ideal_projective_plane():
    w = parse_poly("x + y + x^-1*y^-1", L2)
    pres = laurent_jacobian_ideal(w)
    assert not any(pres.ring.laurent)
    q = quotient_ring(pres)
    assert q.dimension == 3
    assert q.staircase == ((0, 0), (1, 0), (2, 0))  # 1, x, x^2
    mp = minimal_polynomial(q.mult_matrices[0], "x")
    assert str(mp) == "x^3 + 1"
    # y acts exactly like x in the quotient
    assert q.mult_matrices[0] == q.mult_matrices[1]


def test_jacobian_ideal_relations():
    w = parse_poly("x + y + x^-1*y^-1", L2)
    pres = laurent_jacobian_ideal(w)
    q = quotient_ring(pres)
    # y = x and x^3 = 1 in the quotient
    assert q.class_vector(parse_poly("y", P2)) == q.class_vector(parse_poly("x", P2))
    assert q.class_vector(parse_poly("x^3", P2)) == q.class_vector(parse_poly("1", P2))


def test_laurent_monomial_classes_use_inverses():
    w = parse_poly("x + y + x^-1*y^-1", L2)
    q = quotient_ring(laurent_jacobian_ideal(w))
    rng = random.Random(271828)
    for _ in range(50):
        a = rng.randrange(-6, 7)
        b = rng.randrange(-6, 7)
        got = q.laurent_monomial_class((a, b))
        want = q.class_vector(RingPoly.monomial(P2, ((a + b) % 3, 0)))
        assert got == want


def test_a_series_jacobian_ideals():
    # W = x^2n + y^2 + xyz: the even-power terms die, partials are yz, xz, xy
    w = parse_poly("x^4 + y^2 + x*y*z", P3)
    pres = laurent_jacobian_ideal(w)
    assert set(map(str, pres.generators)) == {"x*y", "x*z", "y*z"}
    q = quotient_ring(pres)
    assert q.dimension is None  # infinite: no pure power of any variable
    # W0 = x^2n + y^2 has identically zero partials
    w0 = parse_poly("x^4 + y^2", P2)
    pres0 = laurent_jacobian_ideal(w0)
    assert pres0.generators == ()
    assert quotient_ring(pres0).dimension is None


def test_unit_ideal_quotient():
    from mf2.groebner import QuotientRing
    q = QuotientRing(P2, [RingPoly.one(P2)], TermOrder.grevlex(2))
    assert q.dimension == 0


def test_minimal_polynomial_examples():
    # companion-style nilpotent block: M^2 = 0, M != 0
    m = FieldMatrix(GF2, 2, 2, [0, 1, 0, 0])
    assert str(minimal_polynomial(m)) == "x^2"
    ident = FieldMatrix.identity(GF2, 3)
    assert str(minimal_polynomial(ident)) == "x + 1"
    zero = FieldMatrix(GF2, 2, 2, [0, 0, 0, 0])
    assert str(minimal_polynomial(zero)) == "x"
    gf4 = default_spec(2)
    # scalar t: minimal polynomial x + t
    mt = FieldMatrix(gf4, 1, 1, [2])
    assert str(minimal_polynomial(mt)) == "x + {2}"


def test_minimal_polynomial_annihilates():
    rng = random.Random(8)
    for _ in range(20):
        n = rng.randrange(1, 5)
        m = FieldMatrix(GF2, n, n, [rng.randrange(2) for _ in range(n * n)])
        mp = minimal_polynomial(m)
        acc = FieldMatrix(GF2, n, n, [0] * (n * n))
        power = FieldMatrix.identity(GF2, n)
        maxdeg = max(e[0] for e in mp.terms)
        for d in range(maxdeg + 1):
            if (d,) in mp.terms:
                acc = acc + power
            power = power * m
        assert acc.entries == tuple([0] * (n * n))

"""Matrix layer tests. The 4x4 specialization oracle: the projective-plane
matrix at (1,1) over GF(2) is the all-ones matrix minus the diagonal, and it
squares to the identity there, so its rank is 4."""

from __future__ import annotations

import random

import pytest

from mf2.gf2k import GF2, default_spec
from mf2.ringmat import (
    FieldMatrix,
    RingMatrix,
    block2,
    blocks_of,
    commutator,
    gf2_rank,
    gf2_solve_combination,
    kernel_basis,
    matrix_partial,
    parse_matrix,
    rank,
    solve,
    specialize,
)
from mf2.ringpoly import RingDescriptor, RingPoly, parse_poly

L2 = RingDescriptor(GF2, ("x", "y"), (True, True))


def M(text, ring=L2):
    return parse_matrix(text, ring)


RP2_TEXT = "0, 1, 1, x^-1*y^-1; y, 0, x^-1, 1; x, y^-1, 0, 1; 1, x, y, 0"


def test_parse_and_print_round_trip():
    q = M(RP2_TEXT)
    assert q.rows == q.cols == 4
    assert str(q) == RP2_TEXT
    assert M(str(q)) == q


def test_block_assembly_matches_direct_transcription():
    u = M("0, 1; y, 0")
    v = M("1, x^-1*y^-1; x^-1, 1")
    x = RingPoly.variable(L2, "x")
    q = block2(u, v, v.scale(x), u)
    assert q == M(RP2_TEXT)
    a, b, c, d = blocks_of(q)
    assert (a, b, d) == (u, v, u)
    assert c == v.scale(x)


def test_matrix_square_of_factorization():
    q = M(RP2_TEXT)
    w = parse_poly("x + y + x^-1*y^-1", L2)
    assert q * q == RingMatrix.identity(L2, 4).scale(w)


def test_commutator_is_symmetric_in_char2():
    rng = random.Random(3)
    for _ in range(20):
        def rnd():
            return RingMatrix(
                L2, 2, 2,
                [
                    RingPoly(L2, {(rng.randrange(-2, 3), rng.randrange(-2, 3)): 1})
                    for _ in range(4)
                ],
            )
        a, b = rnd(), rnd()
        assert commutator(a, b) == commutator(b, a)


def test_matrix_partial_entrywise():
    q = M(RP2_TEXT)
    dq = matrix_partial(q, "x")
    assert dq.at(0, 3) == parse_poly("x^-2*y^-1", L2)
    assert dq.at(1, 2) == parse_poly("x^-2", L2)
    assert dq.at(3, 1) == parse_poly("1", L2)
    assert dq.at(0, 1).is_zero()


def test_specialize_at_ones():
    q = M(RP2_TEXT)
    one = GF2.one()
    s = specialize(q, (one, one))
    assert s.entries == (0, 1, 1, 1, 1, 0, 1, 1, 1, 1, 0, 1, 1, 1, 1, 0)
    assert rank(s) == 4


def test_specialize_is_multiplicative():
    rng = random.Random(17)
    gf4 = default_spec(2)
    pts = [(gf4.element(a), gf4.element(b)) for a in (1, 2, 3) for b in (1, 2, 3)]
    for _ in range(15):
        def rnd():
            return RingMatrix(
                L2, 2, 2,
                [
                    RingPoly(L2, {(rng.randrange(-2, 3), rng.randrange(-2, 3)): 1 for _ in range(2)})
                    for _ in range(4)
                ],
            )
        a, b = rnd(), rnd()
        pt = pts[rng.randrange(len(pts))]
        assert specialize(a * b, pt) == specialize(a, pt) * specialize(b, pt)
        assert specialize(a + b, pt) == specialize(a, pt) + specialize(b, pt)


def test_gf2_rank_bitset_rows():
    # rows 011, 101, 110 over GF(2): third = first xor second
    assert gf2_rank([0b011, 0b101, 0b110]) == 2
    assert gf2_rank([0, 0]) == 0
    assert gf2_rank([0b1]) == 1


def test_gf2_solve_combination():
    rows = [0b011, 0b101, 0b1000]
    c = gf2_solve_combination(rows, 0b110, 3)
    assert c == [1, 1, 0]
    assert gf2_solve_combination(rows, 0b0100, 3) is None
    assert gf2_solve_combination(rows, 0, 3) == [0, 0, 0]


def test_field_matrix_rank_kernel_solve_gf2():
    m = FieldMatrix(GF2, 3, 3, [1, 1, 0, 0, 1, 1, 1, 0, 1])
    # rows sum to zero: rank 2
    assert rank(m) == 2
    ker = kernel_basis(m)
    assert len(ker) == 1
    assert m.apply(ker[0]) == [0, 0, 0]
    x = solve(m, [1, 1, 0])
    assert x is not None
    assert m.apply(x) == [1, 1, 0]
    assert solve(m, [1, 0, 0]) is None


def test_field_matrix_gf4_linear_algebra():
    gf4 = default_spec(2)
    m = FieldMatrix(gf4, 2, 3, [1, 2, 0, 0, 2, 3])
    assert rank(m) == 2
    ker = kernel_basis(m)
    assert len(ker) == 1
    assert m.apply(ker[0]) == [0, 0]
    rng = random.Random(5)
    for _ in range(20):
        x = [rng.randrange(4) for _ in range(3)]
        b = m.apply(x)
        got = solve(m, b)
        assert got is not None
        assert m.apply(got) == b


def test_randomized_rank_kernel_dimension_identity():
    rng = random.Random(23)
    for spec in (GF2, default_spec(2)):
        for _ in range(25):
            r = rng.randrange(1, 6)
            c = rng.randrange(1, 6)
            m = FieldMatrix(spec, r, c, [rng.randrange(spec.order) for _ in range(r * c)])
            assert rank(m) + len(kernel_basis(m)) == c


def test_dimension_errors():
    with pytest.raises(ValueError):
        M("x, y; x")
    with pytest.raises(ValueError):
        RingMatrix.identity(L2, 2) * RingMatrix.identity(L2, 3)
    with pytest.raises(ValueError):
        blocks_of(RingMatrix.identity(L2, 3))

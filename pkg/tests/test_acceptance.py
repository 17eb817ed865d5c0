"""Acceptance battery: ten criteria, each with a frozen runtime budget.

All algebra is exact, so every comparison is equality — tolerance is zero.
Each criterion prints one PASS/FAIL line with its measured time; run
`pytest tests/test_acceptance.py -v -s` to see the lines as they happen.

Frozen oracles used here: the projective-plane factorization squares to
x + y + x^-1*y^-1; its Jacobian quotient has dimension 3 with minimal
polynomial x^3 + 1; reducing the alpha-matrix gives x^2 and its cube gives 1;
the obstruction cofactors of dQ/dx and dQ/dy are (1,0) and (0,1); the
critical points over GF(4) are the three diagonal points (a, a); window
dimensions h_2..h_6 of the endomorphism complex all equal 3.
"""

from __future__ import annotations

import random
import time

from mf2.cohomwin import certify_at_point, cohomology_dims, find_critical_points
from mf2.gf2k import default_spec
from mf2.groebner import laurent_jacobian_ideal, minimal_polynomial, quotient_ring
from mf2.mfcore import (
    Morphism,
    UngradedMF,
    contract_at_noncritical,
    double,
    forget,
    from_graded,
    search_factorizations,
    to_graded,
    verify_mf,
)
from mf2.paperlab import (
    Rp2Context,
    delta_u,
    delta_u_preimage,
    random_matrix,
    v_twist_check,
)
from mf2.ringmat import (
    FieldMatrix,
    RingMatrix,
    block2,
    commutator,
    parse_matrix,
    rank,
)
from mf2.ringpoly import RingDescriptor, RingPoly, parse_poly

GF2 = default_spec(1)
P2 = RingDescriptor(GF2, ("x", "y"), (False, False))
P3 = RingDescriptor(GF2, ("x", "y", "z"), (False, False, False))

CTX = Rp2Context()


def _criterion(check_id: str, budget_s: float, fn) -> None:
    start = time.perf_counter()
    try:
        detail = fn()
    except BaseException:
        elapsed = time.perf_counter() - start
        print(f"FAIL {check_id} raised after {elapsed:.2f}s")
        raise
    elapsed = time.perf_counter() - start
    verdict = "PASS" if elapsed < budget_s else "FAIL"
    print(f"{verdict} {check_id} {detail} ({elapsed:.2f}s, budget {budget_s:.0f}s)")
    assert elapsed < budget_s, f"{check_id} exceeded the {budget_s}s budget"


def an_q(n: int) -> UngradedMF:
    w = parse_poly(f"x^{2 * n} + y^2 + x*y*z", P3)
    return UngradedMF(w, parse_matrix(f"x^{n}, y; y + x*z, x^{n}", P3))


def an_r(n: int) -> UngradedMF:
    w = parse_poly(f"x^{2 * n} + y^2", P2)
    return UngradedMF(w, parse_matrix(f"x^{n}, y; y, x^{n}", P2))


def test_01_factorization_verification():
    def body() -> str:
        assert verify_mf(CTX.q, CTX.w).ok
        assert CTX.q * CTX.q == RingMatrix.identity(CTX.ring, 4).scale(CTX.w)
        for n in range(1, 5):
            q, r = an_q(n), an_r(n)
            assert verify_mf(q.q, q.w).ok
            assert verify_mf(r.q, r.w).ok
        return "4x4 Laurent factorization + scalar-curve pairs n=1..4"

    _criterion("factorizations", 1.0, body)


def test_02_lemma_suite():
    def body() -> str:
        ring, u, v = CTX.ring, CTX.u, CTX.v
        id2 = RingMatrix.identity(ring, 2)
        y = RingPoly.variable(ring, "y")
        xinv = RingPoly.variable(ring, "x", -1)
        assert u * u == id2.scale(y)
        assert v * v == id2.scale(CTX.dwdx)
        assert u * v == v * u == id2.scale(xinv) + u
        rng = random.Random(62)
        for _ in range(100):
            f = random_matrix(ring, rng, 2, 2)
            image = delta_u(f)
            assert image == commutator(u, f)
            p = delta_u_preimage(image)
            assert p is not None and delta_u(p) == image
        for _ in range(100):
            report = v_twist_check(random_matrix(ring, rng, 2, 2))
            assert report.ok, report.summary()
        return "block identities + 100 round trips + 100 twist identities"

    _criterion("lemma_suite", 5.0, body)


def test_03_jacobian_ring():
    def body() -> str:
        quotient = quotient_ring(laurent_jacobian_ideal(CTX.w))
        assert quotient.dimension == 3
        minpoly = minimal_polynomial(quotient.mult_matrices[0], var="x")
        assert str(minpoly) == "x^3 + 1"
        return "dimension 3, minimal polynomial x^3 + 1"

    _criterion("jacobian_ring", 5.0, body)


def test_04_normalization_round_trip():
    def body() -> str:
        ring = CTX.ring
        id4 = RingMatrix.identity(ring, 4)
        rng = random.Random(64)
        for _ in range(100):
            alpha = RingPoly(
                ring, {(e, 0): rng.randrange(0, 2) for e in range(3)}
            )
            g = random_matrix(ring, rng, 4, 4, span=2, max_terms=3)
            f = id4.scale(alpha) + CTX.q * g + g * CTX.q
            result = CTX.reduce_endomorphism(f)
            assert result.alpha == alpha
            witness = result.witness
            assert witness.claim.f == f + id4.scale(alpha)
            assert CTX.q * witness.g + witness.g * CTX.q == witness.claim.f
        return "100 seeded pairs recovered exactly, witnesses re-verified"

    _criterion("normalization", 60.0, body)


def test_05_obstruction_cofactors():
    def body() -> str:
        one, zero = RingPoly.one(CTX.ring), RingPoly.zero(CTX.ring)
        for f, alpha, expected in (
            (CTX.dqdx, CTX.dwdx, (one, zero)),
            (CTX.dqdy, CTX.dwdy, (zero, one)),
        ):
            c1, c2 = CTX.obstruction_decomposition(f, alpha)
            assert (c1, c2) == expected
            assert c1 * CTX.dwdx + c2 * CTX.dwdy == alpha
        return "Euler-identity instances decompose as (1,0) and (0,1)"

    _criterion("obstruction", 5.0, body)


def test_06_support_certification():
    def body() -> str:
        gf4 = default_spec(2)
        ctx = Rp2Context(gf4)
        mf = ctx.mf
        nonzero = [gf4.element(v) for v in range(1, 4)]
        points = find_critical_points(ctx.w, gf4)
        assert len(points) == 3
        assert {pt for pt in points} == {(a, a) for a in nonzero}
        id4 = RingMatrix.identity(ctx.ring, 4)
        for pt in points:
            assert pt[0] == pt[1] and gf4.pow(pt[0].value, 3) == 1
            report = certify_at_point(mf, mf, pt, [id4])
            assert report.local_dim > 0
            assert not report.is_exact(0)
        rng = random.Random(66)
        sampled = 0
        while sampled < 5:
            pt = (rng.choice(nonzero), rng.choice(nonzero))
            if pt[0] == pt[1]:
                continue
            sampled += 1
            report = certify_at_point(mf, mf, pt, [id4])
            assert report.local_dim == 0
            try:
                contraction = contract_at_noncritical(mf, pt, "x")
            except ValueError:
                contraction = contract_at_noncritical(mf, pt, "y")
            q, h = contraction.q, contraction.h
            assert q * h + h * q == FieldMatrix.identity(gf4, 4)
        classes = [
            id4.scale(RingPoly.variable(ctx.ring, "x", e)) for e in range(3)
        ]
        rows: list[list[int]] = [[], [], []]
        for pt in points:
            report = certify_at_point(mf, mf, pt, classes)
            for i in range(3):
                rows[i].extend(report.class_coordinates[i])
        eval_matrix = FieldMatrix(
            gf4, 3, len(rows[0]), [v for row in rows for v in row]
        )
        assert rank(eval_matrix) == 3
        return "3 critical points, 5 contractible samples, evaluation rank 3"

    _criterion("support", 10.0, body)


def test_07_window_cohomology():
    def body() -> str:
        dims = cohomology_dims(CTX.mf, CTX.mf, 6)
        assert all(dims[d] == 3 for d in range(2, 7)), dims
        growing = []
        r1 = an_r(1)
        w2 = parse_poly("x^2 + y^2", P2)
        line = UngradedMF(w2, RingMatrix(P2, 1, 1, [parse_poly("x + y", P2)]))
        for mf in (r1, line):
            seq = cohomology_dims(mf, mf, 6)
            values = [seq[d] for d in range(2, 7)]
            assert all(a < b for a, b in zip(values, values[1:])), values
            growing.append(values)
        return (
            f"h[2..6]=3 on the Laurent side; growth {growing[0]} and"
            f" {growing[1]} on the scalar curves"
        )

    _criterion("window_cohomology", 120.0, body)


def test_08_alpha_matrix():
    def body() -> str:
        xinv = RingPoly.variable(CTX.ring, "x", -1)
        id4 = RingMatrix.identity(CTX.ring, 4)
        lhs = CTX.q * CTX.alpha_homotopy + CTX.alpha_homotopy * CTX.q
        assert lhs == CTX.f_alpha + id4.scale(xinv)
        assert str(CTX.reduce_endomorphism(CTX.f_alpha).alpha) == "x^2"
        cubed = CTX.f_alpha * CTX.f_alpha * CTX.f_alpha
        assert str(CTX.reduce_endomorphism(cubed).alpha) == "1"
        return "commutator identity, reduce(F)=x^2, reduce(F^3)=1"

    _criterion("alpha_matrix", 10.0, body)


def _random_morphism(rng, src, tgt):
    f = random_matrix(src.ring, rng, tgt.size, src.size)
    return Morphism(src, tgt, f)


def test_09_doubling_adjunction():
    def body() -> str:
        for base in (CTX.mf, an_q(1)):
            doubled = double(base)
            assert doubled.q0 == doubled.q1 == base.q
            folded = forget(doubled)
            zero = RingMatrix.zeros(base.ring, base.size, base.size)
            assert folded.q == block2(zero, base.q, base.q, zero)
            assert verify_mf(folded.q, folded.w).ok
        y = an_r(1)
        x = double(y)
        fx = forget(x)
        rng = random.Random(69)
        for _ in range(10):
            phi = _random_morphism(rng, fx, y)
            psi = to_graded(phi, x)
            assert from_graded(psi, "target") == phi
            assert from_graded(psi.differential(), "target") == phi.differential()
        for _ in range(10):
            phi = _random_morphism(rng, y, fx)
            psi = to_graded(phi, x)
            assert from_graded(psi, "source") == phi
            assert from_graded(psi.differential(), "source") == phi.differential()
        return "fold invariants + 20 transport round trips"

    _criterion("functors", 10.0, body)


def test_10_search():
    def body() -> str:
        w = parse_poly("x^2 + y^2", P2)
        support = [(1, 0), (0, 1)]
        singles = search_factorizations(w, 1, support, budget_bits=24)
        assert singles == [parse_matrix("x + y", P2, rows=1, cols=1)]
        doubles = search_factorizations(w, 2, support, budget_bits=24)
        target = parse_matrix("x, y; y, x", P2)
        assert target in doubles
        for q in singles + doubles:
            assert verify_mf(q, w).ok
        return f"size-1 unique, size-2 contains the twist ({len(doubles)} found)"

    _criterion("search", 30.0, body)

"""Exact computer algebra for matrix factorizations over GF(2^k).

Subpackages cover, bottom up: finite-field scalars (gf2k), sparse
Laurent polynomials (ringpoly), matrices over rings and fields
(ringmat), matrix factorizations with their homotopy calculus (mfcore),
finite-window cohomology and point certification (cohomwin), Groebner
bases and Jacobian quotients (groebner), the certification lab for the
projective-plane and A-series factorizations (paperlab), and the
command-line front end (cli).
"""

__version__ = "0.1.0"

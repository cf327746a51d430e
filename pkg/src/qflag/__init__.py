"""Exact and numeric computations for difference/differential connections on
weight blocks of tensor powers, their hypergeometric-series solutions, and the
associated flag-variety cohomology structures.

Subpackage map:

- ``poly``      exact sparse multivariate polynomials / rational functions
- ``indices``   shapes, ordered set partitions, minimal permutations
- ``weights``   weight functions, auxiliary products, Schubert polynomials
- ``operators`` R-matrices, difference connection, commuting Hamiltonians
- ``hyper``     residue series, solutions, determinant and contour checks
- ``levelt``    fundamental solutions normalized at the origin
- ``geometry``  localization, stable envelopes, quantum products, J-series
- ``cli``       `qflag verify` / `qflag solve`
"""

__version__ = "0.1.0"

"""Divisor class group computations on the Fermat quartic X^4 + Y^4 = Z^4.

Modules, bottom-up:

- ``fields`` (alias ``fieldtower``): rationals, prime fields, simple extension towers, homomorphisms.
- ``curve`` (alias ``curvegeom``): plane curves, points, branch expansions and valuations.
- ``divisors`` (alias ``rrspace``): divisors, the line registry and Riemann-Roch spaces.
- ``torsion`` (alias ``torsiongroup``): the (Z/4)^6 coordinates, decomposition and relation checks.
- ``z4`` (alias ``z4linalg``): Howell forms and submodules over Z/4, finite matrix groups.
- ``galois`` (alias ``galoispairing``): Galois and automorphism matrices, Weil pairing, Mordell-Weil groups.
- ``census``: point counts, effective degree-2 classes, quadratic points.
- ``cli``: the ``fermat4`` command.
"""

__version__ = "0.1.0"

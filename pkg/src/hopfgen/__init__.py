"""hopfgen: exact symbolic computation with finite-dimensional Hopf algebras.

Builds four families of pointed or near-pointed Hopf algebras over
cyclotomic fields, twists them by two-cocycles, detects polynomial
identities of the universal comodule algebra through an exact symbolic
evaluation map, and certifies presentations of the algebra of coinvariants
by explicit generator, Jacobian, decomposition and witness computations.
Everything is exact rational/cyclotomic arithmetic; there is no floating
point in the package.
"""

__version__ = "0.1.0"

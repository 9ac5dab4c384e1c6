"""Exact-arithmetic spectral sequences for invariant-form models.

The package builds finite cochain models of the invariant-forms complex of
manifolds carrying S-type or C-type structures (eta directions with
d eta_i = lambda_i omega over a graded basic-cohomology module), runs the
associated spectral sequence with exact rational linear algebra, and checks
the structural theorems (second-page description, degeneration pages, Betti
recursions, harmonic bases, star duality) by brute force.
"""

__version__ = "0.1.0"

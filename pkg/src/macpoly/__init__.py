"""Exact construction and verification of vector-valued orthogonal
polynomials attached to quantum symmetric pairs.

Subpackages cover the coefficient field Q(v), root data and restricted
root systems, sparse group-algebra arithmetic, q-Pochhammer weight
distributions, the Macdonald-type polynomial families, the worked example
cases, and a command-line front end.
"""

__version__ = "0.1.0"

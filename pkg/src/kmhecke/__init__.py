"""Principal series of Iwahori-Hecke algebras over Kac-Moody root data.

Exact (Fraction) implementations of: Weyl-group combinatorics on a root
datum, the Bernstein-Lusztig presentation of the Hecke algebra with its
intertwining elements, truncated principal-series modules and their
weight theory, the isomorphism graph and submodule lattice at a regular
character, R-group analysis at possibly non-regular characters, the
infinite-dihedral group algebra, and finitely-generated weighted
modules.  Everything is over Q; no floats are used for mathematical
content.
"""

__version__ = "0.1.0"

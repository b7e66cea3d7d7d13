"""Combinatorial cohomology of period domains over finite fields.

Computes the predicted compactly-supported cohomology tables of the open
semistable locus in a flag variety (and of its closed complement), turns
them into Frobenius-trace point-count predictions, and confirms both
against brute-force enumeration of flags over small finite fields and
exact homology of the associated induction complexes.
"""

__version__ = "0.1.0"

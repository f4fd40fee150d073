"""arguesia: exact projective geometry for Desargues' involution theorems.

A library plus CLI that generates instances, verifies the theorems of the
*Brouillon Project* (Menelaus combinatorics, involutions, the ramee
invariance theorem, the quadrangle/conic-pencil involution theorem,
Beaugrand's variant, Pascal's hexagram lemma), replays the historical
proofs step by step, and renders figures.  All arithmetic is exact.
"""

from arguesia._kernel import kernel_backend

__version__ = "0.1.0"

__all__ = ["kernel_backend", "__version__"]

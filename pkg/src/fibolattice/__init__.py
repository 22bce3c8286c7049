"""
fibolattice: lattices of Dyck paths avoiding DUU and D^(p+1).

The package materializes the distributive lattices of such paths under the
Stanley order, counts their covers, irreducible elements, boolean and linear
intervals, implements the bijections with bicolored Motzkin paths, Catalan
words, compositions and subsets, and checks every brute-force count against
exact truncated generating functions.
"""

__version__ = "0.1.0"

from fibolattice.logging_config import get_logger

# Package-level logger
logger = get_logger(__name__)

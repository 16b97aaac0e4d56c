"""Exact-arithmetic construction of magic-square Lie algebras and their
symmetric coset geometry over composition algebras.

Everything is computed over the rationals: multiplication tables, Jordan
products, Lie structure constants, Killing forms, signatures.  No floating
point enters any verdict.
"""

__version__ = "0.1.0"

"""Exact computer algebra for the square-symmetric Dunkl oscillator.

Builds the polynomial-times-Laguerre wavefunction basis attached to the
dihedral reflection group of the square, applies the associated
differential-difference operators, recomputes coefficient tables over exact
rational arithmetic, and mechanically verifies the algebraic identities that
the tables are supposed to satisfy.
"""

__version__ = "0.1.0"

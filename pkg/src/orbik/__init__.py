"""Exact computations for tilted hearts on elliptic orbifolds.

Ramification data of ``C/L -> P^1`` for the four cyclic orbifolds, the bound
quiver algebra of a weighted projective line, its Euler form and K_0
lattice, explicit right modules with Hom/Ext, and slope-theta torsion pairs.
"""

__version__ = "0.1.0"

"""Exact computer algebra for Gorenstein-projective modules over Morita
context rings: module calculus over finite-dimensional algebras, the
quadruple description of modules over 2x2 Morita rings, total projective
resolutions, and the sufficiency/necessity criterion machinery, all over
Q or a prime field.
"""

__version__ = "0.1.0"

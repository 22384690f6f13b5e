"""Explicit descent computations for elliptic curves over the rationals.

The package computes Selmer sets of genus-one normal curves attached to
odd-prime-degree isogenies, builds the associated covering models, and
searches them for rational points.
"""

__version__ = "1.0.0"

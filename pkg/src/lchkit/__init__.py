"""Combinatorial Legendrian contact homology over F2 and Cthulhu block complexes."""

__version__ = "0.1.0"

"""Sparse 3-manifold triangulations, Heegaard diagrams and Kuperberg invariants."""
__version__ = '0.1.0'

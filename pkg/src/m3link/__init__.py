"""Linking pairings of rational homology 3-spheres and cup-product pairings
on the degree-2 integral cohomology of finite groups."""

__version__ = "0.1.0"

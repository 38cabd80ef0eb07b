"""Exact computations with Freudenthal triple systems built from pairs of 3x3
matrices and the key varieties cut out by their strictly regular loci."""

__version__ = "0.1.0"

"""Exact construction of q(2) over F_{p^k}, its baby Verma and simple
modules, and their degree-0/1 Lie superalgebra cohomology."""

__version__ = "1.0.0"

"""Exact symbolic computation of Johnson homomorphisms, Magnus representations
and Lagrangian traces for automorphisms preserving a handlebody."""

__version__ = "0.1.0"

"""Exact computations with planar electrical networks, their response
matrices and the electrical Lie groups acting on them."""

__version__ = "0.1.0"

"""Unitary reflection groups, Hermitian lattices and modular-form bookkeeping."""

__version__ = "0.1.0"

"""Exact symbolic verification of the minimal and metaplectic representations of spo(2m|2n,2n)."""

__version__ = "0.1.0"

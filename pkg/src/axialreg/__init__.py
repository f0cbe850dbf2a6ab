"""Axial constants, sectional regularity and generic initial ideals of homogeneous ideals."""

__version__ = "0.1.0"

"""Skew Schur Q functions of shifted skew shapes, frayed ribbons, and the
lattice-walk shifted Littlewood-Richardson rule."""

__version__ = "0.1.0"

"""Lie symmetry toolkit for the 3D Euler equations of gas dynamics."""

__version__ = "0.1.0"

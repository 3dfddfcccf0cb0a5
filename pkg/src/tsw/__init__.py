"""Toroidal Schnyder woods: maps, orientations, encodings and drawings."""

__version__ = "0.1.0"

"""Shift-mult equivalence of noise sets."""

from .orbits import CanonicalForm, apply_transform, are_equivalent, canonicalize, size3_orbit

__all__ = ["CanonicalForm", "apply_transform", "canonicalize", "are_equivalent", "size3_orbit"]

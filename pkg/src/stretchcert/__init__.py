"""Exact certificates for pseudo-Anosov stretch factors from Salem numbers and totally real fields."""

__version__ = "0.1.0"

"""Exact rational models for section spaces of projective-space fibrations."""

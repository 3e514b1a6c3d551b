"""Macdonald polynomials by branching, with exact arithmetic."""

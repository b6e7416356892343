"""Finite-field arithmetic, polynomials and small linear algebra."""

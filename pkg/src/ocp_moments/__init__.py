"""Exact moments of the two-dimensional one-component plasma."""

"""Shift-of-finite-type backend."""

"""Optimal finite-length index codes for small side-information digraphs."""

"""Exact arithmetic and weighted point counts for Weierstrass fibrations
over P^1, Hom stacks to weighted projective stacks, and self-maps of P^1."""

__version__ = "0.1.0"

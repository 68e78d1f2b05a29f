"""Exact arithmetic for endomorphism algebras of abelian varieties with small 2-torsion fields."""

__version__ = "0.1.0"

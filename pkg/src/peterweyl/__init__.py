"""Exact Peter-Weyl idempotents, Hecke algebras and Morita equivalences."""

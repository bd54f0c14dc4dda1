"""Verification toolkit for finitely presented algebraic theories in one and
two dimensions: word-problem semi-decision, finite model search, coherence
checking for exchange-cell tables, internal (co)algebra constructions, and
the comonad of internal algebras."""

__version__ = "0.1.0"

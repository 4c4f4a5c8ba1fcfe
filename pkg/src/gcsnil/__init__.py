"""Exact verification and obstruction of complex and generalized complex
structures on nilpotent Lie algebras."""

__version__ = "0.1.0"

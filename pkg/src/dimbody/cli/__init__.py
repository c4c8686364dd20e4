"""Dimbody CLI: witness, certificate, realization and cone scans from the shell."""

__all__ = ["main"]

"""Subcommand implementations; each returns a plain dict payload."""

"""Exact verification engine for invariant solutions of the Strominger system on nilmanifolds."""

__version__ = "0.1.0"

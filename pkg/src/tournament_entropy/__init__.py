"""Renyi and von Neumann entropy of tournaments and other digraphs."""

__version__ = "0.1.0"

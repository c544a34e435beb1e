"""Rank drop of face-splitting matrices of point pairs."""

from importlib.metadata import version

__version__ = version("rankdrop")

"""Exact algebra and combinatorics for excitation rings of electron-pair systems."""

__version__ = "0.1.0"

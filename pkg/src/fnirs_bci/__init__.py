"""
fnirs-bci: classify mental arithmetic, motor imagery and idle state from fNIRS.

The computational packages (``signal``, ``features``, ``dimred``, ``nn``,
``classifiers``, ``evaluation``) are plain functions over the domain value
objects; ``application`` and ``cli`` chain them into the three analysis
paths.
"""

__version__ = "0.1.0"

__all__ = ["__version__"]

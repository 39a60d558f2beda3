"""Exact construction and verification engine for the quantum nonlinear
Schroedinger model: piecewise exp-polynomial wavefunctions, Dunkl-type and
Yang-Baxter integral operators, and a Bethe-equation solver."""

__all__ = [
    "symgroup",
    "exppoly",
    "alcovefn",
    "momrep",
    "wavefn",
    "ybops",
    "bae",
    "oracle",
    "cli",
]

__version__ = "0.1.0"

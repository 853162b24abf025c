"""Markov coding of syntax in SL2(N) and the minimal theory BeSh, executably."""

from .core import (
    GEN_A,
    GEN_B,
    IDENTITY,
    Mat2,
    QuadExt,
    eigenvalues,
    mat_inv,
    mat_mul,
    singleton,
)
from .nielsen import decode, encode

__version__ = "0.1.0"

__all__ = [
    "GEN_A",
    "GEN_B",
    "IDENTITY",
    "Mat2",
    "QuadExt",
    "decode",
    "eigenvalues",
    "encode",
    "mat_inv",
    "mat_mul",
    "singleton",
]

"""Verification toolkit for cube sums of the form 3p and 3p^2.

Exact certification of cube-sum representations, quaternionic matrix and
local-field identities, and desk-scale numerical checks of the explicit
Gross-Zagier constants and the 3-part of the BSD formula for the curves
x^3 + y^3 = n with n in {p, p^2, 3p, 3p^2}, p an odd prime with p = 2, 5
mod 9.
"""

from . import cli, curves, eisenstein, localfields, lseries, matrices, modular, points
from .errors import VerifyError

__all__ = [
    "cli",
    "curves",
    "eisenstein",
    "localfields",
    "lseries",
    "matrices",
    "modular",
    "points",
    "VerifyError",
]

__version__ = "0.1.0"

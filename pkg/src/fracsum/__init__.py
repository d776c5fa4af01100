"""Exact radix expansions in Z^m, the fractional-part summation formula,
self-affine tiles and fluctuation statistics of expanding maps."""
from . import circlemap, expand, fluct, linalg_exact, numsys, sumformula, tiles
from .errors import FracsumError
from .expand import DigitString
from .numsys import NumberSystem, validate

__all__ = [
    "DigitString",
    "FracsumError",
    "NumberSystem",
    "circlemap",
    "expand",
    "fluct",
    "linalg_exact",
    "numsys",
    "sumformula",
    "tiles",
    "validate",
]

__version__ = "0.1.0"

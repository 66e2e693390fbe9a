"""Tamagawa numbers of elliptic curves with a point of order 13 over quadratic fields."""

from .family import FamilyCurve, bad_support, build, build_inverted, j_formula
from .localred import GlobalTamagawa, LocalData, local_data, tamagawa, tate
from .quadfield import QuadNum, QuadraticField, primes_above, val

__version__ = "0.1.0"

__all__ = [
    "FamilyCurve",
    "GlobalTamagawa",
    "LocalData",
    "QuadNum",
    "QuadraticField",
    "bad_support",
    "build",
    "build_inverted",
    "j_formula",
    "local_data",
    "primes_above",
    "tamagawa",
    "tate",
    "val",
]

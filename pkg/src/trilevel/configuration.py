"""Enumerations shared by every module.

Basis ordering is fixed throughout the package: index 0 is the upper
level ``|+>``, index 1 the middle level ``|0>``, index 2 the lower level
``|->``.
"""
from enum import Enum

PLUS, ZERO, MINUS = 0, 1, 2


class Configuration(str, Enum):
    LAMBDA = "lambda"
    VEE = "vee"
    CASCADE = "cascade"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower()
        aliases = {"l": "lambda", "v": "vee", "xi": "cascade", "ladder": "cascade",
                   "c": "cascade", "x": "cascade"}
        key = aliases.get(key, key)
        try:
            return cls(key)
        except ValueError:
            raise ValueError(f"unknown configuration {value!r}") from None


class Level(str, Enum):
    """Initial atomic level of a dressed block (also Case I/II/III)."""

    LOWER = "lower"
    MIDDLE = "middle"
    UPPER = "upper"

    @property
    def index(self):
        """Position of this level in the basis ordering."""
        return {Level.UPPER: PLUS, Level.MIDDLE: ZERO, Level.LOWER: MINUS}[self]

    @property
    def case(self):
        return {Level.LOWER: "I", Level.MIDDLE: "II", Level.UPPER: "III"}[self]

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower()
        aliases = {"i": "lower", "1": "lower", "-": "lower", "minus": "lower",
                   "ii": "middle", "2": "middle", "0": "middle", "zero": "middle",
                   "iii": "upper", "3": "upper", "+": "upper", "plus": "upper"}
        key = aliases.get(key, key)
        try:
            return cls(key)
        except ValueError:
            raise ValueError(f"unknown level or case {value!r}") from None

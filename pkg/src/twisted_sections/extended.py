"""The value -infinity used for regularities of zero modules and empty strata."""

from __future__ import annotations

from functools import total_ordering
from typing import Iterable


@total_ordering
class MinusInfinity:
    """Smaller than every integer; absorbs addition of integers."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "-inf"

    __str__ = __repr__

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("MinusInfinity")

    def __lt__(self, other):
        return other is not self

    def __add__(self, other):
        if isinstance(other, int) or other is self:
            return self
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, int):
            return self
        return NotImplemented

    def __neg__(self):
        raise ArithmeticError("+infinity is not representable")


NEG_INF = MinusInfinity()


def ext_max(values: Iterable) -> "int | MinusInfinity":
    """Maximum with max(empty) = -infinity."""
    best = NEG_INF
    for v in values:
        if best is NEG_INF or (v is not NEG_INF and v > best):
            best = v
    return best


def is_finite(v) -> bool:
    return v is not NEG_INF


def to_json(v):
    return None if v is NEG_INF else v

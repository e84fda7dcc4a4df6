"""
Exact comparisons between sums of square roots.

Inequalities such as ``sum(sqrt(val)) <= sqrt(6)*(n+v)`` are decided with
rational enclosures of every radical, doubling the precision until the two
sides separate. Exact ties fall back to sympy.
"""

import logging
import math
from fractions import Fraction
from typing import Dict, Mapping, Tuple, Union

import sympy

from trisparse.config import get_config

logger = logging.getLogger(__name__)

Number = Union[int, Fraction]

REFINEMENTS = 4


def sqrt_enclosure(value: int, bits: int) -> Tuple[Fraction, Fraction]:
    """Rationals ``lo <= sqrt(value) <= hi`` with ``hi - lo <= 2**-bits``."""
    if value < 0:
        raise ValueError("square root of a negative integer")
    scale = 1 << bits
    scaled = value * scale * scale
    root = math.isqrt(scaled)
    low = Fraction(root, scale)
    if root * root == scaled:
        return low, low
    return low, Fraction(root + 1, scale)


class RadicalSum:
    """``sum(coeff * sqrt(radicand))`` with rational coefficients."""

    def __init__(self, terms: Mapping[int, Number]):
        self.terms: Dict[int, Fraction] = {}
        for radicand, coeff in terms.items():
            if coeff:
                self.terms[radicand] = self.terms.get(radicand, Fraction(0)) + Fraction(coeff)

    @classmethod
    def rational(cls, value: Number) -> 'RadicalSum':
        return cls({1: value})

    def enclosure(self, bits: int) -> Tuple[Fraction, Fraction]:
        low = high = Fraction(0)
        for radicand, coeff in self.terms.items():
            r_low, r_high = sqrt_enclosure(radicand, bits)
            if coeff > 0:
                low += coeff * r_low
                high += coeff * r_high
            else:
                low += coeff * r_high
                high += coeff * r_low
        return low, high

    def to_sympy(self):
        return sympy.Add(*[sympy.Rational(c.numerator, c.denominator) * sympy.sqrt(r)
                           for r, c in self.terms.items()])

    def __float__(self):
        return float(sum(float(c) * math.sqrt(r) for r, c in self.terms.items()))

    def __repr__(self):
        return f"RadicalSum({self.to_sympy()})"


def certify_le(lhs: RadicalSum, rhs: RadicalSum, bits: int = None) -> bool:
    """Decide ``lhs <= rhs`` exactly."""
    bits = bits or get_config().SQRT_PRECISION_BITS
    for _ in range(REFINEMENTS):
        l_low, l_high = lhs.enclosure(bits)
        r_low, r_high = rhs.enclosure(bits)
        if l_high <= r_low:
            return True
        if l_low > r_high:
            return False
        bits *= 2
    logger.debug("interval check undecided at %d bits, using sympy", bits)
    difference = sympy.nsimplify(rhs.to_sympy() - lhs.to_sympy())
    return bool(difference >= 0)


def certify_lt(lhs: RadicalSum, rhs: RadicalSum, bits: int = None) -> bool:
    """Decide ``lhs < rhs`` exactly."""
    return not certify_le(rhs, lhs, bits)

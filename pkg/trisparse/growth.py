"""
Numeric predictors for repeated retriangulation.

``RadicalSequence`` models the valence after each round
(``a_{n+1} = sqrt(a_n) + c``); ``GrowthModel`` models tet and vertex
counts, which grow by a fixed 2x2 matrix with entries in Q(sqrt6).
"""

import logging
import math
from dataclasses import dataclass
from typing import List, Tuple

import sympy

logger = logging.getLogger(__name__)

SQRT6 = sympy.sqrt(6)


def fixed_point(c: float) -> float:
    """``L = c + 1/2 + sqrt(c + 1/4)``, the limit of the radical sequence."""
    return c + 0.5 + math.sqrt(c + 0.25)


@dataclass(frozen=True)
class RadicalSequence:
    a0: float
    c: float

    @property
    def limit(self) -> float:
        return fixed_point(self.c)

    def values(self, n: int) -> List[float]:
        """``a_0..a_n``."""
        values = [float(self.a0)]
        for _ in range(n):
            values.append(math.sqrt(values[-1]) + self.c)
        return values

    def bound(self, n: int) -> float:
        """``a0 ** (1/2**n) + L``."""
        return self.a0 ** (1.0 / 2 ** n) + self.limit


def radical_bound(a0: float, c: float, n: int) -> Tuple[float, float]:
    """
    Iterated radical ``a_n`` and its closed-form upper bound.

    Args:
        a0: Starting value; must exceed the fixed point.
        c: Additive constant (4 for valence reduction).
        n: Number of iterations.

    Returns:
        ``(a_n, a0 ** (1/2**n) + L)``.

    Raises:
        ValueError: ``a0`` does not exceed the fixed point, so the sequence
            need not decrease.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    sequence = RadicalSequence(a0, c)
    if a0 <= sequence.limit:
        raise ValueError(f"a0={a0} does not exceed the fixed point {sequence.limit:.6f}")
    return sequence.values(n)[-1], sequence.bound(n)


class GrowthModel:
    """
    Exact tet/vertex growth of repeated retriangulation.

    ``x_{n+1} = (28+4*sqrt6) x_n + (16+4*sqrt6) y_n`` and
    ``y_{n+1} = (6+sqrt6)(x_n + y_n)``.
    """

    STATED_RATE = 30 + 4 * SQRT6

    def __init__(self):
        self.matrix = sympy.Matrix([[28 + 4 * SQRT6, 16 + 4 * SQRT6],
                                    [6 + SQRT6, 6 + SQRT6]])
        self._dominant = None

    def step(self, x, y) -> Tuple:
        x_next = sympy.expand((28 + 4 * SQRT6) * x + (16 + 4 * SQRT6) * y)
        y_next = sympy.expand((6 + SQRT6) * (x + y))
        return x_next, y_next

    def predict(self, x0, y0, n: int) -> Tuple:
        x, y = sympy.nsimplify(x0), sympy.nsimplify(y0)
        for _ in range(n):
            x, y = self.step(x, y)
        return x, y

    def closed_form(self, x0, y0, n: int) -> Tuple:
        """``A**n (x0, y0)`` by matrix power."""
        vector = (self.matrix ** n) * sympy.Matrix([sympy.nsimplify(x0), sympy.nsimplify(y0)])
        return sympy.expand(vector[0]), sympy.expand(vector[1])

    def dominant_eigenvalue(self):
        """Largest eigenvalue of the growth matrix, exact."""
        if self._dominant is None:
            trace = self.matrix.trace()
            det = self.matrix.det()
            self._dominant = sympy.simplify((trace + sympy.sqrt(trace ** 2 - 4 * det)) / 2)
        return self._dominant

    def ratios(self, x0, y0, n: int) -> List[Tuple[float, float]]:
        """``(x_k / lambda**k, y_k / lambda**k)`` for ``k = 0..n`` as floats."""
        rate = float(self.dominant_eigenvalue())
        x, y = sympy.nsimplify(x0), sympy.nsimplify(y0)
        out = []
        for k in range(n + 1):
            out.append((float(x) / rate ** k, float(y) / rate ** k))
            x, y = self.step(x, y)
        return out


_model = None


def get_growth_model() -> GrowthModel:
    global _model
    if _model is None:
        _model = GrowthModel()
    return _model


def growth_predict(x0, y0, n: int) -> Tuple:
    """
    Exact ``(x_n, y_n)`` as sympy expressions in ``sqrt(6)``.

    Raises:
        ValueError: ``x0`` or ``y0`` is negative, or ``n`` is negative.
    """
    if n < 0 or x0 < 0 or y0 < 0:
        raise ValueError("growth_predict needs non-negative inputs")
    return get_growth_model().predict(x0, y0, n)

"""
Smith normal form over the integers.

Matrices are lists of rows of Python ints. :func:`smith_normal_form`
tracks the unimodular transforms; :func:`invariant_factors` first strips
unit pivots from a sparse copy, which handles the bulk of a boundary
matrix, and runs the dense algorithm on what is left.
"""

import logging
from collections import deque
from typing import Dict, List, Sequence, Tuple

from trisparse.config import get_config
from trisparse.errors import VerificationError

logger = logging.getLogger(__name__)

Matrix = List[List[int]]


def identity(size: int) -> Matrix:
    return [[int(i == j) for j in range(size)] for i in range(size)]


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Matrix:
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    return [[sum(row[k] * b[k][j] for k in range(inner)) for j in range(cols)] for row in a]


def _swap_rows(m: Matrix, i: int, j: int):
    m[i], m[j] = m[j], m[i]


def _swap_cols(m: Matrix, i: int, j: int):
    for row in m:
        row[i], row[j] = row[j], row[i]


def _add_row(m: Matrix, target: int, source: int, factor: int):
    """``row[target] += factor * row[source]``."""
    src = m[source]
    m[target] = [x + factor * y for x, y in zip(m[target], src)]


def _add_col(m: Matrix, target: int, source: int, factor: int):
    for row in m:
        row[target] += factor * row[source]


def _least_entry(d: Matrix, rows: range, cols: range):
    best = None
    for i in rows:
        for j in cols:
            value = d[i][j]
            if value and (best is None or abs(value) < best[0]):
                best = (abs(value), i, j)
    return best


def smith_normal_form(a: Sequence[Sequence[int]]) -> Tuple[Matrix, Matrix, Matrix]:
    """
    Diagonalize ``a`` with unimodular row and column operations.

    Pivots are the entries of least absolute value. Diagonal entries are
    non-negative and each divides the next.

    Returns:
        ``(D, U, V)`` with ``U * a * V == D``.

    Raises:
        VerificationError: ``Config.SNF_VERIFY`` is set and the product check
            fails.
    """
    d = [list(map(int, row)) for row in a]
    m = len(d)
    n = len(d[0]) if m else 0
    u = identity(m)
    v = identity(n)
    for t in range(min(m, n)):
        pivot = _least_entry(d, range(t, m), range(t, n))
        if pivot is None:
            break
        _, i, j = pivot
        _swap_rows(d, t, i)
        _swap_rows(u, t, i)
        _swap_cols(d, t, j)
        _swap_cols(v, t, j)
        while True:
            p = d[t][t]
            for i in range(t + 1, m):
                q = d[i][t] // p
                if q:
                    _add_row(d, i, t, -q)
                    _add_row(u, i, t, -q)
            for j in range(t + 1, n):
                q = d[t][j] // p
                if q:
                    _add_col(d, j, t, -q)
                    _add_col(v, j, t, -q)
            rest = _least_entry(d, range(t + 1, m), range(t, t + 1)) or \
                _least_entry(d, range(t, t + 1), range(t + 1, n))
            if rest is not None:
                _, i, j = rest
                _swap_rows(d, t, i)
                _swap_rows(u, t, i)
                _swap_cols(d, t, j)
                _swap_cols(v, t, j)
                continue
            bad = next((i for i in range(t + 1, m) for j in range(t + 1, n) if d[i][j] % p), None)
            if bad is None:
                break
            _add_row(d, t, bad, 1)
            _add_row(u, t, bad, 1)
        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = [-x for x in u[t]]

    if get_config().SNF_VERIFY and matmul(matmul(u, a), v) != d:
        raise VerificationError("Smith normal form check U*A*V == D failed")
    return d, u, v


def _strip_unit_pivots(a: Sequence[Sequence[int]]) -> Tuple[int, Matrix]:
    """
    Eliminate rows and columns through ``+-1`` entries.

    Returns:
        The number of unit pivots removed and the dense remainder.
    """
    rows: Dict[int, Dict[int, int]] = {}
    cols: Dict[int, set] = {}
    for i, row in enumerate(a):
        entries = {j: x for j, x in enumerate(row) if x}
        rows[i] = entries
        for j in entries:
            cols.setdefault(j, set()).add(i)
    width = len(a[0]) if a else 0
    removed_cols = set()
    units = 0
    queue = deque(sorted((i, j) for i, entries in rows.items() for j, x in entries.items() if abs(x) == 1))
    while queue:
        i, j = queue.popleft()
        if i not in rows or rows[i].get(j) not in (1, -1):
            continue
        pivot_row = rows.pop(i)
        unit = pivot_row[j]
        for j2 in pivot_row:
            cols[j2].discard(i)
        for k in sorted(cols.get(j, ())):
            target = rows[k]
            factor = target[j] * unit
            for j2, x in pivot_row.items():
                value = target.get(j2, 0) - factor * x
                if value:
                    if j2 not in target:
                        cols.setdefault(j2, set()).add(k)
                    target[j2] = value
                    if abs(value) == 1:
                        queue.append((k, j2))
                elif j2 in target:
                    del target[j2]
                    cols[j2].discard(k)
        cols.pop(j, None)
        removed_cols.add(j)
        units += 1
    keep_cols = [j for j in range(width) if j not in removed_cols]
    remainder = [[rows[i].get(j, 0) for j in keep_cols] for i in sorted(rows)]
    return units, remainder


def invariant_factors(a: Sequence[Sequence[int]]) -> List[int]:
    """Non-zero invariant factors of ``a`` in divisibility order."""
    if not a or not a[0]:
        return []
    units, remainder = _strip_unit_pivots(a)
    factors = [1] * units
    if remainder and remainder[0]:
        d, _, _ = smith_normal_form(remainder)
        factors.extend(d[i][i] for i in range(min(len(d), len(d[0]))) if d[i][i])
    logger.debug("invariant factors of %dx%d matrix: %d units, %d dense", len(a), len(a[0]), units,
                 len(factors) - units)
    return factors


def matrix_rank(a: Sequence[Sequence[int]]) -> int:
    return len(invariant_factors(a))

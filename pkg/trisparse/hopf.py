"""
Hopf algebras as dense structure tensors.

Axis conventions (``dim`` = dimension):

- ``M[a, b, c]``: coefficient of ``e_a`` in ``e_b * e_c`` (out, in, in)
- ``Delta[b, c, a]``: coefficient of ``e_b (x) e_c`` in ``Delta(e_a)`` (out, out, in)
- ``S[a, b]``: coefficient of ``e_a`` in ``S(e_b)`` (out, in)
- ``trace[a]`` (in) and ``cotrace[a]`` (out)

Scalars are exact: ``Q`` uses Python ints and ``Fraction``; ``F<p>`` uses
ints reduced mod ``p``. Tensors are numpy arrays of dtype ``object``.
"""

import itertools
import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence

import numpy as np
import sympy

from trisparse.errors import EvaluationError, HopfAlgebraError, ParseError

logger = logging.getLogger(__name__)

BUILTIN_GROUPS = ('Z2', 'Z3', 'Z4', 'Z2xZ2', 'S3', 'Q8')


class ScalarField:
    """Exact scalars: ``Q`` or a prime field ``F<p>``."""

    def __init__(self, name: str = 'Q'):
        match = re.fullmatch(r'F(\d+)', name)
        if name == 'Q':
            self.characteristic = 0
        elif match and sympy.isprime(int(match.group(1))):
            self.characteristic = int(match.group(1))
        else:
            raise ValueError(f"Unknown field: {name} (expected Q or F<prime>)")
        self.name = name

    def coerce(self, value):
        value = Fraction(value)
        if self.characteristic:
            if value.denominator % self.characteristic == 0:
                raise ValueError(f"{value} is not defined in {self.name}")
            p = self.characteristic
            return value.numerator * pow(value.denominator, -1, p) % p
        return value.numerator if value.denominator == 1 else value

    def array(self, values, shape) -> np.ndarray:
        flat = [self.coerce(v) for v in np.asarray(values, dtype=object).ravel()]
        out = np.empty(len(flat), dtype=object)
        out[:] = flat
        return out.reshape(shape)

    def reduce(self, array: np.ndarray) -> np.ndarray:
        if self.characteristic:
            return array % self.characteristic
        return array

    def power(self, base: int, exponent: int):
        """``base ** exponent`` for any integer exponent."""
        if self.characteristic:
            if base % self.characteristic == 0 and exponent < 0:
                raise EvaluationError(f"{base} is not invertible in {self.name}")
            return pow(base, exponent, self.characteristic)
        return Fraction(base) ** exponent

    def normalize(self, value):
        value = Fraction(value) if not self.characteristic else value % self.characteristic
        if isinstance(value, Fraction) and value.denominator == 1:
            return value.numerator
        return value

    def __eq__(self, other):
        return isinstance(other, ScalarField) and self.name == other.name

    def __repr__(self):
        return f"ScalarField({self.name!r})"


class GroupTable:
    """Finite group as a multiplication table; index 0 is the identity."""

    def __init__(self, table: Sequence[Sequence[int]], name: str = 'G'):
        self.table = [list(row) for row in table]
        self.name = name
        self._inverses = None
        problems = self.validate()
        if problems:
            raise HopfAlgebraError(f"{name} is not a group: {problems[0]}")

    @property
    def order(self) -> int:
        return len(self.table)

    def multiply(self, g: int, h: int) -> int:
        return self.table[g][h]

    def inverse(self, g: int) -> int:
        if self._inverses is None:
            self._inverses = [row.index(0) for row in self.table]
        return self._inverses[g]

    def is_abelian(self) -> bool:
        return all(self.table[g][h] == self.table[h][g]
                   for g in range(self.order) for h in range(g))

    def validate(self) -> List[str]:
        k = len(self.table)
        if k == 0:
            return ["empty table"]
        if any(len(row) != k for row in self.table):
            return ["table is not square"]
        if any(not 0 <= x < k for row in self.table for x in row):
            return ["entry out of range"]
        if self.table[0] != list(range(k)) or [row[0] for row in self.table] != list(range(k)):
            return ["index 0 is not an identity"]
        for g, row in enumerate(self.table):
            if 0 not in row:
                return [f"element {g} has no inverse"]
        for g, h, l in itertools.product(range(k), repeat=3):
            if self.table[self.table[g][h]][l] != self.table[g][self.table[h][l]]:
                return [f"not associative at ({g}, {h}, {l})"]
        return []


def cyclic_group(k: int) -> GroupTable:
    return GroupTable([[(g + h) % k for h in range(k)] for g in range(k)], f"Z{k}")


def klein_group() -> GroupTable:
    return GroupTable([[g ^ h for h in range(4)] for g in range(4)], 'Z2xZ2')


def symmetric_group_3() -> GroupTable:
    """Permutations of {0,1,2} in ``itertools`` order, ``g*h = g o h``."""
    perms = list(itertools.permutations(range(3)))
    index = {p: i for i, p in enumerate(perms)}
    table = [[index[tuple(g[h[i]] for i in range(3))] for h in perms] for g in perms]
    return GroupTable(table, 'S3')


def quaternion_group() -> GroupTable:
    """Elements ``1, -1, i, -i, j, -j, k, -k`` in that order."""
    units = {('1', '1'): (1, '1'), ('1', 'i'): (1, 'i'), ('1', 'j'): (1, 'j'), ('1', 'k'): (1, 'k'),
             ('i', '1'): (1, 'i'), ('i', 'i'): (-1, '1'), ('i', 'j'): (1, 'k'), ('i', 'k'): (-1, 'j'),
             ('j', '1'): (1, 'j'), ('j', 'i'): (-1, 'k'), ('j', 'j'): (-1, '1'), ('j', 'k'): (1, 'i'),
             ('k', '1'): (1, 'k'), ('k', 'i'): (1, 'j'), ('k', 'j'): (-1, 'i'), ('k', 'k'): (-1, '1')}
    elements = [(s, u) for u in '1ijk' for s in (1, -1)]
    index = {e: i for i, e in enumerate(elements)}
    table = []
    for s1, u1 in elements:
        row = []
        for s2, u2 in elements:
            s, u = units[(u1, u2)]
            row.append(index[(s1 * s2 * s, u)])
        table.append(row)
    return GroupTable(table, 'Q8')


def builtin_group(name: str) -> GroupTable:
    """``Z<k>``, ``Z2xZ2``, ``S3`` or ``Q8``."""
    match = re.fullmatch(r'Z(\d+)', name)
    if match and int(match.group(1)) >= 1:
        return cyclic_group(int(match.group(1)))
    if name == 'Z2xZ2':
        return klein_group()
    if name == 'S3':
        return symmetric_group_3()
    if name == 'Q8':
        return quaternion_group()
    raise ValueError(f"Unknown group: {name}")


def parse_group_table(text: str, name: str = 'G') -> GroupTable:
    """
    Parse ``group <k>`` followed by ``k`` rows of ``k`` indices.

    Raises:
        ParseError: malformed document.
        HopfAlgebraError: the table is not a group.
    """
    order = None
    rows = []
    for lineno, raw in enumerate(text.split('\n'), 1):
        content = raw.split('#', 1)[0].split()
        if not content:
            continue
        if order is None:
            if len(content) != 2 or content[0] != 'group' or not content[1].isdigit():
                raise ParseError("expected header 'group <k>'", lineno, 1)
            order = int(content[1])
            continue
        if len(content) != order or not all(t.isdigit() for t in content):
            raise ParseError(f"expected {order} indices", lineno, 1)
        rows.append([int(t) for t in content])
    if order is None:
        raise ParseError("missing 'group <k>' header", 1, 1)
    if len(rows) != order:
        raise ParseError(f"expected {order} rows, found {len(rows)}")
    return GroupTable(rows, name)


@dataclass
class HopfAlgebraSpec:
    dim: int
    field: ScalarField
    M: np.ndarray
    Delta: np.ndarray
    S: np.ndarray
    trace: np.ndarray
    cotrace: np.ndarray
    name: str = 'H'

    def __post_init__(self):
        self.check_axioms()

    def check_axioms(self):
        """
        Raises:
            HopfAlgebraError: wrong shapes, or associativity,
                coassociativity or involutivity fails.
        """
        d = self.dim
        shapes = {'M': (d, d, d), 'Delta': (d, d, d), 'S': (d, d), 'trace': (d,), 'cotrace': (d,)}
        for key, shape in shapes.items():
            if getattr(self, key).shape != shape:
                raise HopfAlgebraError(f"{key} has shape {getattr(self, key).shape}, expected {shape}")
        reduce = self.field.reduce
        left = reduce(np.tensordot(self.M, self.M, ([1], [0])).transpose(0, 2, 3, 1))
        right = reduce(np.tensordot(self.M, self.M, ([2], [0])))
        if not np.array_equal(left, right):
            raise HopfAlgebraError(f"{self.name}: multiplication is not associative")
        left = reduce(np.tensordot(self.Delta, self.Delta, ([2], [0])))
        right = reduce(np.tensordot(self.Delta, self.Delta, ([2], [1])).transpose(2, 0, 1, 3))
        if not np.array_equal(left, right):
            raise HopfAlgebraError(f"{self.name}: comultiplication is not coassociative")
        square = reduce(np.tensordot(self.S, self.S, ([1], [0])))
        if not np.array_equal(square, self.field.array(np.eye(d, dtype=int), (d, d))):
            raise HopfAlgebraError(f"{self.name}: antipode is not an involution")


def group_algebra(group: GroupTable, field: Optional[ScalarField] = None) -> HopfAlgebraSpec:
    """Group algebra ``F[G]`` with ``trace = dim * [a = e]`` and ``cotrace = 1``."""
    field = field or ScalarField('Q')
    k = group.order
    M = np.zeros((k, k, k), dtype=int)
    Delta = np.zeros((k, k, k), dtype=int)
    S = np.zeros((k, k), dtype=int)
    for b in range(k):
        for c in range(k):
            M[group.multiply(b, c), b, c] = 1
        Delta[b, b, b] = 1
        S[group.inverse(b), b] = 1
    trace = np.zeros(k, dtype=int)
    trace[0] = k
    cotrace = np.ones(k, dtype=int)
    return HopfAlgebraSpec(k, field, field.array(M, M.shape), field.array(Delta, Delta.shape),
                           field.array(S, S.shape), field.array(trace, (k,)),
                           field.array(cotrace, (k,)), f"{field.name}[{group.name}]")


_BLOCKS = ('M', 'Delta', 'S', 'trace', 'cotrace')


def parse_hopf_algebra(text: str, name: str = 'H') -> HopfAlgebraSpec:
    """
    Parse ``hopf <dim> <field>`` followed by the blocks ``M:``, ``Delta:``,
    ``S:``, ``trace:`` and ``cotrace:`` of row-major rational entries.

    Raises:
        ParseError: malformed document or wrong entry counts.
        HopfAlgebraError: the tensors fail the Hopf axioms.
    """
    header = None
    blocks = {}
    current = None
    for lineno, raw in enumerate(text.split('\n'), 1):
        tokens = raw.split('#', 1)[0].split()
        if not tokens:
            continue
        if header is None:
            if len(tokens) != 3 or tokens[0] != 'hopf' or not tokens[1].isdigit():
                raise ParseError("expected header 'hopf <dim> <field>'", lineno, 1)
            try:
                header = (int(tokens[1]), ScalarField(tokens[2]))
            except ValueError as exc:
                raise ParseError(str(exc), lineno, 1)
            continue
        if tokens[0].endswith(':'):
            current = tokens[0][:-1]
            if current not in _BLOCKS:
                raise ParseError(f"unknown block {current!r}", lineno, 1)
            if current in blocks:
                raise ParseError(f"block {current!r} given twice", lineno, 1)
            blocks[current] = []
            tokens = tokens[1:]
        if current is None:
            raise ParseError("entries before the first block", lineno, 1)
        for token in tokens:
            try:
                blocks[current].append(Fraction(token))
            except (ValueError, ZeroDivisionError):
                raise ParseError(f"bad entry {token!r}", lineno, 1)
    if header is None:
        raise ParseError("missing 'hopf' header", 1, 1)
    dim, field = header
    shapes = {'M': (dim, dim, dim), 'Delta': (dim, dim, dim), 'S': (dim, dim),
              'trace': (dim,), 'cotrace': (dim,)}
    arrays = {}
    for key, shape in shapes.items():
        if key not in blocks:
            raise ParseError(f"missing block {key!r}")
        if len(blocks[key]) != int(np.prod(shape)):
            raise ParseError(f"block {key!r} needs {int(np.prod(shape))} entries, found {len(blocks[key])}")
        arrays[key] = field.array(blocks[key], shape)
    return HopfAlgebraSpec(dim, field, name=name, **arrays)

"""
Gluing-table triangulations of 3-manifolds.

A triangulation is a set of ``n`` abstract tetrahedra whose faces are
identified in pairs. Face ``k`` of a tetrahedron is the triangle that omits
vertex ``k``. A gluing of face ``k`` of tet ``i`` to tet ``j`` carries a
permutation ``p`` of {0,1,2,3}: vertex ``a`` of tet ``i`` is identified with
vertex ``p[a]`` of tet ``j`` and the partner face is ``p[k]``.

Text format::

    tri 2
    # comments start with '#'
    0: 1/1023 1/1023 1/0132 1/0132
    1: 0/1023 0/1023 0/0132 0/0132

An entry is ``-`` for an unglued face or ``j/abcd`` for a gluing.
"""

import functools
import hashlib
import itertools
import logging
import re
from collections import deque
from dataclasses import dataclass
from typing import Dict, Iterator, List, NamedTuple, Optional, Sequence, Tuple

from trisparse.errors import NonOrientableError, NotClosedError, ParseError, TrisparseError
from trisparse.graphs import Multigraph

logger = logging.getLogger(__name__)

_TET_LINE = re.compile(r'^\s*(\S+?)\s*:(.*)$')
_ENTRY = re.compile(r'^(\d+)/([0-9]{4})$')


@dataclass(frozen=True)
class Perm4:
    """Permutation of {0,1,2,3}; ``images[i]`` is the image of ``i``."""
    images: Tuple[int, int, int, int]

    def __post_init__(self):
        object.__setattr__(self, 'images', tuple(self.images))
        if len(self.images) != 4 or sorted(self.images) != [0, 1, 2, 3]:
            raise ValueError(f"not a permutation of 0..3: {self.images}")

    @classmethod
    def from_string(cls, text: str) -> 'Perm4':
        """Parse the four-digit encoding ``abcd``."""
        if len(text) != 4 or not text.isdigit():
            raise ValueError(f"bad permutation: {text!r}")
        return cls(tuple(int(c) for c in text))

    @classmethod
    def identity(cls) -> 'Perm4':
        return cls((0, 1, 2, 3))

    @classmethod
    def swap(cls, a: int, b: int) -> 'Perm4':
        images = [0, 1, 2, 3]
        images[a], images[b] = b, a
        return cls(tuple(images))

    def __getitem__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: 'Perm4') -> 'Perm4':
        """Composition ``self o other`` (apply ``other`` first)."""
        return Perm4(tuple(self.images[other.images[i]] for i in range(4)))

    def inverse(self) -> 'Perm4':
        return _inverse(self.images)

    def sign(self) -> int:
        inversions = sum(1 for a, b in itertools.combinations(self.images, 2) if a > b)
        return -1 if inversions % 2 else 1

    def __str__(self):
        return ''.join(str(i) for i in self.images)


@functools.lru_cache(maxsize=None)
def _inverse(images: Tuple[int, ...]) -> Perm4:
    inv = [0, 0, 0, 0]
    for i, image in enumerate(images):
        inv[image] = i
    return Perm4(tuple(inv))


class Gluing(NamedTuple):
    """Destination of one face: partner tet, partner face, vertex map."""
    tet: int
    face: int
    perm: Perm4


class Triangulation:
    """
    Immutable gluing table.

    The constructor checks that the gluing relation is an involution; use
    :class:`GluingTable` to assemble one incrementally.
    """

    def __init__(self, size: int, gluings: Sequence[Sequence[Optional[Gluing]]],
                 orientation: Optional[Sequence[int]] = None):
        if size < 0 or len(gluings) != size:
            raise TrisparseError(f"expected {size} gluing rows, got {len(gluings)}")
        self.size = size
        self._gluings = tuple(tuple(row) for row in gluings)
        for t, row in enumerate(self._gluings):
            if len(row) != 4:
                raise TrisparseError(f"tet {t} needs 4 face entries")
        self._check_involution()
        self.orientation = None
        if orientation is not None:
            self.orientation = tuple(int(s) for s in orientation)
            self._check_orientation()

    def _check_involution(self):
        for t, f, g in self.face_entries():
            if g is None:
                continue
            if not 0 <= g.tet < self.size:
                raise TrisparseError(f"face {f} of tet {t} glued to missing tet {g.tet}")
            if g.perm[f] != g.face:
                raise TrisparseError(f"face {f} of tet {t}: partner face must be {g.perm[f]}")
            if (g.tet, g.face) == (t, f):
                raise TrisparseError(f"face {f} of tet {t} glued to itself")
            back = self._gluings[g.tet][g.face]
            if back is None or back.tet != t or back.face != f or back.perm != g.perm.inverse():
                raise TrisparseError(
                    f"non-involutive gluing: ({t},{f}) -> ({g.tet},{g.face})")

    def _check_orientation(self):
        if len(self.orientation) != self.size or any(s not in (1, -1) for s in self.orientation):
            raise TrisparseError("orientation needs one sign in {+1,-1} per tet")
        for t, f, g in self.glued_faces():
            if self.orientation[t] * self.orientation[g.tet] * g.perm.sign() != -1:
                raise NonOrientableError(
                    f"gluing of face {f} of tet {t} does not reverse orientation")

    @property
    def n(self) -> int:
        return self.size

    def gluing(self, tet: int, face: int) -> Optional[Gluing]:
        return self._gluings[tet][face]

    def face_entries(self) -> Iterator[Tuple[int, int, Optional[Gluing]]]:
        for t, row in enumerate(self._gluings):
            for f, g in enumerate(row):
                yield t, f, g

    def glued_faces(self) -> Iterator[Tuple[int, int, Gluing]]:
        """Every glued face, both sides of each pair."""
        for t, f, g in self.face_entries():
            if g is not None:
                yield t, f, g

    def glued_pairs(self) -> Iterator[Tuple[int, int, Gluing]]:
        """Each glued pair once, from its lexicographically smaller side."""
        for t, f, g in self.glued_faces():
            if (t, f) < (g.tet, g.face):
                yield t, f, g

    def unglued_faces(self) -> List[Tuple[int, int]]:
        return [(t, f) for t, f, g in self.face_entries() if g is None]

    def is_oriented(self) -> bool:
        return self.orientation is not None

    def with_orientation(self, signs: Optional[Sequence[int]]) -> 'Triangulation':
        return Triangulation(self.size, self._gluings, signs)

    def rows(self) -> Tuple[Tuple[Optional[Gluing], ...], ...]:
        return self._gluings

    def __eq__(self, other):
        if not isinstance(other, Triangulation):
            return NotImplemented
        return (self.size == other.size and self._gluings == other._gluings
                and self.orientation == other.orientation)

    def __hash__(self):
        return hash((self.size, self._gluings))

    def __repr__(self):
        glued = sum(1 for _ in self.glued_pairs())
        return f"Triangulation(n={self.size}, glued_pairs={glued})"


class GluingTable:
    """Mutable builder for :class:`Triangulation`."""

    def __init__(self, size: int = 0):
        self.rows: List[List[Optional[Gluing]]] = [[None] * 4 for _ in range(size)]

    @property
    def size(self) -> int:
        return len(self.rows)

    def add_tets(self, count: int = 1) -> int:
        """Append tetrahedra and return the index of the first one."""
        first = len(self.rows)
        self.rows.extend([None] * 4 for _ in range(count))
        return first

    def join(self, tet: int, face: int, other: int, perm: Perm4):
        """Glue face ``face`` of ``tet`` to tet ``other`` via ``perm`` (both sides)."""
        other_face = perm[face]
        if self.rows[tet][face] is not None:
            raise TrisparseError(f"face {face} of tet {tet} is already glued")
        if self.rows[other][other_face] is not None and (other, other_face) != (tet, face):
            raise TrisparseError(f"face {other_face} of tet {other} is already glued")
        if (other, other_face) == (tet, face):
            raise TrisparseError(f"face {face} of tet {tet} glued to itself")
        self.rows[tet][face] = Gluing(other, other_face, perm)
        self.rows[other][other_face] = Gluing(tet, face, perm.inverse())

    def build(self, orientation: Optional[Sequence[int]] = None) -> Triangulation:
        return Triangulation(len(self.rows), self.rows, orientation)


def parse_triangulation(text: str) -> Triangulation:
    """
    Parse a gluing-table document.

    Raises:
        ParseError: syntax errors, tet indices out of range, faces glued twice
            and non-involutive gluings, each with line and column.
    """
    size = None
    rows: List[List[Optional[Gluing]]] = []
    where: Dict[Tuple[int, int], Tuple[int, int]] = {}
    seen_lines: Dict[int, int] = {}

    for lineno, raw in enumerate(text.split('\n'), 1):
        content = raw.split('#', 1)[0]
        if not content.strip():
            continue
        if size is None:
            tokens = content.split()
            if len(tokens) != 2 or tokens[0] != 'tri' or not tokens[1].isdigit():
                raise ParseError("expected header 'tri <n>'", lineno, raw.find(content.strip()) + 1)
            size = int(tokens[1])
            rows = [[None] * 4 for _ in range(size)]
            continue

        match = _TET_LINE.match(content)
        if match is None or not match.group(1).isdigit():
            raise ParseError("expected '<tet>: A0 A1 A2 A3'", lineno, 1)
        tet = int(match.group(1))
        if tet >= size:
            raise ParseError(f"tet index {tet} out of range (n={size})", lineno, match.start(1) + 1)
        if tet in seen_lines:
            raise ParseError(f"tet {tet} listed twice (first on line {seen_lines[tet]})",
                             lineno, match.start(1) + 1)
        seen_lines[tet] = lineno

        entries = list(re.finditer(r'\S+', match.group(2)))
        offset = match.start(2)
        if len(entries) != 4:
            raise ParseError(f"tet {tet} needs 4 face entries, got {len(entries)}", lineno,
                             offset + 1)
        for face, token_match in enumerate(entries):
            token = token_match.group(0)
            column = offset + token_match.start() + 1
            where[(tet, face)] = (lineno, column)
            if token == '-':
                continue
            entry = _ENTRY.match(token)
            if entry is None:
                raise ParseError(f"bad face entry {token!r}", lineno, column)
            other = int(entry.group(1))
            if other >= size:
                raise ParseError(f"tet index {other} out of range (n={size})", lineno, column)
            try:
                perm = Perm4.from_string(entry.group(2))
            except ValueError:
                raise ParseError(f"bad permutation {entry.group(2)!r}", lineno, column)
            rows[tet][face] = Gluing(other, perm[face], perm)

    if size is None:
        raise ParseError("empty document: missing 'tri <n>' header", 1, 1)
    missing = [t for t in range(size) if t not in seen_lines]
    if missing:
        raise ParseError(f"tet {missing[0]} has no gluing line")

    claims: Dict[Tuple[int, int], int] = {}
    for t in range(size):
        for f in range(4):
            g = rows[t][f]
            if g is not None:
                claims[(g.tet, g.face)] = claims.get((g.tet, g.face), 0) + 1

    for t in range(size):
        for f in range(4):
            g = rows[t][f]
            if g is None:
                continue
            line, column = where[(t, f)]
            if (g.tet, g.face) == (t, f):
                raise ParseError(f"face {f} of tet {t} glued to itself", line, column)
            if claims[(g.tet, g.face)] > 1:
                raise ParseError(f"face {g.face} of tet {g.tet} glued twice", line, column)
            back = rows[g.tet][g.face]
            if back is None or (back.tet, back.face) != (t, f) or back.perm != g.perm.inverse():
                raise ParseError(
                    f"non-involutive gluing: ({t},{f}) -> ({g.tet},{g.face})", line, column)

    return Triangulation(size, rows)


def write_triangulation(tri: Triangulation) -> str:
    """Canonical gluing-table text (no comments, LF line endings)."""
    lines = [f"tri {tri.size}"]
    for t, row in enumerate(tri.rows()):
        entries = ['-' if g is None else f"{g.tet}/{g.perm}" for g in row]
        lines.append(f"{t}: " + ' '.join(entries))
    return '\n'.join(lines) + '\n'


def triangulation_digest(tri: Triangulation) -> str:
    """SHA-256 of the canonical text; identifies the gluing table."""
    return hashlib.sha256(write_triangulation(tri).encode('utf-8')).hexdigest()


def dual_graph(tri: Triangulation) -> Multigraph:
    """
    Face-pairing graph.

    Node ``t`` is tet ``t``. Edges are listed in the order of
    :meth:`Triangulation.glued_pairs`; edge ``i`` is labeled
    ``(tet, face, partner tet, partner face)`` of the ``i``-th pair.
    """
    graph = Multigraph(tri.size)
    for t, f, g in tri.glued_pairs():
        graph.add_edge(t, g.tet, label=(t, f, g.tet, g.face))
    return graph


def orient(tri: Triangulation) -> Triangulation:
    """
    Assign tet signs so every gluing reverses orientation.

    Signs propagate breadth-first from the least tet of each component,
    which gets +1.

    Raises:
        NotClosedError: a face is unglued.
        NonOrientableError: the parity constraints contradict each other.
    """
    unglued = tri.unglued_faces()
    if unglued:
        t, f = unglued[0]
        raise NotClosedError(f"face {f} of tet {t} is unglued")
    signs = [0] * tri.size
    for start in range(tri.size):
        if signs[start]:
            continue
        signs[start] = 1
        queue = deque([start])
        while queue:
            t = queue.popleft()
            for f in range(4):
                g = tri.gluing(t, f)
                wanted = -signs[t] * g.perm.sign()
                if signs[g.tet] == 0:
                    signs[g.tet] = wanted
                    queue.append(g.tet)
                elif signs[g.tet] != wanted:
                    raise NonOrientableError(
                        f"gluing of face {f} of tet {t} cannot reverse orientation")
    return tri.with_orientation(signs)


def relabel(tri: Triangulation, tet_order: Sequence[int],
            vertex_maps: Optional[Sequence[Perm4]] = None) -> Triangulation:
    """
    Isomorphic copy: tet ``t`` becomes ``tet_order[t]`` and its local
    vertex ``a`` becomes ``vertex_maps[t][a]``.
    """
    if sorted(tet_order) != list(range(tri.size)):
        raise TrisparseError("tet_order must be a permutation of the tets")
    maps = list(vertex_maps) if vertex_maps is not None else [Perm4.identity()] * tri.size
    rows: List[List[Optional[Gluing]]] = [[None] * 4 for _ in range(tri.size)]
    for t, f, g in tri.glued_faces():
        new_perm = maps[g.tet] * g.perm * maps[t].inverse()
        rows[tet_order[t]][maps[t][f]] = Gluing(tet_order[g.tet], maps[g.tet][g.face], new_perm)
    orientation = None
    if tri.orientation is not None:
        orientation = [0] * tri.size
        for t, s in enumerate(tri.orientation):
            orientation[tet_order[t]] = s * maps[t].sign()
    return Triangulation(tri.size, rows, orientation)


def disjoint_union(first: Triangulation, second: Triangulation) -> Triangulation:
    """Tets of ``second`` follow those of ``first``."""
    shift = first.size
    rows = [list(row) for row in first.rows()]
    for row in second.rows():
        rows.append([None if g is None else Gluing(g.tet + shift, g.face, g.perm) for g in row])
    orientation = None
    if first.orientation is not None and second.orientation is not None:
        orientation = first.orientation + second.orientation
    return Triangulation(first.size + second.size, rows, orientation)


# Sub-tetrahedron (t, pi): local vertices are pi[0], the midpoint of
# pi[0]pi[1], the center of face pi[0]pi[1]pi[2] and the center of t.
SUBDIVISION_PERMS: Tuple[Tuple[int, ...], ...] = tuple(itertools.permutations(range(4)))
_SUBDIVISION_INDEX = {p: i for i, p in enumerate(SUBDIVISION_PERMS)}


def _perm_sign(p: Tuple[int, ...]) -> int:
    return Perm4(p).sign()


def barycentric_subdivision(tri: Triangulation) -> Triangulation:
    """
    Barycentric subdivision with 24 tets per tet.

    Sub-tet ``(t, pi)`` gets index ``24*t + k`` where ``pi`` is the ``k``-th
    permutation in ``itertools.permutations`` order. Orientation, if set,
    is carried over as ``sign(t) * sign(pi)``.
    """
    table = GluingTable(24 * tri.size)
    identity = Perm4.identity()
    for t in range(tri.size):
        for k, pi in enumerate(SUBDIVISION_PERMS):
            here = 24 * t + k
            for i in range(3):
                swapped = list(pi)
                swapped[i], swapped[i + 1] = swapped[i + 1], swapped[i]
                there = 24 * t + _SUBDIVISION_INDEX[tuple(swapped)]
                if (here, i) < (there, i):
                    table.join(here, i, there, identity)
            g = tri.gluing(t, pi[3])
            if g is None:
                continue
            image = tuple(g.perm[v] for v in pi)
            there = 24 * g.tet + _SUBDIVISION_INDEX[image]
            if (here, 3) < (there, 3):
                table.join(here, 3, there, identity)
    orientation = None
    if tri.orientation is not None:
        orientation = [tri.orientation[t] * _perm_sign(pi)
                       for t in range(tri.size) for pi in SUBDIVISION_PERMS]
    result = table.build(orientation)
    logger.debug("subdivided %d tets into %d", tri.size, result.size)
    return result

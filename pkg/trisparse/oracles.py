"""
Independent ground truth for triangulations.

Integral homology of the quotient cell complex, an edge-path presentation
of the fundamental group, and brute-force homomorphism counts into finite
groups. None of these share code with the Heegaard or tensor-network
pipeline they are used to check.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import networkx as nx

from trisparse.config import get_config
from trisparse.errors import DisconnectedError, SearchSpaceError
from trisparse.graphs import bfs_tree_edges
from trisparse.hopf import GroupTable
from trisparse.skeleton import SkeletonSummary, compute_skeleton
from trisparse.smith import invariant_factors
from trisparse.triangulation import Triangulation, dual_graph

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AbelianGroup:
    """``Z^rank`` plus cyclic torsion ``Z/d`` for each ``d`` in ``torsion``."""
    rank: int = 0
    torsion: Tuple[int, ...] = ()

    @classmethod
    def from_factors(cls, generators: int, factors: Sequence[int]) -> 'AbelianGroup':
        """Cokernel of a relation matrix with ``generators`` columns."""
        return cls(generators - len(factors), tuple(d for d in factors if d > 1))

    @property
    def is_trivial(self) -> bool:
        return self.rank == 0 and not self.torsion

    @property
    def order(self) -> Optional[int]:
        """Number of elements, ``None`` when infinite."""
        return math.prod(self.torsion) if self.rank == 0 else None

    def __str__(self):
        parts = [f"Z/{d}" for d in self.torsion]
        if self.rank:
            parts.append('Z' if self.rank == 1 else f"Z^{self.rank}")
        return ' + '.join(parts) if parts else '0'


@dataclass(frozen=True)
class HomologyResult:
    groups: Tuple[AbelianGroup, AbelianGroup, AbelianGroup, AbelianGroup]

    def __getitem__(self, dimension: int) -> AbelianGroup:
        return self.groups[dimension]

    def betti_numbers(self) -> List[int]:
        return [g.rank for g in self.groups]

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * g.rank for k, g in enumerate(self.groups))

    def __str__(self):
        return ', '.join(f"H{k}={g}" for k, g in enumerate(self.groups))


def _face_parity(tri: Triangulation, s: SkeletonSummary, tet: int, face: int) -> int:
    """+1 if the face's increasing vertex order matches its triangle's representative."""
    rep = s.triangle_reps[s.triangle_class[tet][face]]
    if rep == (tet, face):
        return 1
    g = tri.gluing(tet, face)
    images = [g.perm[i] for i in range(4) if i != face]
    inversions = sum(1 for a in range(3) for b in range(a + 1, 3) if images[a] > images[b])
    return -1 if inversions % 2 else 1


def boundary_matrices(tri: Triangulation, skeleton: Optional[SkeletonSummary] = None
                      ) -> Tuple[List[List[int]], List[List[int]], List[List[int]]]:
    """
    Cellular boundary maps ``d1`` (v x e), ``d2`` (e x f) and ``d3`` (f x n).

    Edges run from the lesser to the greater vertex of their representative,
    triangles are ordered by the vertices of their representative face and
    tets by their local vertices.
    """
    s = skeleton or compute_skeleton(tri)
    d1 = [[0] * s.e for _ in range(s.v)]
    for e, (start, end) in enumerate(s.edge_endpoints):
        d1[end][e] += 1
        d1[start][e] -= 1
    d2 = [[0] * s.f for _ in range(s.e)]
    for tau, (t, f) in enumerate(s.triangle_reps):
        a, b, c = (i for i in range(4) if i != f)
        for x, y, sign in ((b, c, 1), (a, c, -1), (a, b, 1)):
            d2[s.edge_of(t, x, y)][tau] += sign * s.aligned(t, x, y)
    d3 = [[0] * s.n for _ in range(s.f)]
    for t in range(s.n):
        for f in range(4):
            sign = -1 if f % 2 else 1
            d3[s.triangle_class[t][f]][t] += sign * _face_parity(tri, s, t, f)
    return d1, d2, d3


def homology(tri: Triangulation) -> HomologyResult:
    """Integral homology of the quotient complex in dimensions 0..3."""
    s = compute_skeleton(tri)
    d1, d2, d3 = boundary_matrices(tri, s)
    factors = [[], invariant_factors(d1), invariant_factors(d2), invariant_factors(d3), []]
    sizes = [s.v, s.e, s.f, s.n]
    groups = []
    for k in range(4):
        rank = sizes[k] - len(factors[k]) - len(factors[k + 1])
        groups.append(AbelianGroup(rank, tuple(d for d in factors[k + 1] if d > 1)))
    result = HomologyResult(tuple(groups))
    logger.debug("homology: %s", result)
    return result


Word = Tuple[int, ...]


def free_reduce(word: Sequence[int]) -> Word:
    out: List[int] = []
    for letter in word:
        if out and out[-1] == -letter:
            out.pop()
        else:
            out.append(letter)
    return tuple(out)


def cyclic_reduce(word: Sequence[int]) -> Word:
    word = list(free_reduce(word))
    while len(word) > 1 and word[0] == -word[-1]:
        word = word[1:-1]
    return tuple(word)


@dataclass(frozen=True)
class GroupPresentation:
    """Generators ``1..generator_count``; letter ``-i`` is the inverse of ``i``."""
    generator_count: int
    relators: Tuple[Word, ...] = field(default=())

    def __post_init__(self):
        for word in self.relators:
            for letter in word:
                if letter == 0 or abs(letter) > self.generator_count:
                    raise ValueError(f"letter {letter} outside 1..{self.generator_count}")

    def relation_matrix(self) -> List[List[int]]:
        """Exponent sums, one row per relator."""
        rows = []
        for word in self.relators:
            row = [0] * self.generator_count
            for letter in word:
                row[abs(letter) - 1] += 1 if letter > 0 else -1
            rows.append(row)
        return rows


def pi1_presentation(tri: Triangulation) -> GroupPresentation:
    """
    Edge-path presentation of the fundamental group.

    Generators are the edges outside a breadth-first spanning tree of the
    1-skeleton grown from vertex 0; each triangle contributes the word read
    around its representative face in vertex order, cyclically reduced.
    Empty relators are dropped.

    Raises:
        DisconnectedError: ``tri`` is not connected.
    """
    if tri.size and not nx.is_connected(dual_graph(tri).simple_graph()):
        raise DisconnectedError("fundamental group needs a connected triangulation")
    s = compute_skeleton(tri)
    tree = bfs_tree_edges(s.v, s.edge_endpoints)
    letter = {}
    for e in range(s.e):
        if e not in tree:
            letter[e] = len(letter) + 1
    relators = []
    for t, f in s.triangle_reps:
        a, b, c = (i for i in range(4) if i != f)
        word = []
        for x, y in ((a, b), (b, c), (c, a)):
            e = s.edge_of(t, x, y)
            if e in letter:
                word.append(letter[e] * s.aligned(t, x, y))
        reduced = cyclic_reduce(word)
        if reduced:
            relators.append(reduced)
    presentation = GroupPresentation(len(letter), tuple(relators))
    logger.debug("pi1 presentation: %d generators, %d relators", presentation.generator_count,
                 len(presentation.relators))
    return presentation


def abelianization(presentation: GroupPresentation) -> AbelianGroup:
    rows = presentation.relation_matrix()
    factors = invariant_factors(rows) if rows else []
    return AbelianGroup.from_factors(presentation.generator_count, factors)


def _word_value(word: Word, values: List[Optional[int]], group: GroupTable) -> Optional[int]:
    result = 0
    for letter in word:
        value = values[abs(letter) - 1]
        if value is None:
            return None
        result = group.multiply(result, value if letter > 0 else group.inverse(value))
    return result


def _forced_value(word: Word, values: List[Optional[int]], group: GroupTable) -> Optional[Tuple[int, int]]:
    """If exactly one letter of ``word`` is unassigned, the value the relator forces on it."""
    open_positions = [i for i, letter in enumerate(word) if values[abs(letter) - 1] is None]
    if len(open_positions) != 1:
        return None
    i = open_positions[0]
    letter = word[i]
    rest = _word_value(word[i + 1:] + word[:i], values, group)
    value = group.inverse(rest) if letter > 0 else rest
    return abs(letter) - 1, value


def hom_count(presentation: GroupPresentation, group: GroupTable, budget: Optional[int] = None) -> int:
    """
    Number of homomorphisms from the presented group into ``group``.

    Backtracking over generator images; a relator with a single open letter
    fixes that letter, otherwise the generator in the most open relators is
    branched on (lowest index on ties).

    The budget bounds visited search nodes rather than the ``|G| ** r``
    assignments, so presentations whose relators force most generators
    stay cheap however many generators they have.

    Raises:
        SearchSpaceError: more than ``budget`` search nodes
            (``Config.HOM_SEARCH_BUDGET`` by default).
    """
    budget = budget or get_config().HOM_SEARCH_BUDGET
    r = presentation.generator_count
    relators = presentation.relators
    values: List[Optional[int]] = [None] * r
    occurs = [[] for _ in range(r)]
    for index, word in enumerate(relators):
        for g in {abs(letter) - 1 for letter in word}:
            occurs[g].append(index)
    nodes = 0

    def search(free: int) -> int:
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise SearchSpaceError(f"homomorphism search exceeded {budget} nodes")
        forced = None
        for word in relators:
            value = _word_value(word, values, group)
            if value is not None:
                if value != 0:
                    return 0
                continue
            if forced is None:
                forced = _forced_value(word, values, group)
        if free == 0:
            return 1
        if forced is not None:
            g, value = forced
            values[g] = value
            count = search(free - 1)
            values[g] = None
            return count
        open_counts = [(-sum(1 for i in occurs[g] if _word_value(relators[i], values, group) is None), g)
                       for g in range(r) if values[g] is None]
        _, g = min(open_counts)
        count = 0
        for value in range(group.order):
            values[g] = value
            count += search(free - 1)
        values[g] = None
        return count

    count = search(r)
    logger.debug("hom count into %s: %d (%d search nodes)", group.name, count, nodes)
    return count


def abelian_hom_count(group: AbelianGroup, k: int) -> int:
    """``#Hom(group, Z/k) = prod(gcd(d, k)) * k**rank``."""
    return math.prod(math.gcd(d, k) for d in group.torsion) * k ** group.rank

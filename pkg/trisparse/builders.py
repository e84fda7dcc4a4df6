"""Ready-made triangulations used by the CLI, the data files and the tests."""

import itertools
import logging
import random
from typing import Iterator, List, Optional

import networkx as nx

from trisparse.config import get_config
from trisparse.errors import TrisparseError
from trisparse.skeleton import is_closed_manifold
from trisparse.triangulation import (GluingTable, Perm4, Triangulation, dual_graph,
                                     parse_triangulation)

logger = logging.getLogger(__name__)

S3_TABLE = """\
tri 1
0: 0/3012 0/0213 0/0213 0/1230
"""

RP3_TABLE = """\
tri 2
0: 1/1023 1/1023 1/0132 1/0132
1: 0/1023 0/1023 0/0132 0/0132
"""

# Every gluing is orientation-preserving on the face, so no orientation exists.
NONORIENTABLE_TABLE = """\
tri 1
0: 0/3012 0/0231 0/0312 0/1230
"""


def single_tetrahedron() -> Triangulation:
    return GluingTable(1).build()


def two_tetrahedra_one_face() -> Triangulation:
    table = GluingTable(2)
    table.join(0, 0, 1, Perm4.identity())
    return table.build()


def two_tetrahedra_example() -> Triangulation:
    """Two tets, a double gluing between them and one self-gluing."""
    table = GluingTable(2)
    table.join(0, 0, 1, Perm4.from_string('2103'))
    table.join(0, 1, 1, Perm4.from_string('1023'))
    table.join(1, 1, 1, Perm4.from_string('0321'))
    return table.build()


def s3() -> Triangulation:
    """One-tetrahedron 3-sphere."""
    return parse_triangulation(S3_TABLE)


def rp3() -> Triangulation:
    """Two-tetrahedron real projective space."""
    return parse_triangulation(RP3_TABLE)


def nonorientable_one_tet() -> Triangulation:
    return parse_triangulation(NONORIENTABLE_TABLE)


def double_bipyramid(k: int) -> Triangulation:
    """
    Two ``k``-gonal bipyramids glued along their boundary: a 3-sphere.

    Tet ``c*k + i`` of copy ``c`` has local vertices north, south, ``x_i``
    and ``x_{i+1}``. The two north-south axes have valence ``k``, so the
    maximum valence is ``max(k, 4)`` with ``2k`` tets and ``k+2`` vertices.
    """
    if k < 3:
        raise ValueError("a bipyramid needs at least 3 sides")
    table = GluingTable(2 * k)
    around = Perm4.from_string('0132')
    for copy in (0, 1):
        for i in range(k):
            table.join(copy * k + i, 2, copy * k + (i + 1) % k, around)
    for i in range(k):
        table.join(i, 0, k + i, Perm4.identity())
        table.join(i, 1, k + i, Perm4.identity())
    return table.build()


def _face_maps(a: int, b: int) -> Iterator[Perm4]:
    """Permutations sending vertex ``a`` to ``b``, i.e. face ``a`` onto face ``b``."""
    sources = [i for i in range(4) if i != a]
    targets = [i for i in range(4) if i != b]
    for images in itertools.permutations(targets):
        mapping = [0] * 4
        mapping[a] = b
        for src, dst in zip(sources, images):
            mapping[src] = dst
        yield Perm4(tuple(mapping))


def enumerate_one_tet_gluings() -> List[Triangulation]:
    """All 108 one-tetrahedron tables with every face glued."""
    tables = []
    for first, second in ([(0, 1), (2, 3)], [(0, 2), (1, 3)], [(0, 3), (1, 2)]):
        for p in _face_maps(*first):
            for q in _face_maps(*second):
                table = GluingTable(1)
                table.join(0, first[0], 0, p)
                table.join(0, second[0], 0, q)
                tables.append(table.build())
    return tables


def random_closed_triangulation(n: int, rng: Optional[random.Random] = None,
                                attempts: Optional[int] = None) -> Triangulation:
    """
    Random connected closed orientable triangulation with ``n`` tets.

    Faces are paired at random with orientation-reversing maps until a
    pairing passes :func:`is_closed_manifold`.

    Raises:
        TrisparseError: no closed pairing within ``attempts`` tries.
    """
    if n < 1:
        raise ValueError("n must be positive")
    rng = rng or random.Random(get_config().DEFAULT_SEED)
    attempts = attempts or get_config().RANDOM_ATTEMPTS
    faces = [(t, f) for t in range(n) for f in range(4)]
    for attempt in range(attempts):
        rng.shuffle(faces)
        table = GluingTable(n)
        for (t, f), (u, g) in zip(faces[0::2], faces[1::2]):
            odd = [p for p in _face_maps(f, g) if p.sign() == -1]
            table.join(t, f, u, rng.choice(odd))
        tri = table.build()
        if nx.is_connected(dual_graph(tri).simple_graph()) and is_closed_manifold(tri):
            logger.debug("random closed triangulation after %d attempts", attempt + 1)
            return tri
    raise TrisparseError(f"no closed {n}-tet triangulation in {attempts} attempts")

"""
Quotient skeleton of a triangulation.

Vertices of the quotient are union-find classes of tet corners under the
face gluings; an edge is the set of incidences met by walking its link.
Every class is numbered by its lexicographically least incidence, which
is also its representative.
"""

import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, List, NamedTuple, Optional, Tuple

from networkx.utils import UnionFind

from trisparse.bounds import RadicalSum, certify_le
from trisparse.graphs import Multigraph
from trisparse.triangulation import Triangulation

logger = logging.getLogger(__name__)

# Faces of a tet containing the edge {i, j}, smaller first.
EDGE_FACES = {(i, j): tuple(sorted({0, 1, 2, 3} - {i, j}))
              for i in range(4) for j in range(4) if i != j}
LOCAL_EDGES = [(i, j) for i in range(4) for j in range(i + 1, 4)]


class EdgeStep(NamedTuple):
    """
    One incidence of an edge link walk.

    The edge sits in ``tet`` between local vertices ``tail`` and ``head``;
    the walk leaves ``tet`` through ``exit_face``.
    """
    tet: int
    tail: int
    head: int
    exit_face: int

    @property
    def entry_face(self) -> int:
        return third_face(self.tail, self.head, self.exit_face)


def third_face(a: int, b: int, c: int) -> int:
    """The element of {0,1,2,3} other than the three given."""
    return 6 - a - b - c


@dataclass
class SkeletonSummary:
    """Counts, classes and links of the quotient complex."""
    n: int
    v: int
    e: int
    f: int
    vertex_class: List[List[int]]
    edge_class: List[Dict[Tuple[int, int], int]]
    edge_alignment: List[Dict[Tuple[int, int], int]]
    triangle_class: List[List[int]]
    vertex_reps: List[Tuple[int, int]]
    edge_reps: List[Tuple[int, int, int]]
    triangle_reps: List[Tuple[int, int]]
    edge_endpoints: List[Tuple[int, int]]
    edge_valences: List[int]
    edge_links: List[Tuple[EdgeStep, ...]]
    edge_link_closed: List[bool]
    edge_reversed: List[bool]
    vertex_link_euler_chars: List[int]
    unglued_faces: List[Tuple[int, int]] = field(default_factory=list)

    @property
    def delta(self) -> int:
        """Maximum edge valence (0 for an empty triangulation)."""
        return max(self.edge_valences, default=0)

    @property
    def sum_valence(self) -> int:
        return sum(self.edge_valences)

    def valence_histogram(self) -> Dict[int, int]:
        return dict(sorted(Counter(self.edge_valences).items()))

    def edge_of(self, tet: int, a: int, b: int) -> int:
        return self.edge_class[tet][(a, b) if a < b else (b, a)]

    def aligned(self, tet: int, a: int, b: int) -> int:
        """+1 if ``a -> b`` in ``tet`` runs along the edge representative, else -1."""
        return self.edge_alignment[tet][(a, b)]


def _classes(items, uf: UnionFind) -> Tuple[Dict, List]:
    """Number classes by least member; ``items`` must be sorted."""
    class_of, index, reps = {}, {}, []
    for item in items:
        root = uf[item]
        if root not in index:
            index[root] = len(reps)
            reps.append(item)
        class_of[item] = index[root]
    return class_of, reps


def _walk(tri: Triangulation, start: EdgeStep) -> Tuple[List[EdgeStep], bool, bool]:
    """Steps from ``start``, whether they closed up, and whether the edge came back reversed."""
    steps = [start]
    entry = start.entry_face
    ends = {start.tail, start.head}
    state = start
    while True:
        g = tri.gluing(state.tet, state.exit_face)
        if g is None:
            return steps, False, False
        images = g.perm.images
        x, y = images[state.tail], images[state.head]
        if g.tet == start.tet and g.face == entry and {x, y} == ends:
            return steps, True, x != start.tail
        state = EdgeStep(g.tet, x, y, 6 - x - y - g.face)
        steps.append(state)


def _edge_link(tri: Triangulation, tet: int, a: int, b: int) -> Tuple[Tuple[EdgeStep, ...], bool, bool]:
    first, second = EDGE_FACES[(a, b)]
    forward, closed, flipped = _walk(tri, EdgeStep(tet, a, b, first))
    if closed:
        return tuple(forward), True, flipped
    backward, _, _ = _walk(tri, EdgeStep(tet, a, b, second))
    turned = [EdgeStep(s.tet, s.tail, s.head, s.entry_face) for s in reversed(backward[1:])]
    return tuple(turned + forward), False, False


def edge_link(tri: Triangulation, tet: int, a: int, b: int) -> Tuple[Tuple[EdgeStep, ...], bool]:
    """
    Incidences around the edge ``{a, b}`` of ``tet`` in walk order.

    The walk leaves through the smaller face containing the edge. For an
    edge on the boundary the link is a path, listed from one boundary end
    to the other.

    Returns:
        The steps and whether the link closed up into a cycle.
    """
    steps, closed, _ = _edge_link(tri, tet, a, b)
    return steps, closed


def compute_skeleton(tri: Triangulation) -> SkeletonSummary:
    """
    Quotient vertices, edges and triangles with links and valences.

    Edge classes are the edge links, walked from each class's least
    incidence; every step carries the orientation of the representative.
    Valences count incidences with multiplicity. Vertex link Euler
    characteristics are ``V - E + F`` of the link complex whose vertices are
    directed edge classes, whose edges are classes of (tet, vertex, face)
    corners and whose faces are the tet corners at the vertex.
    """
    n = tri.size
    vertex_uf = UnionFind()
    corners = [(t, i) for t in range(n) for i in range(4)]
    for item in corners:
        vertex_uf[item]
    for t, f, g in tri.glued_pairs():
        images = g.perm.images
        for i in range(4):
            if i != f:
                vertex_uf.union((t, i), (g.tet, images[i]))
    vertex_of, vertex_reps = _classes(corners, vertex_uf)
    vertex_class = [[vertex_of[(t, i)] for i in range(4)] for t in range(n)]
    v = len(vertex_reps)

    edge_class = [{} for _ in range(n)]
    edge_alignment = [{} for _ in range(n)]
    edge_reps, endpoints, valences = [], [], []
    links, closed, reversed_edges = [], [], []
    for t in range(n):
        for i, j in LOCAL_EDGES:
            if (i, j) in edge_class[t]:
                continue
            e = len(edge_reps)
            steps, is_closed, flipped = _edge_link(tri, t, i, j)
            against = 1 if flipped else -1
            for step in steps:
                a, b = step.tail, step.head
                edge_class[step.tet][(a, b) if a < b else (b, a)] = e
                edge_alignment[step.tet][(a, b)] = 1
                edge_alignment[step.tet][(b, a)] = against
            edge_reps.append((t, i, j))
            endpoints.append((vertex_class[t][i], vertex_class[t][j]))
            valences.append(len(steps))
            links.append(steps)
            closed.append(is_closed)
            reversed_edges.append(flipped)

    triangle_class = [[-1] * 4 for _ in range(n)]
    triangle_reps = []
    for t in range(n):
        for f in range(4):
            if triangle_class[t][f] >= 0:
                continue
            triangle_class[t][f] = len(triangle_reps)
            g = tri.gluing(t, f)
            if g is not None:
                triangle_class[g.tet][g.face] = len(triangle_reps)
            triangle_reps.append((t, f))

    # Link vertices are directed edge classes, one per end of an unreversed edge.
    link_vertices = [0] * v
    for (tail, head), flipped in zip(endpoints, reversed_edges):
        link_vertices[tail] += 1
        if not flipped:
            link_vertices[head] += 1
    # Link edges pair the corner (t, i) of face f with its image across f.
    link_edges = [0] * v
    link_faces = [0] * v
    for t in range(n):
        for f in range(4):
            g = tri.gluing(t, f)
            for i in range(4):
                if i == f:
                    link_faces[vertex_class[t][i]] += 1
                elif g is None or (t, i, f) <= (g.tet, g.perm.images[i], g.face):
                    link_edges[vertex_class[t][i]] += 1
    euler = [link_vertices[c] - link_edges[c] + link_faces[c] for c in range(v)]

    summary = SkeletonSummary(
        n=n, v=v, e=len(edge_reps), f=len(triangle_reps),
        vertex_class=vertex_class,
        edge_class=edge_class, edge_alignment=edge_alignment,
        triangle_class=triangle_class,
        vertex_reps=vertex_reps, edge_reps=edge_reps, triangle_reps=triangle_reps,
        edge_endpoints=endpoints, edge_valences=valences,
        edge_links=links, edge_link_closed=closed, edge_reversed=reversed_edges,
        vertex_link_euler_chars=euler, unglued_faces=tri.unglued_faces())
    logger.debug("skeleton n=%d v=%d e=%d f=%d delta=%d", n, summary.v, summary.e,
                 summary.f, summary.delta)
    return summary


class ManifoldCheck(NamedTuple):
    closed: bool
    diagnostic: str

    def __bool__(self):
        return self.closed


def is_closed_manifold(tri: Triangulation, skeleton: Optional[SkeletonSummary] = None) -> ManifoldCheck:
    """
    Closed 3-manifold test.

    Every face must be glued, no edge may be identified with itself in
    reverse, and every vertex link must have Euler characteristic 2. Each
    link is connected by construction, so it is then a 2-sphere.
    """
    unglued = tri.unglued_faces()
    if unglued:
        t, f = unglued[0]
        return ManifoldCheck(False, f"face {f} of tet {t} is unglued")
    s = skeleton or compute_skeleton(tri)
    for e, flag in enumerate(s.edge_reversed):
        if flag:
            return ManifoldCheck(False, f"edge {e} is identified with itself in reverse")
    for e, flag in enumerate(s.edge_link_closed):
        if not flag:
            return ManifoldCheck(False, f"edge {e} link is not a circle")
    for vertex, chi in enumerate(s.vertex_link_euler_chars):
        if chi != 2:
            return ManifoldCheck(False, f"vertex {vertex} link has Euler characteristic {chi}")
    return ManifoldCheck(True, 'closed')


def sqrt_valence_sum(skeleton: SkeletonSummary) -> RadicalSum:
    return RadicalSum(Counter(skeleton.edge_valences))


def counting_checks(tri: Triangulation, skeleton: Optional[SkeletonSummary] = None
                    ) -> List[Tuple[str, bool]]:
    """
    Counting identities of closed triangulations, each decided exactly.

    Returns:
        ``(name, holds)`` pairs in the order faces, euler, sum_val, sqrt_val.
    """
    s = skeleton or compute_skeleton(tri)
    n = s.n
    bound = RadicalSum({6: s.n + s.v})
    return [
        ('faces', s.f == 2 * n),
        ('euler', s.e == s.v + n),
        ('sum_val', s.sum_valence == 6 * n),
        ('sqrt_val', certify_le(sqrt_valence_sum(s), bound)),
    ]


def one_skeleton(skeleton: SkeletonSummary) -> Multigraph:
    """Multigraph of quotient vertices and edges; edge ``i`` is edge class ``i``."""
    return Multigraph(skeleton.v, skeleton.edge_endpoints)

"""
Retriangulation to bounded edge valence.

Every quotient edge ``e`` of a closed triangulation has a dual polygon
``F_e`` whose corners ``u_0..u_{k-1}`` are the tets met by the edge link
(``k`` = valence) and whose sides cross the link triangles. The polygons
form a spine of the manifold. Each polygon is triangulated, by a cone from
a center ``w`` when ``k <= 9`` and by a ring of ``m`` interior vertices
otherwise, and every polygon triangle is coned to both ends of ``e``.

A new tet is named ``(e, triangle, side)``: local vertex 0 is the apex
(side 0 is the end at the walk's tail), locals 1..3 are the triangle's
vertices. Face 0 joins the two sides of one triangle and face 1 of a
boundary triangle sits on the spine, where it meets the polygon of another
edge of the same link triangle.
"""

import logging
import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from trisparse.bounds import RadicalSum, certify_le
from trisparse.config import get_config
from trisparse.errors import NotClosedError, TrisparseError
from trisparse.graphs import heuristic_decomposition
from trisparse.heegaard import CrossingOrigin, crossing_table, triangle_slot
from trisparse.skeleton import SkeletonSummary, compute_skeleton, is_closed_manifold
from trisparse.triangulation import (GluingTable, Perm4, Triangulation, dual_graph,
                                     triangulation_digest)

logger = logging.getLogger(__name__)

IDENTITY = Perm4.from_string('0123')
ALONG = Perm4.from_string('0132')
FAN_TO_X = Perm4.from_string('0321')
X_TO_W = Perm4.from_string('0213')

CONE = 'cone'
RING = 'ring'

# Triangle kinds and the rule that anchors them in tree decompositions.
KIND_CONE = 'cone'
KIND_FAN = 'fan'
KIND_X = 'x'
KIND_W = 'w'
RULES = {KIND_CONE: 1, KIND_FAN: 1, KIND_X: 2, KIND_W: 3}


def ring_parameters(k: int) -> Tuple[int, int]:
    """``(m, d) = (floor(sqrt(k)) + 4, floor(sqrt(k)) + 1)``."""
    s = math.isqrt(k)
    return s + 4, s + 1


@dataclass(frozen=True)
class PolygonTriangle:
    """
    One triangle of a polygon triangulation.

    ``vertices`` are labels ``('u', j)``, ``('v', l)`` or ``('w', 0)``;
    ``anchor`` is the half-open range of corner positions it is attached to.
    """
    kind: str
    vertices: Tuple[Tuple[str, int], Tuple[str, int], Tuple[str, int]]
    anchor: Tuple[int, int]


@dataclass(frozen=True)
class FaceTriangulation:
    """
    Triangulated polygon with boundary corners ``u_0..u_{k-1}``.

    Triangle ``j < k`` always carries the boundary side ``u_j u_{j+1}``.
    Ring mode lists the fan triangles by ``j``, then the triangles
    ``X(l) = (v_{l-1}, u_{b_l}, v_l)``, then ``W(l) = (w, v_{l-1}, v_l)``.
    """
    k: int
    mode: str
    m: Optional[int]
    d: Optional[int]
    blocks: Tuple[int, ...]
    triangles: Tuple[PolygonTriangle, ...]
    gluings: Tuple[Tuple[int, int, int, Perm4], ...] = field(repr=False)

    def vertices(self) -> List[Tuple[str, int]]:
        seen = []
        for tri in self.triangles:
            for v in tri.vertices:
                if v not in seen:
                    seen.append(v)
        return seen

    def edges(self) -> Counter:
        """Triangle count per undirected edge."""
        count = Counter()
        for tri in self.triangles:
            a, b, c = tri.vertices
            for pair in ((a, b), (b, c), (a, c)):
                count[frozenset(pair)] += 1
        return count

    def degrees(self) -> Dict[Tuple[str, int], int]:
        degree = Counter()
        for edge in self.edges():
            for v in edge:
                degree[v] += 1
        return dict(degree)

    def euler_characteristic(self) -> int:
        return len(self.vertices()) - len(self.edges()) + len(self.triangles)

    def validate(self) -> List[str]:
        """Disk and degree checks; defined for ``k >= 3``."""
        problems = []
        expected = self.k if self.mode == CONE else self.k + 2 * self.m
        if len(self.triangles) != expected:
            problems.append(f"{len(self.triangles)} triangles, expected {expected}")
        if self.k < 3:
            return problems
        if self.euler_characteristic() != 1:
            problems.append(f"Euler characteristic {self.euler_characteristic()}, expected 1")
        boundary = {frozenset((('u', j), ('u', (j + 1) % self.k))) for j in range(self.k)}
        for edge, count in self.edges().items():
            wanted = 1 if edge in boundary else 2
            if count != wanted:
                problems.append(f"edge {sorted(edge)} lies in {count} triangles, expected {wanted}")
        if self.mode == RING:
            limit = max(self.m, self.d + 3)
            worst = max(self.degrees().values())
            if worst > limit:
                problems.append(f"vertex degree {worst} exceeds {limit}")
        return problems


def triangulate_face(k: int, m: Optional[int] = None, d: Optional[int] = None) -> FaceTriangulation:
    """
    Triangulate a ``k``-gon.

    ``k <= Config.CONE_VALENCE_LIMIT`` gives a cone from the center;
    otherwise a ring of ``m`` vertices whose blocks ``[b_l, b_{l+1})`` with
    ``b_l = floor(l*k/m)`` split the boundary. ``m`` and ``d`` default to
    :func:`ring_parameters`.

    Raises:
        ValueError: ``k < 1``, or ring parameters violating
            ``3 <= m <= k <= m*(d-1)``.
    """
    if k < 1:
        raise ValueError("polygon needs at least one side")
    if k <= get_config().CONE_VALENCE_LIMIT:
        triangles = tuple(PolygonTriangle(KIND_CONE, (('w', 0), ('u', j), ('u', (j + 1) % k)), (j, j + 1))
                          for j in range(k))
        gluings = tuple((j, 2, (j + 1) % k, ALONG) for j in range(k))
        return FaceTriangulation(k, CONE, None, None, (), triangles, gluings)

    if m is None or d is None:
        m, d = ring_parameters(k)
    if not (3 <= m <= k <= m * (d - 1)):
        raise ValueError(f"ring parameters need 3 <= m <= k <= m(d-1); got k={k}, m={m}, d={d}")

    blocks = tuple(l * k // m for l in range(m + 1))
    block_of = [0] * k
    for l in range(m):
        for j in range(blocks[l], blocks[l + 1]):
            block_of[j] = l

    def x_index(l):
        return k + l % m

    def w_index(l):
        return k + m + l % m

    triangles = []
    for j in range(k):
        l = block_of[j]
        triangles.append(PolygonTriangle(KIND_FAN, (('v', l), ('u', j), ('u', (j + 1) % k)), (j, j + 1)))
    for l in range(m):
        b = blocks[l]
        triangles.append(PolygonTriangle(KIND_X, (('v', (l - 1) % m), ('u', b), ('v', l)), (b, b + 1)))
    for l in range(m):
        triangles.append(PolygonTriangle(KIND_W, (('w', 0), ('v', (l - 1) % m), ('v', l)),
                                         (blocks[l], blocks[l + 1])))

    gluings = []
    for j in range(k):
        l = block_of[j]
        if j + 1 < blocks[l + 1]:
            gluings.append((j, 2, j + 1, ALONG))
        else:
            gluings.append((j, 2, x_index(l + 1), ALONG))
        if j == blocks[l]:
            gluings.append((j, 3, x_index(l), FAN_TO_X))
    for l in range(m):
        gluings.append((x_index(l), 2, w_index(l), X_TO_W))
        gluings.append((w_index(l), 2, w_index(l + 1), ALONG))
    return FaceTriangulation(k, RING, m, d, blocks, tuple(triangles), tuple(gluings))


@dataclass(frozen=True)
class Spine:
    """
    Spine dual to a closed triangulation.

    Face ``e`` has boundary ``boundaries[e]``: the ``(tet, exit face)``
    incidences of the edge link of ``e`` in walk order. ``sides[e]`` are the
    vertex classes at the walk's tail and head ends.
    """
    one_skeleton_nodes: int
    boundaries: Tuple[Tuple[Tuple[int, int], ...], ...]
    sides: Tuple[Tuple[int, int], ...]

    def boundary_length(self, face: int) -> int:
        return len(self.boundaries[face])


def spine(tri: Triangulation, skeleton: Optional[SkeletonSummary] = None) -> Spine:
    """
    Raises:
        NotClosedError: ``tri`` is not a closed 3-manifold.
    """
    s = skeleton or compute_skeleton(tri)
    check = is_closed_manifold(tri, s)
    if not check.closed:
        raise NotClosedError(check.diagnostic)
    boundaries = tuple(tuple((step.tet, step.exit_face) for step in link) for link in s.edge_links)
    sides = []
    for link in s.edge_links:
        first = link[0]
        sides.append((s.vertex_class[first.tet][first.tail], s.vertex_class[first.tet][first.head]))
    return Spine(tri.size, boundaries, tuple(sides))


@dataclass(frozen=True)
class TraceEntry:
    """Provenance of one new tet."""
    edge: int
    triangle: int
    side: int
    kind: str
    anchor: Tuple[int, int]
    apex: int

    @property
    def rule(self) -> int:
        return RULES[self.kind]


@dataclass(frozen=True)
class RetriangulationTrace:
    """
    Provenance of a retriangulation step, indexed by new tet.

    ``corner_tets[e][j]`` is the old tet at corner ``u_j`` of polygon ``e``;
    anchors are ranges of those positions.
    """
    source_tets: int
    source_digest: str
    entries: Tuple[TraceEntry, ...]
    corner_tets: Tuple[Tuple[int, ...], ...]
    faces: Tuple[FaceTriangulation, ...]

    @property
    def is_identity(self) -> bool:
        return not self.entries

    def anchor_tets(self, tet: int) -> List[int]:
        entry = self.entries[tet]
        corners = self.corner_tets[entry.edge]
        lo, hi = entry.anchor
        return sorted({corners[j % len(corners)] for j in range(lo, hi)})


def _tet_index(bases: Sequence[int], edge: int, triangle: int, side: int) -> int:
    return bases[edge] + 2 * triangle + side


def _third_vertex(face: int, x: int, y: int) -> int:
    return 6 - face - x - y


def retriangulate_step(tri: Triangulation, force: bool = False,
                       skeleton: Optional[SkeletonSummary] = None
                       ) -> Tuple[Triangulation, RetriangulationTrace]:
    """
    One round of valence reduction.

    Triangulations with maximum valence at most 9 come back unchanged with
    an empty trace unless ``force`` is set. ``skeleton`` is reused when the
    caller already has it.

    Raises:
        NotClosedError: ``tri`` is not a closed 3-manifold.
    """
    s = skeleton or compute_skeleton(tri)
    sp = spine(tri, s)
    digest = triangulation_digest(tri)
    if s.delta <= get_config().CONE_VALENCE_LIMIT and not force:
        return tri, RetriangulationTrace(tri.size, digest, (), (), ())

    faces = tuple(triangulate_face(len(boundary)) for boundary in sp.boundaries)
    bases = []
    total = 0
    for face in faces:
        bases.append(total)
        total += 2 * len(face.triangles)

    corner_tets = tuple(tuple(tet for tet, _ in boundary) for boundary in sp.boundaries)
    entries: List[Optional[TraceEntry]] = [None] * total
    table = GluingTable(total)
    for e, face in enumerate(faces):
        for i, triangle in enumerate(face.triangles):
            for side in (0, 1):
                entries[_tet_index(bases, e, i, side)] = TraceEntry(
                    e, i, side, triangle.kind, triangle.anchor, sp.sides[e][side])
            table.join(_tet_index(bases, e, i, 0), 0, _tet_index(bases, e, i, 1), IDENTITY)
        for a, face_a, b, perm in face.gluings:
            for side in (0, 1):
                table.join(_tet_index(bases, e, a, side), face_a, _tet_index(bases, e, b, side), perm)

    origins = crossing_table(tri, s)
    for crossing, origin in enumerate(origins):
        for side in (0, 1):
            here = _tet_index(bases, origin.edge, origin.position, side)
            if table.rows[here][1] is not None:
                continue
            apex = origin.labels[side]
            other = origin.labels[1 - side]
            third = _third_vertex(origin.rep_face, apex, other)
            partner: CrossingOrigin = origins[3 * origin.triangle + triangle_slot(origin.rep_face, apex, third)]
            partner_side = 0 if partner.labels[0] == apex else 1
            there = _tet_index(bases, partner.edge, partner.position, partner_side)
            perm = IDENTITY if partner.alpha_dir == origin.alpha_dir else ALONG
            table.join(here, 1, there, perm)

    result = table.build()
    trace = RetriangulationTrace(tri.size, digest, tuple(entries), corner_tets, faces)
    logger.info("retriangulation step: %d tets -> %d tets (delta %d)", tri.size, result.size, s.delta)
    return result, trace


def expected_vertex_count(skeleton: SkeletonSummary, trace: RetriangulationTrace) -> int:
    """Apexes, tet centers, polygon centers and ring vertices."""
    ring = sum(face.m for face in trace.faces if face.mode == RING)
    return skeleton.v + skeleton.n + skeleton.e + ring


def valence_bound(delta: int) -> int:
    return max(math.isqrt(delta) + 4, get_config().CONE_VALENCE_LIMIT)


def step_bound_checks(before: SkeletonSummary, after: SkeletonSummary) -> List[Tuple[str, bool]]:
    """
    Size and valence bounds of one step, decided exactly.

    ``tets <= (28+4*sqrt6) n + (16+4*sqrt6) v``,
    ``verts <= (6+sqrt6)(n+v)`` and ``delta <= max(floor(sqrt(delta))+4, 9)``.
    """
    n, v = before.n, before.v
    tets_bound = RadicalSum({1: 28 * n + 16 * v, 6: 4 * n + 4 * v})
    verts_bound = RadicalSum({1: 6 * (n + v), 6: n + v})
    return [
        ('tets', certify_le(RadicalSum.rational(after.n), tets_bound)),
        ('verts', certify_le(RadicalSum.rational(after.v), verts_bound)),
        ('delta', after.delta <= valence_bound(before.delta)),
    ]


def step_budget(delta: int) -> int:
    """``ceil(log2(log2(delta))) + 2`` rounds, 0 when nothing needs reducing."""
    if delta <= get_config().CONE_VALENCE_LIMIT:
        return 0
    return math.ceil(math.log2(math.log2(delta))) + 2


@dataclass
class StepStats:
    step: int
    n: int
    v: int
    delta: int
    tw_ub: Optional[int]
    tets_bound: float
    verts_bound: float

    def as_pairs(self) -> List[Tuple[str, object]]:
        return [('step', self.step), ('n', self.n), ('v', self.v), ('delta', self.delta),
                ('tw_ub', self.tw_ub), ('tets_bound', f"{self.tets_bound:.6f}"),
                ('verts_bound', f"{self.verts_bound:.6f}")]


def _stats(step: int, tri: Triangulation, s: SkeletonSummary, with_width: bool) -> StepStats:
    tw_ub = None
    if with_width:
        tw_ub = heuristic_decomposition(dual_graph(tri)).width
    return StepStats(step, s.n, s.v, s.delta, tw_ub,
                     float(RadicalSum({1: 28 * s.n + 16 * s.v, 6: 4 * s.n + 4 * s.v})),
                     float(RadicalSum({1: 6 * (s.n + s.v), 6: s.n + s.v})))


def retriangulate_full(tri: Triangulation, max_steps: Optional[int] = None,
                       with_width: bool = False) -> Tuple[Triangulation, List[StepStats]]:
    """
    Repeat :func:`retriangulate_step` until every valence is at most 9.

    Args:
        tri: Closed triangulation.
        max_steps: Stop after this many rounds even if valences are high.
        with_width: Record a heuristic treewidth bound of each dual graph.

    Returns:
        The final triangulation and one :class:`StepStats` per triangulation
        visited, starting with the input as step 0.
    """
    s = compute_skeleton(tri)
    check = is_closed_manifold(tri, s)
    if not check.closed:
        raise NotClosedError(check.diagnostic)
    stats = [_stats(0, tri, s, with_width)]
    budget = step_budget(s.delta)
    step = 0
    while s.delta > get_config().CONE_VALENCE_LIMIT and (max_steps is None or step < max_steps):
        step += 1
        tri, _ = retriangulate_step(tri, skeleton=s)
        s = compute_skeleton(tri)
        stats.append(_stats(step, tri, s, with_width))
    if step > budget:
        logger.warning("retriangulation took %d steps, more than the predicted %d", step, budget)
    return tri, stats


ADJACENCY_CASES = 'abcdefg'


def classify_adjacency(trace: RetriangulationTrace, tet: int, face: int, other: int, other_face: int) -> str:
    """
    Case letter of one gluing of a retriangulated triangulation.

    a: the two cones over one triangle; b: consecutive cone or fan
    triangles; c and d: fan triangle against X through X's face 3 or 1;
    e: X against W; f: consecutive W triangles; g: across the spine.

    Raises:
        TrisparseError: the gluing fits none of the cases.
    """
    first, second = trace.entries[tet], trace.entries[other]
    if face == 0 and other_face == 0:
        return 'a'
    if face == 1 and other_face == 1 and first.kind in (KIND_CONE, KIND_FAN) \
            and second.kind in (KIND_CONE, KIND_FAN):
        return 'g'
    kinds = {first.kind, second.kind}
    if kinds == {KIND_CONE} or kinds == {KIND_FAN}:
        return 'b'
    if kinds == {KIND_FAN, KIND_X}:
        x_face = face if first.kind == KIND_X else other_face
        if x_face == 3:
            return 'c'
        if x_face == 1:
            return 'd'
    if kinds == {KIND_X, KIND_W}:
        return 'e'
    if kinds == {KIND_W}:
        return 'f'
    raise TrisparseError(f"gluing ({tet},{face}) <-> ({other},{other_face}) fits no adjacency case")


def adjacency_census(tri: Triangulation, trace: RetriangulationTrace) -> Dict[str, int]:
    """Count glued pairs per adjacency case; every pair must classify."""
    census = {case: 0 for case in ADJACENCY_CASES}
    for t, f, g in tri.glued_pairs():
        census[classify_adjacency(trace, t, f, g.tet, g.face)] += 1
    return census

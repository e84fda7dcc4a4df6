"""
Heegaard diagrams induced by closed triangulations.

The diagram is read off the combinatorics directly. There is one alpha
curve per quotient edge, running around the edge through the triangles of
its link, and one beta curve per quotient triangle, running around the
triangle's boundary. A crossing sits wherever an edge meets a triangle
containing it, so a closed triangulation with ``n`` tets yields ``6n``
crossings on a surface of genus ``n + 1``.

Crossing ``3*tau + slot`` lies on triangle class ``tau``. With ``a < b < c``
the vertices of the triangle's representative face, slots 0, 1 and 2 are
the sides ``ab``, ``bc`` and ``ca``; the beta curve visits them in that
order.
"""

import logging
import re
from dataclasses import dataclass, field, replace
from typing import Dict, List, Optional, Sequence, Set, Tuple

from trisparse.errors import NotClosedError, ParseError, ProvenanceError, TrisparseError
from trisparse.graphs import Multigraph, bfs_tree_edges
from trisparse.skeleton import SkeletonSummary, compute_skeleton, is_closed_manifold
from trisparse.triangulation import Triangulation, triangulation_digest

logger = logging.getLogger(__name__)

ALPHA = 'alpha'
BETA = 'beta'


@dataclass(frozen=True)
class Crossing:
    id: int
    alpha: int
    beta: int
    sign: Optional[int] = None
    tet: Optional[int] = field(default=None, compare=False)


@dataclass(frozen=True)
class CrossingOrigin:
    """Where a crossing comes from in the source triangulation."""
    triangle: int
    slot: int
    edge: int
    position: int
    rep_tet: int
    rep_face: int
    other_tet: int
    other_face: int
    labels: Tuple[int, int]
    alpha_dir: int


@dataclass(frozen=True)
class DiagramProvenance:
    tet_count: int
    digest: str
    origins: Tuple[CrossingOrigin, ...]
    alpha_edges: Tuple[int, ...]
    beta_triangles: Tuple[int, ...]
    beta_dirs: Tuple[int, ...]


@dataclass(frozen=True)
class HeegaardDiagram:
    """
    Genus plus two families of cyclic crossing sequences.

    Crossing ids are ``0..len(crossings)-1`` and ``crossings[i].id == i``.
    Provenance is not part of equality.
    """
    genus: int
    alpha_curves: Tuple[Tuple[int, ...], ...]
    beta_curves: Tuple[Tuple[int, ...], ...]
    crossings: Tuple[Crossing, ...]
    oriented: bool = False
    provenance: Optional[DiagramProvenance] = field(default=None, compare=False)

    @property
    def crossing_count(self) -> int:
        return len(self.crossings)

    def curves(self, family: str) -> Tuple[Tuple[int, ...], ...]:
        if family == ALPHA:
            return self.alpha_curves
        if family == BETA:
            return self.beta_curves
        raise ValueError(f"Unknown curve family: {family}")

    def signs(self) -> List[Optional[int]]:
        return [c.sign for c in self.crossings]

    def alpha_neighbours(self, curve: int) -> Set[int]:
        """Beta curves met by an alpha curve."""
        return {self.crossings[c].beta for c in self.alpha_curves[curve]}

    def beta_neighbours(self, curve: int) -> Set[int]:
        """Alpha curves met by a beta curve."""
        return {self.crossings[c].alpha for c in self.beta_curves[curve]}


def triangle_slot(face: int, x: int, y: int) -> int:
    """Slot of the side ``{x, y}`` of face ``face``."""
    a, b, c = (i for i in range(4) if i != face)
    side = {x, y}
    if side == {a, b}:
        return 0
    if side == {b, c}:
        return 1
    if side == {a, c}:
        return 2
    raise ValueError(f"{{{x}, {y}}} is not a side of face {face}")


def crossing_table(tri: Triangulation, skeleton: Optional[SkeletonSummary] = None
                   ) -> List[CrossingOrigin]:
    """
    Origins of all ``6n`` crossings, indexed by crossing id.

    Requires every face to be glued.
    """
    s = skeleton or compute_skeleton(tri)
    origins: List[Optional[CrossingOrigin]] = [None] * (3 * s.f)
    for edge, steps in enumerate(s.edge_links):
        for position, step in enumerate(steps):
            g = tri.gluing(step.tet, step.exit_face)
            if g is None:
                raise NotClosedError(f"face {step.exit_face} of tet {step.tet} is unglued")
            tau = s.triangle_class[step.tet][step.exit_face]
            rep_tet, rep_face = s.triangle_reps[tau]
            if (step.tet, step.exit_face) == (rep_tet, rep_face):
                labels = (step.tail, step.head)
                other = (g.tet, g.face)
                direction = 1
            else:
                labels = (g.perm[step.tail], g.perm[step.head])
                other = (step.tet, step.exit_face)
                direction = -1
            slot = triangle_slot(rep_face, *labels)
            crossing = 3 * tau + slot
            if origins[crossing] is not None:
                raise TrisparseError(f"crossing {crossing} visited twice")
            origins[crossing] = CrossingOrigin(
                triangle=tau, slot=slot, edge=edge, position=position,
                rep_tet=rep_tet, rep_face=rep_face, other_tet=other[0], other_face=other[1],
                labels=labels, alpha_dir=direction)
    return origins


def heegaard_from_triangulation(tri: Triangulation,
                                skeleton: Optional[SkeletonSummary] = None) -> HeegaardDiagram:
    """
    Diagram induced by a closed triangulation.

    Raises:
        NotClosedError: ``tri`` is not a closed 3-manifold.
    """
    s = skeleton or compute_skeleton(tri)
    check = is_closed_manifold(tri, s)
    if not check.closed:
        raise NotClosedError(check.diagnostic)
    origins = crossing_table(tri, s)
    alpha_curves = [[] for _ in range(s.e)]
    for crossing, origin in sorted(enumerate(origins), key=lambda item: (item[1].edge, item[1].position)):
        alpha_curves[origin.edge].append(crossing)
    beta_curves = [(3 * tau, 3 * tau + 1, 3 * tau + 2) for tau in range(s.f)]
    crossings = tuple(Crossing(i, o.edge, o.triangle, tet=o.rep_tet) for i, o in enumerate(origins))
    provenance = DiagramProvenance(
        tet_count=tri.size, digest=triangulation_digest(tri), origins=tuple(origins),
        alpha_edges=tuple(range(s.e)), beta_triangles=tuple(range(s.f)),
        beta_dirs=(1,) * s.f)
    diagram = HeegaardDiagram(tri.size + 1, tuple(tuple(c) for c in alpha_curves),
                              tuple(beta_curves), crossings, False, provenance)
    logger.info("diagram: genus=%d crossings=%d alpha=%d beta=%d", diagram.genus,
                diagram.crossing_count, len(diagram.alpha_curves), len(diagram.beta_curves))
    return diagram


def diagram_graph(diagram: HeegaardDiagram) -> Multigraph:
    """
    4-regular multigraph of a diagram.

    Edges follow each curve cyclically, alpha curves first; edge ``j`` of a
    curve joins its ``j``-th and ``(j+1)``-th crossings and is labeled
    ``(family, curve, j)``.
    """
    graph = Multigraph(diagram.crossing_count)
    for family in (ALPHA, BETA):
        for index, curve in enumerate(diagram.curves(family)):
            for j, crossing in enumerate(curve):
                graph.add_edge(crossing, curve[(j + 1) % len(curve)], label=(family, index, j))
    return graph


def require_provenance(diagram: HeegaardDiagram, tri: Triangulation) -> DiagramProvenance:
    prov = diagram.provenance
    if prov is None:
        raise ProvenanceError("diagram carries no provenance")
    if prov.tet_count != tri.size or prov.digest != triangulation_digest(tri):
        raise ProvenanceError("diagram was not built from this triangulation")
    return prov


def orient_diagram(diagram: HeegaardDiagram, tri: Triangulation) -> HeegaardDiagram:
    """
    Sign every crossing from the orientation of ``tri``.

    The sign compares the frame (beta tangent, alpha tangent) with the
    surface orientation at the crossing's representative face:
    ``eps(rep_tet) * (-1)**rep_face * alpha_dir * beta_dir``.

    Raises:
        ProvenanceError: the diagram was not built from ``tri``.
        TrisparseError: ``tri`` has no orientation.
    """
    prov = require_provenance(diagram, tri)
    if tri.orientation is None:
        raise TrisparseError("triangulation is not oriented")
    crossings = []
    for crossing in diagram.crossings:
        origin = prov.origins[crossing.id]
        parity = -1 if origin.rep_face % 2 else 1
        sign = tri.orientation[origin.rep_tet] * parity * origin.alpha_dir * prov.beta_dirs[crossing.beta]
        crossings.append(replace(crossing, sign=sign))
    return replace(diagram, crossings=tuple(crossings), oriented=True)


def _flip_signs(crossings: Sequence[Crossing], ids) -> Tuple[Crossing, ...]:
    ids = set(ids)
    return tuple(replace(c, sign=-c.sign) if c.id in ids and c.sign is not None else c
                 for c in crossings)


def reverse_alpha_curve(diagram: HeegaardDiagram, index: int) -> HeegaardDiagram:
    """Traverse one alpha curve backwards; its crossing signs flip."""
    curve = diagram.alpha_curves[index]
    curves = list(diagram.alpha_curves)
    curves[index] = tuple(reversed(curve))
    prov = diagram.provenance
    if prov is not None:
        origins = list(prov.origins)
        for c in curve:
            origins[c] = replace(origins[c], alpha_dir=-origins[c].alpha_dir)
        prov = replace(prov, origins=tuple(origins))
    return replace(diagram, alpha_curves=tuple(curves),
                   crossings=_flip_signs(diagram.crossings, curve), provenance=prov)


def reverse_beta_curve(diagram: HeegaardDiagram, index: int) -> HeegaardDiagram:
    """Traverse one beta curve backwards; its crossing signs flip."""
    curve = diagram.beta_curves[index]
    curves = list(diagram.beta_curves)
    curves[index] = tuple(reversed(curve))
    prov = diagram.provenance
    if prov is not None:
        dirs = list(prov.beta_dirs)
        dirs[index] = -dirs[index]
        prov = replace(prov, beta_dirs=tuple(dirs))
    return replace(diagram, beta_curves=tuple(curves),
                   crossings=_flip_signs(diagram.crossings, curve), provenance=prov)


def rotate_curve(diagram: HeegaardDiagram, family: str, index: int, shift: int) -> HeegaardDiagram:
    """Start a curve ``shift`` crossings later; the cyclic order is unchanged."""
    curves = list(diagram.curves(family))
    curve = curves[index]
    shift %= len(curve)
    curves[index] = curve[shift:] + curve[:shift]
    if family == ALPHA:
        return replace(diagram, alpha_curves=tuple(curves))
    return replace(diagram, beta_curves=tuple(curves))


def minimize_diagram(diagram: HeegaardDiagram, tri: Triangulation) -> HeegaardDiagram:
    """
    Drop the curves of two spanning trees.

    Alpha curves of the edges in a BFS spanning tree of the 1-skeleton and
    beta curves of the triangles in a BFS spanning tree of the dual graph
    are removed, together with their crossings. Remaining crossings are
    renumbered in their old order. A diagram without provenance that
    already has ``|alpha| = |beta| = genus`` is returned unchanged.

    Raises:
        NotClosedError: ``tri`` is not closed.
        ProvenanceError: the diagram was not built from ``tri``.
    """
    if diagram.provenance is None and \
            len(diagram.alpha_curves) == len(diagram.beta_curves) == diagram.genus:
        return diagram
    prov = require_provenance(diagram, tri)
    s = compute_skeleton(tri)
    check = is_closed_manifold(tri, s)
    if not check.closed:
        raise NotClosedError(check.diagnostic)

    edge_tree = bfs_tree_edges(s.v, s.edge_endpoints)
    dual_edges = [(rep_tet, tri.gluing(rep_tet, rep_face).tet) for rep_tet, rep_face in s.triangle_reps]
    triangle_tree = bfs_tree_edges(s.n, dual_edges)

    keep_alpha = [i for i, e in enumerate(prov.alpha_edges) if e not in edge_tree]
    keep_beta = [i for i, t in enumerate(prov.beta_triangles) if t not in triangle_tree]
    alpha_index = {old: new for new, old in enumerate(keep_alpha)}
    beta_index = {old: new for new, old in enumerate(keep_beta)}
    survivors = [c for c in diagram.crossings if c.alpha in alpha_index and c.beta in beta_index]
    renumber = {c.id: i for i, c in enumerate(survivors)}

    crossings = tuple(replace(c, id=renumber[c.id], alpha=alpha_index[c.alpha], beta=beta_index[c.beta])
                      for c in survivors)
    alpha_curves = tuple(tuple(renumber[c] for c in diagram.alpha_curves[i] if c in renumber)
                         for i in keep_alpha)
    beta_curves = tuple(tuple(renumber[c] for c in diagram.beta_curves[i] if c in renumber)
                        for i in keep_beta)
    minimal_prov = DiagramProvenance(
        tet_count=prov.tet_count, digest=prov.digest,
        origins=tuple(prov.origins[c.id] for c in survivors),
        alpha_edges=tuple(prov.alpha_edges[i] for i in keep_alpha),
        beta_triangles=tuple(prov.beta_triangles[i] for i in keep_beta),
        beta_dirs=tuple(prov.beta_dirs[i] for i in keep_beta))
    minimal = HeegaardDiagram(diagram.genus, alpha_curves, beta_curves, crossings,
                              diagram.oriented, minimal_prov)
    logger.info("minimal diagram: alpha=%d beta=%d crossings=%d", len(alpha_curves),
                len(beta_curves), len(crossings))
    return minimal


def validate_diagram(diagram: HeegaardDiagram) -> List[str]:
    """
    Consistency problems of a diagram, empty if none.

    Besides structural checks this flags a genus that disagrees with the
    curve counts: ``crossings/6 + 1`` for diagrams shaped like those built
    from triangulations, ``|alpha|`` when ``|alpha| = |beta|``.
    """
    problems = []
    count = diagram.crossing_count
    for i, c in enumerate(diagram.crossings):
        if c.id != i:
            problems.append(f"crossing at position {i} has id {c.id}")
    for family in (ALPHA, BETA):
        seen: Dict[int, int] = {}
        for index, curve in enumerate(diagram.curves(family)):
            if not curve:
                problems.append(f"{family} curve {index} is empty")
            for c in curve:
                if not 0 <= c < count:
                    problems.append(f"{family} curve {index} names unknown crossing {c}")
                elif c in seen:
                    problems.append(f"crossing {c} appears on {family} curves {seen[c]} and {index}")
                else:
                    seen[c] = index
                    expected = diagram.crossings[c].alpha if family == ALPHA else diagram.crossings[c].beta
                    if expected != index:
                        problems.append(f"crossing {c} records {family} curve {expected}, found on {index}")
        missing = sorted(set(range(count)) - set(seen))
        if missing:
            problems.append(f"crossing {missing[0]} is on no {family} curve")
    if problems:
        return problems

    if not diagram_graph(diagram).is_regular(4):
        problems.append("diagram graph is not 4-regular")
    unset = [c.id for c in diagram.crossings if c.sign is None]
    if diagram.oriented and unset:
        problems.append(f"oriented diagram has unsigned crossing {unset[0]}")
    if not diagram.oriented and len(unset) != count:
        problems.append("unoriented diagram carries crossing signs")

    alpha, beta = len(diagram.alpha_curves), len(diagram.beta_curves)
    expected_genus = None
    if diagram.provenance is not None:
        expected_genus = diagram.provenance.tet_count + 1
    elif count % 6 == 0 and beta == count // 3 and all(len(b) == 3 for b in diagram.beta_curves):
        expected_genus = count // 6 + 1
    elif alpha == beta:
        expected_genus = alpha
    if expected_genus is not None and expected_genus != diagram.genus:
        problems.append(f"genus {diagram.genus} disagrees with expected {expected_genus}")
    return problems


_SIGN_TEXT = {1: '+', -1: '-', None: '?'}
_TEXT_SIGN = {v: k for k, v in _SIGN_TEXT.items()}
_HEADER = re.compile(r'^hd\s+genus=(\d+)\s+oriented=([01])$')
_CURVE = re.compile(r'^([ab])\s+(\d+)\s*:(.*)$')


def write_diagram(diagram: HeegaardDiagram) -> str:
    lines = [f"hd genus={diagram.genus} oriented={int(diagram.oriented)}",
             f"crossings {diagram.crossing_count}"]
    lines.extend(f"c {c.id} sign={_SIGN_TEXT[c.sign]}" for c in diagram.crossings)
    for prefix, curves in (('a', diagram.alpha_curves), ('b', diagram.beta_curves)):
        for i, curve in enumerate(curves):
            lines.append(f"{prefix} {i}: " + ' '.join(str(c) for c in curve))
    return '\n'.join(lines) + '\n'


def read_diagram(text: str) -> HeegaardDiagram:
    """
    Parse the diagram text format.

    Crossing ids must be ``0..N-1`` and each must lie on exactly one alpha
    and one beta curve. A disagreeing genus is accepted; see
    :func:`validate_diagram`.

    Raises:
        ParseError: malformed document or inconsistent crossings.
    """
    header = None
    count = None
    signs: Dict[int, Optional[int]] = {}
    curves = {'a': [], 'b': []}
    on_curve = {'a': {}, 'b': {}}
    for lineno, raw in enumerate(text.split('\n'), 1):
        content = raw.split('#', 1)[0].strip()
        if not content:
            continue
        if header is None:
            match = _HEADER.match(content)
            if match is None:
                raise ParseError("expected header 'hd genus=<g> oriented=<0|1>'", lineno, 1)
            header = (int(match.group(1)), match.group(2) == '1')
            continue
        if count is None:
            tokens = content.split()
            if len(tokens) != 2 or tokens[0] != 'crossings' or not tokens[1].isdigit():
                raise ParseError("expected 'crossings <N>'", lineno, 1)
            count = int(tokens[1])
            continue
        tokens = content.split()
        if tokens[0] == 'c':
            if len(tokens) != 3 or not tokens[1].isdigit() or not tokens[2].startswith('sign='):
                raise ParseError("expected 'c <id> sign=<+|-|?>'", lineno, 1)
            crossing = int(tokens[1])
            sign_text = tokens[2][len('sign='):]
            if sign_text not in _TEXT_SIGN:
                raise ParseError(f"bad sign {sign_text!r}", lineno, raw.find('sign=') + 1)
            if not 0 <= crossing < count:
                raise ParseError(f"crossing id {crossing} outside 0..{count - 1}", lineno, 3)
            if crossing in signs:
                raise ParseError(f"crossing {crossing} declared twice", lineno, 3)
            signs[crossing] = _TEXT_SIGN[sign_text]
            continue
        match = _CURVE.match(content)
        if match is None:
            raise ParseError(f"unexpected line {content!r}", lineno, 1)
        prefix, index = match.group(1), int(match.group(2))
        if index != len(curves[prefix]):
            raise ParseError(f"curve {prefix} {index} out of order", lineno, 3)
        members = match.group(3).split()
        if not members or not all(m.isdigit() for m in members):
            raise ParseError("curve needs one or more crossing ids", lineno, 1)
        curve = tuple(int(m) for m in members)
        family = 'alpha' if prefix == 'a' else 'beta'
        for c in curve:
            if c not in signs:
                raise ParseError(f"curve names undeclared crossing {c}", lineno, 1)
            if c in on_curve[prefix]:
                raise ParseError(f"crossing {c} appears on two {family} curves", lineno, 1)
            on_curve[prefix][c] = index
        curves[prefix].append(curve)

    if header is None or count is None:
        raise ParseError("incomplete diagram header", 1, 1)
    if len(signs) != count:
        raise ParseError(f"declared {count} crossings, found {len(signs)}")
    for prefix, family in (('a', 'alpha'), ('b', 'beta')):
        missing = sorted(set(range(count)) - set(on_curve[prefix]))
        if missing:
            raise ParseError(f"crossing {missing[0]} is on no {family} curve")
    genus, oriented = header
    if oriented and any(s is None for s in signs.values()):
        raise ParseError("oriented diagram with an unsigned crossing")
    if not oriented and any(s is not None for s in signs.values()):
        raise ParseError("unoriented diagram with signed crossings")
    crossings = tuple(Crossing(i, on_curve['a'][i], on_curve['b'][i], signs[i]) for i in range(count))
    return HeegaardDiagram(genus, tuple(curves['a']), tuple(curves['b']), crossings, oriented)

import random

import pytest

from trisparse import builders
from trisparse.errors import NotClosedError, ParseError, ProvenanceError
from trisparse.heegaard import (crossing_table, diagram_graph, heegaard_from_triangulation,
                                minimize_diagram, orient_diagram, read_diagram, reverse_alpha_curve,
                                reverse_beta_curve, rotate_curve, validate_diagram, write_diagram)
from trisparse.skeleton import compute_skeleton
from trisparse.triangulation import barycentric_subdivision, orient


def test_s3_diagram(s3):
    diagram = heegaard_from_triangulation(s3)
    assert diagram.crossing_count == 6
    assert diagram.genus == 2
    assert len(diagram.alpha_curves) == 2
    assert len(diagram.beta_curves) == 2
    assert validate_diagram(diagram) == []


def test_rp3_diagram(rp3):
    diagram = heegaard_from_triangulation(rp3)
    assert (diagram.crossing_count, diagram.genus) == (12, 3)
    assert len(diagram.alpha_curves) == 4
    assert sorted(len(c) for c in diagram.alpha_curves) == [2, 2, 4, 4]
    assert all(len(b) == 3 for b in diagram.beta_curves)


def test_not_closed_is_rejected(fig1, single_tet):
    with pytest.raises(NotClosedError):
        heegaard_from_triangulation(fig1)
    with pytest.raises(NotClosedError):
        heegaard_from_triangulation(single_tet)


def test_diagram_graph_is_four_regular(rp3):
    graph = diagram_graph(heegaard_from_triangulation(rp3))
    assert graph.node_count == 12
    assert graph.is_regular(4)


def test_crossing_table_slots(rp3):
    origins = crossing_table(rp3)
    assert len(origins) == 12
    assert sorted(3 * o.triangle + o.slot for o in origins) == list(range(12))
    s = compute_skeleton(rp3)
    for o in origins:
        assert s.triangle_reps[o.triangle] == (o.rep_tet, o.rep_face)


def test_crossing_count_on_random_triangulations():
    rng = random.Random(7)
    for n in (1, 2, 3, 4) * 5:
        tri = builders.random_closed_triangulation(n, rng)
        assert heegaard_from_triangulation(tri).crossing_count == 6 * n


def test_crossing_count_on_subdivisions(s3, rp3):
    assert heegaard_from_triangulation(barycentric_subdivision(s3)).crossing_count == 144
    assert heegaard_from_triangulation(barycentric_subdivision(rp3)).crossing_count == 288


def test_minimal_diagrams(s3, rp3):
    minimal = minimize_diagram(heegaard_from_triangulation(s3), s3)
    assert (len(minimal.alpha_curves), len(minimal.beta_curves)) == (2, 2)
    minimal = minimize_diagram(heegaard_from_triangulation(rp3), rp3)
    assert (len(minimal.alpha_curves), len(minimal.beta_curves)) == (3, 3)
    assert minimal.genus == 3
    assert validate_diagram(minimal) == []


def test_minimize_needs_matching_triangulation(s3, rp3):
    with pytest.raises(ProvenanceError):
        minimize_diagram(heegaard_from_triangulation(rp3), s3)


def test_orientation_signs(rp3):
    tri = orient(rp3)
    diagram = orient_diagram(heegaard_from_triangulation(tri), tri)
    assert diagram.oriented
    assert set(diagram.signs()) <= {1, -1}
    assert validate_diagram(diagram) == []


def test_reversing_a_curve_flips_its_signs(rp3):
    tri = orient(rp3)
    diagram = orient_diagram(heegaard_from_triangulation(tri), tri)
    reversed_alpha = reverse_alpha_curve(diagram, 0)
    for c in diagram.crossings:
        flipped = reversed_alpha.crossings[c.id].sign == -c.sign
        assert flipped == (c.id in diagram.alpha_curves[0])
    reversed_beta = reverse_beta_curve(diagram, 1)
    changed = {c.id for c in diagram.crossings if reversed_beta.crossings[c.id].sign != c.sign}
    assert changed == set(diagram.beta_curves[1])


def test_rotating_keeps_cyclic_order(rp3):
    diagram = heegaard_from_triangulation(rp3)
    rotated = rotate_curve(diagram, 'alpha', 0, 1)
    curve = diagram.alpha_curves[0]
    assert rotated.alpha_curves[0] == curve[1:] + curve[:1]
    assert validate_diagram(rotated) == []


def test_validate_flags_problems(s3):
    diagram = heegaard_from_triangulation(s3)
    broken = diagram.__class__(diagram.genus + 1, diagram.alpha_curves, diagram.beta_curves,
                               diagram.crossings, diagram.oriented)
    assert any('genus' in p for p in validate_diagram(broken))
    missing = diagram.__class__(diagram.genus, diagram.alpha_curves[:1], diagram.beta_curves,
                                diagram.crossings)
    assert validate_diagram(missing)


def test_diagram_text(rp3):
    tri = orient(rp3)
    diagram = orient_diagram(heegaard_from_triangulation(tri), tri)
    text = write_diagram(diagram)
    assert text.startswith('hd genus=3 oriented=1\ncrossings 12\n')
    assert read_diagram(text) == diagram


@pytest.mark.parametrize('text', [
    'hd genus=1\n',
    'hd genus=1 oriented=0\ncrossings 1\nc 0 sign=+\na 0: 0\nb 0: 0\n',
    'hd genus=1 oriented=0\ncrossings 2\nc 0 sign=?\nc 1 sign=?\na 0: 0 1\nb 0: 0\n',
    'hd genus=1 oriented=0\ncrossings 1\nc 0 sign=?\na 0: 0\na 1: 0\nb 0: 0\n',
])
def test_diagram_text_errors(text):
    with pytest.raises(ParseError):
        read_diagram(text)

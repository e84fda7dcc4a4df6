import pytest

from trisparse import builders
from trisparse.errors import NonOrientableError, NotClosedError, ParseError, TrisparseError
from trisparse.skeleton import compute_skeleton
from trisparse.triangulation import (GluingTable, Perm4, barycentric_subdivision, disjoint_union,
                                     dual_graph, orient, parse_triangulation, relabel,
                                     triangulation_digest, write_triangulation)


def test_perm4_compose_and_inverse():
    p = Perm4.from_string('3012')
    assert p.inverse() == Perm4.from_string('1230')
    assert p * p.inverse() == Perm4.identity()
    assert Perm4.swap(0, 1).sign() == -1
    assert Perm4.from_string('1230').sign() == -1
    with pytest.raises(ValueError):
        Perm4.from_string('0012')


def test_parse_matches_builder(data_dir, fig1):
    text = (data_dir / 'triangulations' / 'fig1.tri').read_text()
    assert parse_triangulation(text) == fig1
    assert fig1.unglued_faces() == [(0, 2), (0, 3)]


def test_write_then_parse_is_identity(rp3):
    text = write_triangulation(rp3)
    assert text.startswith('tri 2\n')
    assert '#' not in text
    assert parse_triangulation(text) == rp3


def test_digest_ignores_comments(rp3):
    commented = '# real projective space\n' + write_triangulation(rp3) + '# end\n'
    assert triangulation_digest(parse_triangulation(commented)) == triangulation_digest(rp3)


@pytest.mark.parametrize('text, line', [
    ('tri 1\n0: 0/3012 - - -\n', 2),
    ('tri 1\n0: 0/0012 - - -\n', 2),
    ('tri 1\n0: 5/0123 - - -\n', 2),
    ('tri 2\n0: - - - -\n0: - - - -\n', 3),
    ('tri 1\n0: - - -\n', 2),
    ('tetrahedra 1\n', 1),
])
def test_parse_errors_carry_line(text, line):
    with pytest.raises(ParseError) as excinfo:
        parse_triangulation(text)
    assert excinfo.value.line == line


def test_parse_rejects_missing_rows():
    with pytest.raises(ParseError):
        parse_triangulation('tri 2\n0: - - - -\n')
    with pytest.raises(ParseError):
        parse_triangulation('# nothing here\n')


def test_gluing_table_refuses_double_gluing():
    table = GluingTable(2)
    table.join(0, 0, 1, Perm4.identity())
    with pytest.raises(TrisparseError):
        table.join(0, 0, 1, Perm4.swap(1, 2))


def test_dual_graph_of_examples(s3, fig1):
    assert dual_graph(s3).edge_count == 2
    assert len(dual_graph(s3).loops()) == 2
    graph = dual_graph(fig1)
    assert graph.edge_count == 3
    assert len(graph.loops()) == 1


def test_orient(s3, rp3, single_tet, nonorientable):
    oriented = orient(rp3)
    assert oriented.is_oriented()
    assert oriented.orientation[0] == 1
    assert orient(s3).orientation == (1,)
    with pytest.raises(NotClosedError):
        orient(single_tet)
    with pytest.raises(NonOrientableError):
        orient(nonorientable)


def test_subdivision_keeps_closedness(s3):
    subdivided = barycentric_subdivision(orient(s3))
    assert subdivided.size == 24
    assert not subdivided.unglued_faces()
    assert subdivided.is_oriented()
    s = compute_skeleton(subdivided)
    assert s.e == s.v + s.n


def test_subdivision_of_bounded_tet(single_tet):
    subdivided = barycentric_subdivision(single_tet)
    assert len(subdivided.unglued_faces()) == 24


def test_relabel_preserves_counts(rp3):
    maps = [Perm4.from_string('1032'), Perm4.from_string('2301')]
    copy = relabel(rp3, [1, 0], maps)
    before, after = compute_skeleton(rp3), compute_skeleton(copy)
    assert (before.v, before.e, before.f) == (after.v, after.e, after.f)
    assert sorted(before.edge_valences) == sorted(after.edge_valences)
    with pytest.raises(TrisparseError):
        relabel(rp3, [0, 0])


def test_disjoint_union(s3, rp3):
    union = disjoint_union(s3, rp3)
    assert union.size == 3
    assert union.gluing(1, 0).tet == 2
    s = compute_skeleton(union)
    assert (s.v, s.e) == (3, 6)


def test_double_bipyramid_counts():
    tri = builders.double_bipyramid(7)
    s = compute_skeleton(tri)
    assert (s.n, s.v, s.delta) == (14, 9, 7)
    with pytest.raises(ValueError):
        builders.double_bipyramid(2)

import pytest
from networkx.utils import UnionFind

from trisparse import builders
from trisparse.skeleton import (compute_skeleton, counting_checks, edge_link, is_closed_manifold,
                                one_skeleton)


def test_s3_counts(s3):
    s = compute_skeleton(s3)
    assert (s.n, s.v, s.e, s.f) == (1, 1, 2, 2)
    assert s.sum_valence == 6
    assert all(s.edge_link_closed)


def test_rp3_counts(rp3):
    s = compute_skeleton(rp3)
    assert (s.n, s.v, s.e, s.f) == (2, 2, 4, 4)
    assert s.sum_valence == 12
    assert s.valence_histogram() == {2: 2, 4: 2}


def test_fig1_has_five_triangles(fig1):
    s = compute_skeleton(fig1)
    assert s.f == 5
    assert s.unglued_faces == [(0, 2), (0, 3)]
    check = is_closed_manifold(fig1, s)
    assert not check
    assert 'unglued' in check.diagnostic


def test_single_tet_is_not_closed(single_tet):
    s = compute_skeleton(single_tet)
    assert (s.v, s.e, s.f) == (4, 6, 4)
    assert s.delta == 1
    assert not is_closed_manifold(single_tet)
    assert not any(s.edge_link_closed)


def test_boundary_edge_link_is_a_path(single_tet):
    steps, closed = edge_link(single_tet, 0, 0, 1)
    assert not closed
    assert len(steps) == 1


def test_closed_examples(s3, rp3, bipyramid16):
    for tri in (s3, rp3, bipyramid16):
        assert is_closed_manifold(tri)


@pytest.mark.parametrize('name', ['s3', 'rp3'])
def test_counting_identities(name):
    tri = getattr(builders, name)()
    checks = counting_checks(tri)
    assert [n for n, _ in checks] == ['faces', 'euler', 'sum_val', 'sqrt_val']
    assert all(holds for _, holds in checks)


def test_counting_identities_on_bipyramid(bipyramid16):
    s = compute_skeleton(bipyramid16)
    assert s.delta == 16
    assert s.sum_valence == 6 * s.n
    assert all(holds for _, holds in counting_checks(bipyramid16, s))


def test_closed_one_tet_tables_satisfy_identities():
    closed = [t for t in builders.enumerate_one_tet_gluings() if is_closed_manifold(t)]
    assert closed
    for tri in closed:
        s = compute_skeleton(tri)
        assert s.e == s.v + 1
        assert s.sum_valence == 6


def test_enumeration_size():
    assert len(builders.enumerate_one_tet_gluings()) == 108


def test_one_skeleton_of_rp3(rp3):
    s = compute_skeleton(rp3)
    graph = one_skeleton(s)
    assert graph.node_count == 2
    assert graph.edge_count == 4


def directed_edge_classes(tri):
    """Directed edge incidences joined across every glued face."""
    uf = UnionFind()
    for t in range(tri.size):
        for i in range(4):
            for j in range(4):
                if i != j:
                    uf[(t, i, j)]
    for t, f, g in tri.glued_faces():
        others = [i for i in range(4) if i != f]
        for i in others:
            for j in others:
                if i != j:
                    uf.union((t, i, j), (g.tet, g.perm[i], g.perm[j]))
    return uf


def test_edge_classes_match_directed_union_find():
    tables = builders.enumerate_one_tet_gluings() + [
        builders.two_tetrahedra_example(), builders.single_tetrahedron(),
        builders.two_tetrahedra_one_face(), builders.rp3(), builders.double_bipyramid(5)]
    saw_reversed = False
    for tri in tables:
        s = compute_skeleton(tri)
        uf = directed_edge_classes(tri)
        pairs = set()
        for t in range(tri.size):
            for i in range(4):
                for j in range(i + 1, 4):
                    forward, backward = uf[(t, i, j)], uf[(t, j, i)]
                    pairs.add((s.edge_of(t, i, j), frozenset((forward, backward))))
        assert len(pairs) == s.e == len({key for _, key in pairs})
        for e, (rt, ri, rj) in enumerate(s.edge_reps):
            assert s.edge_reversed[e] == (uf[(rt, ri, rj)] == uf[(rt, rj, ri)])
            saw_reversed |= s.edge_reversed[e]
        for t in range(tri.size):
            for i in range(4):
                for j in range(4):
                    if i != j:
                        rt, ri, rj = s.edge_reps[s.edge_of(t, i, j)]
                        expected = 1 if uf[(t, i, j)] == uf[(rt, ri, rj)] else -1
                        assert s.aligned(t, i, j) == expected
        assert sum(s.edge_valences) == 6 * tri.size
    assert saw_reversed

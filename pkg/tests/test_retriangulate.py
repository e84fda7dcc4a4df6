import math
import time

import pytest

from trisparse import builders
from trisparse.errors import NotClosedError
from trisparse.graphs import heuristic_decomposition, validate_decomposition
from trisparse.heegaard import heegaard_from_triangulation
from trisparse.oracles import homology
from trisparse.retriangulate import (CONE, RING, adjacency_census, expected_vertex_count, ring_parameters,
                                     retriangulate_full, retriangulate_step, spine, step_bound_checks,
                                     step_budget, triangulate_face, valence_bound)
from trisparse.skeleton import compute_skeleton, counting_checks, is_closed_manifold
from trisparse.transforms import transform_for_retriangulation
from trisparse.triangulation import barycentric_subdivision, dual_graph


def test_cone_face():
    face = triangulate_face(7)
    assert face.mode == CONE
    assert len(face.triangles) == 7
    assert face.validate() == []
    assert face.degrees()[('w', 0)] == 7


def test_ring_face_with_explicit_parameters():
    face = triangulate_face(12, 7, 4)
    assert face.mode == RING
    assert len(face.triangles) == 26
    assert face.validate() == []
    assert face.euler_characteristic() == 1


@pytest.mark.parametrize('k', [10, 16, 17, 40, 100, 300])
def test_ring_faces_are_disks_with_small_degree(k):
    face = triangulate_face(k)
    m, d = ring_parameters(k)
    assert (face.m, face.d) == (m, d)
    assert face.validate() == []
    assert max(face.degrees().values()) <= valence_bound(k)
    for j in range(k):
        assert set(face.triangles[j].vertices) >= {('u', j), ('u', (j + 1) % k)}


def test_ring_parameters_out_of_range():
    with pytest.raises(ValueError):
        triangulate_face(10, 2, 4)
    with pytest.raises(ValueError):
        triangulate_face(0)


def test_spine_boundaries(rp3):
    sp = spine(rp3)
    assert sorted(sp.boundary_length(e) for e in range(4)) == [2, 2, 4, 4]
    with pytest.raises(NotClosedError):
        spine(builders.two_tetrahedra_example())


def test_low_valence_step_is_identity(rp3):
    result, trace = retriangulate_step(rp3)
    assert result is rp3
    assert trace.is_identity


def test_forced_step_on_s3(s3):
    result, trace = retriangulate_step(s3, force=True)
    assert result.size == 12
    assert is_closed_manifold(result)
    before, after = compute_skeleton(s3), compute_skeleton(result)
    assert after.v == expected_vertex_count(before, trace)
    assert all(holds for _, holds in counting_checks(result, after))
    assert homology(result) == homology(s3)
    assert sum(adjacency_census(result, trace).values()) == 2 * result.size


def test_step_on_bipyramid(bipyramid16):
    before = compute_skeleton(bipyramid16)
    result, trace = retriangulate_step(bipyramid16)
    after = compute_skeleton(result)
    assert is_closed_manifold(result, after)
    assert after.delta <= valence_bound(16) == 9
    assert all(holds for _, holds in step_bound_checks(before, after))
    assert after.v == expected_vertex_count(before, trace)
    census = adjacency_census(result, trace)
    assert sum(census.values()) == 2 * result.size
    assert census['e'] > 0 and census['f'] > 0
    assert heegaard_from_triangulation(result, after).crossing_count == 6 * result.size


def test_transferred_decomposition(bipyramid16):
    td = heuristic_decomposition(dual_graph(bipyramid16))
    result, trace = retriangulate_step(bipyramid16)
    transferred = transform_for_retriangulation(td, trace)
    assert validate_decomposition(dual_graph(result), transferred)
    assert transferred.width < 36 * (td.width + 1)
    assert transferred.same_tree(td)


def test_identity_trace_keeps_decomposition(rp3):
    td = heuristic_decomposition(dual_graph(rp3))
    _, trace = retriangulate_step(rp3)
    assert transform_for_retriangulation(td, trace) == td


def test_full_pipeline_on_bipyramid(bipyramid16):
    final, stats = retriangulate_full(bipyramid16, with_width=True)
    s = compute_skeleton(final)
    assert s.delta <= 9
    assert len(stats) - 1 <= step_budget(16)
    assert stats[0].delta == 16
    assert stats[-1].tw_ub is not None
    diagram = heegaard_from_triangulation(final, s)
    assert max(len(diagram.alpha_neighbours(i)) for i in range(len(diagram.alpha_curves))) <= 9
    assert max(len(diagram.beta_neighbours(i)) for i in range(len(diagram.beta_curves))) <= 3


def test_full_pipeline_leaves_low_valence_alone(rp3):
    final, stats = retriangulate_full(rp3)
    assert final is rp3
    assert len(stats) == 1


def test_step_budget():
    assert step_budget(9) == 0
    assert step_budget(16) == 4
    assert step_budget(256) == math.ceil(math.log2(8)) + 2


def test_not_closed_input(fig1):
    with pytest.raises(NotClosedError):
        retriangulate_full(fig1)


@pytest.mark.slow
def test_valence_300_step_bounds_and_transfer():
    tri = builders.double_bipyramid(300)
    before = compute_skeleton(tri)
    td = heuristic_decomposition(dual_graph(tri))
    result, trace = retriangulate_step(tri, skeleton=before)
    after = compute_skeleton(result)
    assert is_closed_manifold(result, after)
    assert all(holds for _, holds in step_bound_checks(before, after))
    assert after.delta <= valence_bound(300) == 21
    assert after.v == expected_vertex_count(before, trace)
    transferred = transform_for_retriangulation(td, trace)
    assert validate_decomposition(dual_graph(result), transferred)
    assert transferred.width < 36 * (td.width + 1)


@pytest.mark.slow
def test_valence_300_full_pipeline():
    final, stats = retriangulate_full(builders.double_bipyramid(300))
    assert stats[0].delta == 300
    assert stats[-1].delta <= 9
    assert stats[-1].n == final.size
    assert len(stats) - 1 <= step_budget(300)


@pytest.mark.slow
def test_pipeline_on_subdivided_input_finishes_in_a_minute():
    tri = barycentric_subdivision(barycentric_subdivision(builders.double_bipyramid(4)))
    assert tri.size == 4608
    start = time.perf_counter()
    final, stats = retriangulate_full(tri)
    diagram = heegaard_from_triangulation(final)
    elapsed = time.perf_counter() - start
    assert stats[0].delta == 16
    assert stats[-1].delta <= 9
    assert len(stats) - 1 <= step_budget(16)
    assert diagram.crossing_count == 6 * final.size
    assert elapsed < 60

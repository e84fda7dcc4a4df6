import pytest

from trisparse.errors import DecompositionError, ProvenanceError
from trisparse.graphs import TreeDecomposition, heuristic_decomposition, validate_decomposition
from trisparse.heegaard import (diagram_graph, heegaard_from_triangulation, minimize_diagram, orient_diagram,
                                read_diagram, write_diagram)
from trisparse.hopf import builtin_group, group_algebra
from trisparse.kuperberg import kuperberg_network
from trisparse.transforms import transform_for_diagram, transform_for_network
from trisparse.triangulation import barycentric_subdivision, dual_graph, orient


@pytest.fixture
def subdivided_rp3(rp3):
    return orient(barycentric_subdivision(rp3))


def test_diagram_transform(subdivided_rp3):
    tri = subdivided_rp3
    td = heuristic_decomposition(dual_graph(tri))
    diagram = heegaard_from_triangulation(tri)
    moved = transform_for_diagram(td, tri, diagram)
    assert validate_decomposition(diagram_graph(diagram), moved)
    assert moved.width <= 12 * (td.width + 1) - 1
    assert moved.same_tree(td)


def test_diagram_transform_needs_full_provenance(rp3):
    td = heuristic_decomposition(dual_graph(rp3))
    diagram = heegaard_from_triangulation(rp3)
    with pytest.raises(ProvenanceError):
        transform_for_diagram(td, rp3, minimize_diagram(diagram, rp3))
    with pytest.raises(ProvenanceError):
        transform_for_diagram(td, rp3, read_diagram(write_diagram(diagram)))
    with pytest.raises(DecompositionError):
        transform_for_diagram(TreeDecomposition([{0, 1, 5}]), rp3, diagram)


def test_network_transform(subdivided_rp3):
    tri = subdivided_rp3
    diagram = orient_diagram(heegaard_from_triangulation(tri), tri)
    network = kuperberg_network(diagram, group_algebra(builtin_group('Z2')))
    td = transform_for_diagram(heuristic_decomposition(dual_graph(tri)), tri, diagram)

    core_graph, core = network.core_graph()
    core_td = transform_for_network(td, network, reattach=False)
    assert validate_decomposition(core_graph, core_td)
    assert core_td.width <= 2 * (td.width + 1) - 1
    assert len(core) == core_graph.node_count

    full = transform_for_network(td, network)
    assert validate_decomposition(network.coupon_graph(), full)
    assert full.same_tree(td)


def test_network_transform_unknown_crossing(rp3):
    tri = orient(rp3)
    diagram = orient_diagram(heegaard_from_triangulation(tri), tri)
    network = kuperberg_network(diagram, group_algebra(builtin_group('Z2')))
    with pytest.raises(ProvenanceError):
        transform_for_network(TreeDecomposition([{0, 99}]), network)

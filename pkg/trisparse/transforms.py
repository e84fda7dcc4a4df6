"""
Width-preserving transfers of tree decompositions.

Each transform keeps the decomposition tree and replaces every bag
element by the objects derived from it:

- dual graph of a triangulation -> diagram graph of its Heegaard diagram
  (each tet brings the at most 12 crossings on its faces),
- dual graph of ``T`` -> dual graph of a retriangulation ``T*`` (each old
  tet brings the new tets anchored at it),
- diagram graph -> coupon graph of a Kuperberg network (each crossing
  brings the two coupons its wire joins).
"""

import logging
from typing import Dict, List

from trisparse.errors import DecompositionError, ProvenanceError
from trisparse.graphs import TreeDecomposition
from trisparse.heegaard import HeegaardDiagram, require_provenance
from trisparse.retriangulate import RetriangulationTrace
from trisparse.tensor_network import TensorNetwork
from trisparse.triangulation import Triangulation

logger = logging.getLogger(__name__)


def _check_range(decomposition: TreeDecomposition, limit: int, what: str):
    for i, bag in enumerate(decomposition.bags):
        for v in bag:
            if not 0 <= v < limit:
                raise DecompositionError(f"bag {i} names {what} {v}, expected 0..{limit - 1}")


def transform_for_diagram(decomposition: TreeDecomposition, tri: Triangulation,
                          diagram: HeegaardDiagram) -> TreeDecomposition:
    """
    Decomposition of the diagram graph from one of ``dual_graph(tri)``.

    A crossing joins the bags of both tets sharing its triangle, so the
    width grows to at most ``12 * (w + 1) - 1``.

    Raises:
        ProvenanceError: ``diagram`` was not built from ``tri`` or has been
            minimized.
        DecompositionError: a bag names a tet outside ``tri``.
    """
    prov = require_provenance(diagram, tri)
    if len(prov.origins) != 6 * tri.size:
        raise ProvenanceError("diagram has lost crossings since construction")
    _check_range(decomposition, tri.size, 'tet')
    touching: List[List[int]] = [[] for _ in range(tri.size)]
    for crossing, origin in enumerate(prov.origins):
        touching[origin.rep_tet].append(crossing)
        if origin.other_tet != origin.rep_tet:
            touching[origin.other_tet].append(crossing)
    bags = [{c for t in bag for c in touching[t]} for bag in decomposition.bags]
    result = TreeDecomposition(bags, decomposition.edges)
    logger.debug("diagram decomposition: width %d -> %d", decomposition.width, result.width)
    return result


def transform_for_retriangulation(decomposition: TreeDecomposition,
                                  trace: RetriangulationTrace) -> TreeDecomposition:
    """
    Decomposition of ``dual_graph(T*)`` from one of ``dual_graph(T)``.

    A new tet joins every bag holding one of its anchor tets: the corner tet
    of a cone or fan triangle, both corners of a ring triangle ``X``, or the
    corner block of a ring triangle ``W``. An empty trace gives back the
    input decomposition.

    Raises:
        DecompositionError: a bag names a tet the trace does not know.
    """
    if trace.is_identity:
        return TreeDecomposition(decomposition.bags, decomposition.edges)
    _check_range(decomposition, trace.source_tets, 'tet')
    anchored: Dict[int, List[int]] = {}
    for tet in range(len(trace.entries)):
        for old in trace.anchor_tets(tet):
            anchored.setdefault(old, []).append(tet)
    bags = [{new for old in bag for new in anchored.get(old, ())} for bag in decomposition.bags]
    result = TreeDecomposition(bags, decomposition.edges)
    logger.debug("retriangulation decomposition: width %d -> %d", decomposition.width, result.width)
    return result


def transform_for_network(decomposition: TreeDecomposition, network: TensorNetwork,
                          reattach: bool = True) -> TreeDecomposition:
    """
    Decomposition of a Kuperberg network's coupon graph from one of the
    diagram graph that produced it.

    Each crossing is replaced by its two coupons, which gives a
    decomposition of :meth:`TensorNetwork.core_graph` on its compact
    indices. With ``reattach`` the pendant trace, cotrace and antipode
    coupons are put back, each into the smallest bag holding all of its
    neighbours (lowest bag id on ties), and bags name coupon ids.

    Raises:
        ProvenanceError: a bag names a crossing the network does not carry.
    """
    pairs = network.crossing_coupons
    for i, bag in enumerate(decomposition.bags):
        for c in bag:
            if c not in pairs:
                raise ProvenanceError(f"bag {i} names crossing {c}, which the network does not carry")
    bags = [{cid for c in bag for cid in pairs[c]} for bag in decomposition.bags]
    core = network.core_coupons()
    if not reattach:
        index = {cid: i for i, cid in enumerate(core)}
        return TreeDecomposition([{index[cid] for cid in bag} for bag in bags], decomposition.edges)

    holding: Dict[int, List[int]] = {}
    for i, bag in enumerate(bags):
        for cid in bag:
            holding.setdefault(cid, []).append(i)
    core_set = set(core)
    placed = [set(bag) for bag in bags]
    for cid in range(network.coupon_count):
        if cid in core_set:
            continue
        neighbours = network.neighbours(cid)
        if not neighbours:
            placed[0].add(cid)
            continue
        candidates = [i for i in holding.get(neighbours[0], ()) if all(n in bags[i] for n in neighbours)]
        if not candidates:
            raise DecompositionError(f"no bag holds all neighbours of coupon {cid}")
        placed[min(candidates, key=lambda i: (len(bags[i]), i))].add(cid)
    result = TreeDecomposition(placed, decomposition.edges)
    logger.debug("network decomposition: width %d -> %d", decomposition.width, result.width)
    return result

"""
Kuperberg's invariant of closed oriented 3-manifolds from triangulations.

An oriented Heegaard diagram becomes a tensor network: every alpha curve
is a chain of multiplications closed by the trace, every beta curve a
chain of comultiplications fed by the cotrace, and each crossing wires a
coproduct leg to a product leg, through the antipode when its sign is
negative. The network's value times ``dim ** (g - |alpha| - |beta|)`` is
the invariant; for group algebras it counts homomorphisms from the
fundamental group.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from trisparse.errors import DecompositionError, EvaluationError
from trisparse.graphs import TreeDecomposition, heuristic_decomposition, validate_decomposition
from trisparse.heegaard import (ALPHA, BETA, HeegaardDiagram, heegaard_from_triangulation,
                                minimize_diagram, orient_diagram)
from trisparse.hopf import HopfAlgebraSpec
from trisparse.tensor_network import (ANTIPODE, COMULTIPLY, COTRACE, IN, MULTIPLY, OUT, TRACE,
                                      Contractor, TensorNetwork, evaluate)
from trisparse.transforms import transform_for_diagram, transform_for_network
from trisparse.triangulation import Triangulation, dual_graph, orient

logger = logging.getLogger(__name__)


@dataclass
class KuperbergResult:
    Z: object
    genus: int
    alpha_count: int
    beta_count: int
    dim: int
    value: object
    field: str
    coupons: int = 0
    max_rank: int = 0
    plan_width: Optional[int] = None

    @property
    def exponent(self) -> int:
        return self.genus - self.alpha_count - self.beta_count

    def as_pairs(self) -> List[Tuple[str, object]]:
        return [('field', self.field), ('dim', self.dim), ('genus', self.genus),
                ('alpha', self.alpha_count), ('beta', self.beta_count), ('coupons', self.coupons),
                ('plan_width', self.plan_width), ('max_rank', self.max_rank),
                ('Z', self.Z), ('value', self.value)]


def _crossing_wires(network: TensorNetwork, diagram: HeegaardDiagram, dim: int
                    ) -> Tuple[Dict[int, int], Dict[int, int]]:
    """Wire ends on the beta side and on the alpha side of every crossing."""
    beta_end, alpha_end = {}, {}
    for crossing in diagram.crossings:
        beta_end[crossing.id] = network.add_wire(dim, crossing.id)
        if crossing.sign == -1:
            alpha_end[crossing.id] = network.add_wire(dim, crossing.id)
        else:
            alpha_end[crossing.id] = beta_end[crossing.id]
    return beta_end, alpha_end


def kuperberg_network(diagram: HeegaardDiagram, algebra: HopfAlgebraSpec) -> TensorNetwork:
    """
    Tensor network of an oriented diagram.

    Alpha curve ``(c_0, ..., c_{r-1})`` gives ``M_1(c_0, c_1)``,
    ``M_i(w_{i-1}, c_i)`` and the trace of ``w_{r-1}``; a single crossing
    goes straight into the trace. Beta curves mirror this with ``Delta`` and
    the cotrace. ``network.crossing_coupons[c]`` is the pair (alpha coupon,
    beta coupon) of crossing ``c``.

    Raises:
        EvaluationError: the diagram is unoriented or has an unsigned
            crossing.
    """
    if not diagram.oriented:
        raise EvaluationError("Kuperberg networks need an oriented diagram")
    unset = [c.id for c in diagram.crossings if c.sign is None]
    if unset:
        raise EvaluationError(f"crossing {unset[0]} has no sign")

    d = algebra.dim
    network = TensorNetwork(algebra.field)
    beta_end, alpha_end = _crossing_wires(network, diagram, d)
    alpha_coupon: Dict[int, int] = {}
    beta_coupon: Dict[int, int] = {}

    for index, curve in enumerate(diagram.alpha_curves):
        if len(curve) == 1:
            alpha_coupon[curve[0]] = network.add_coupon(
                TRACE, algebra.trace, [alpha_end[curve[0]]], (IN,), label=(ALPHA, index, 0))
            continue
        previous = None
        for i in range(1, len(curve)):
            product = network.add_wire(d)
            inputs = [alpha_end[curve[0]], alpha_end[curve[1]]] if i == 1 else [previous, alpha_end[curve[i]]]
            cid = network.add_coupon(MULTIPLY, algebra.M, [product] + inputs, (OUT, IN, IN),
                                     label=(ALPHA, index, i))
            if i == 1:
                alpha_coupon[curve[0]] = cid
            alpha_coupon[curve[i]] = cid
            previous = product
        network.add_coupon(TRACE, algebra.trace, [previous], (IN,), label=(ALPHA, index, len(curve)))

    for index, curve in enumerate(diagram.beta_curves):
        if len(curve) == 1:
            beta_coupon[curve[0]] = network.add_coupon(
                COTRACE, algebra.cotrace, [beta_end[curve[0]]], (OUT,), label=(BETA, index, 0))
            continue
        incoming = network.add_wire(d)
        network.add_coupon(COTRACE, algebra.cotrace, [incoming], (OUT,), label=(BETA, index, len(curve)))
        for i in range(len(curve) - 1, 0, -1):
            left = beta_end[curve[0]] if i == 1 else network.add_wire(d)
            cid = network.add_coupon(COMULTIPLY, algebra.Delta, [left, beta_end[curve[i]], incoming],
                                     (OUT, OUT, IN), label=(BETA, index, i))
            if i == 1:
                beta_coupon[curve[0]] = cid
            beta_coupon[curve[i]] = cid
            incoming = left

    for crossing in diagram.crossings:
        if crossing.sign == -1:
            network.antipodes[crossing.id] = network.add_coupon(
                ANTIPODE, algebra.S, [alpha_end[crossing.id], beta_end[crossing.id]], (OUT, IN),
                label=crossing.id)
        network.crossing_coupons[crossing.id] = (alpha_coupon[crossing.id], beta_coupon[crossing.id])

    logger.debug("Kuperberg network: %d coupons for %d crossings (%d antipodes)",
                 network.coupon_count, diagram.crossing_count, len(network.antipodes))
    return network


def normalize(Z, diagram: HeegaardDiagram, algebra: HopfAlgebraSpec):
    """``Z * dim ** (g - |alpha| - |beta|)`` in the algebra's field."""
    exponent = diagram.genus - len(diagram.alpha_curves) - len(diagram.beta_curves)
    return algebra.field.normalize(Z * algebra.field.power(algebra.dim, exponent))


def kuperberg_invariant(tri: Triangulation, algebra: HopfAlgebraSpec,
                        decomposition: Optional[TreeDecomposition] = None,
                        minimize: bool = False, mirror: bool = False,
                        heuristic: Optional[str] = None) -> KuperbergResult:
    """
    Kuperberg's invariant of the closed orientable manifold ``tri``.

    Args:
        tri: Closed orientable triangulation.
        algebra: Involutory Hopf algebra.
        decomposition: Tree decomposition of ``dual_graph(tri)`` guiding the
            contraction; a heuristic one is built when omitted. A heuristic
            decomposition of the coupon graph replaces the transferred plan
            when it is narrower.
        minimize: Evaluate on the minimal diagram, contracted along a
            heuristic decomposition of its coupon graph.
        mirror: Use the opposite orientation.
        heuristic: Elimination heuristic for any decomposition built here.

    Raises:
        NotClosedError: ``tri`` is not closed.
        NonOrientableError: ``tri`` is not orientable.
        DecompositionError: ``decomposition`` is not valid for the dual graph,
            or the contraction plan is not valid for the coupon graph.
        EvaluationError: an intermediate tensor would exceed
            ``Config.MAX_TENSOR_ENTRIES``.
    """
    oriented = orient(tri)
    if mirror:
        oriented = oriented.with_orientation([-sign for sign in oriented.orientation])
    diagram = orient_diagram(heegaard_from_triangulation(oriented), oriented)

    if minimize:
        diagram = minimize_diagram(diagram, oriented)
    network = kuperberg_network(diagram, algebra)
    coupons = network.coupon_graph()
    if minimize:
        plan = heuristic_decomposition(coupons, heuristic)
    else:
        dual = dual_graph(oriented)
        if decomposition is None:
            decomposition = heuristic_decomposition(dual, heuristic)
        check = validate_decomposition(dual, decomposition)
        if not check:
            raise DecompositionError(f"decomposition of the dual graph: {check.describe()}")
        plan = transform_for_network(transform_for_diagram(decomposition, oriented, diagram), network)
        direct = heuristic_decomposition(coupons, heuristic)
        if direct.width < plan.width:
            logger.info("contracting along a direct decomposition (width %d) instead of the "
                        "transferred one (width %d)", direct.width, plan.width)
            plan = direct

    check = validate_decomposition(coupons, plan)
    if not check:
        raise DecompositionError(f"contraction plan for the coupon graph: {check.describe()}")
    contractor = Contractor(network)
    Z = evaluate(network, plan, contractor)
    value = normalize(Z, diagram, algebra)
    result = KuperbergResult(Z=Z, genus=diagram.genus, alpha_count=len(diagram.alpha_curves),
                             beta_count=len(diagram.beta_curves), dim=algebra.dim, value=value,
                             field=algebra.field.name, coupons=network.coupon_count,
                             max_rank=contractor.max_rank, plan_width=plan.width)
    logger.info("kuperberg %s: Z=%s value=%s (coupons=%d, max rank %d)", algebra.name, Z, value,
                network.coupon_count, contractor.max_rank)
    return result

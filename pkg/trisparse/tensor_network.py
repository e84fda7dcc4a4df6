"""
Exact tensor networks of coupons joined by directed wires.

Every coupon leg is one axis of the coupon's tensor and is attached to a
wire; a wire runs from exactly one ``out`` leg to exactly one ``in`` leg. A
fully wired network denotes a scalar, which :func:`evaluate` computes by
pairwise ``tensordot`` contractions over exact scalars.

Contraction plans are either greedy (smallest intermediate first) or driven
by a tree decomposition of the coupon graph: each coupon is contracted in
the topmost bag that holds it, subtrees first, so an intermediate result
only keeps the wires that leave its subtree.
"""

import heapq
import math
import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

import numpy as np

from trisparse.config import get_config
from trisparse.errors import EvaluationError
from trisparse.graphs import Multigraph, TreeDecomposition
from trisparse.hopf import ScalarField

logger = logging.getLogger(__name__)

OUT = 'out'
IN = 'in'

# Coupon kinds
MULTIPLY = 'M'
COMULTIPLY = 'Delta'
ANTIPODE = 'S'
TRACE = 'trace'
COTRACE = 'cotrace'
TENSOR = 'tensor'


@dataclass
class Wire:
    id: int
    dim: int
    label: Optional[int] = None
    tail: Optional[Tuple[int, int]] = None  # (coupon, axis) of the out-leg
    head: Optional[Tuple[int, int]] = None  # (coupon, axis) of the in-leg


@dataclass
class Coupon:
    id: int
    kind: str
    tensor: np.ndarray = field(repr=False)
    wires: Tuple[int, ...]
    directions: Tuple[str, ...]
    label: Optional[object] = None

    @property
    def rank(self) -> int:
        return len(self.wires)


class TensorNetwork:
    """
    Coupons and wires over one scalar field.

    ``crossing_coupons`` and ``antipodes`` are filled by network builders
    that know which coupons carry which crossing of a diagram.
    """

    def __init__(self, field: Optional[ScalarField] = None):
        self.field = field or ScalarField('Q')
        self.coupons: List[Coupon] = []
        self.wires: List[Wire] = []
        self.crossing_coupons: Dict[int, Tuple[int, int]] = {}
        self.antipodes: Dict[int, int] = {}

    def add_wire(self, dim: int, label: Optional[int] = None) -> int:
        self.wires.append(Wire(len(self.wires), dim, label))
        return len(self.wires) - 1

    def add_coupon(self, kind: str, tensor: np.ndarray, wires: Sequence[int],
                   directions: Sequence[str], label=None) -> int:
        """
        Attach a coupon; leg ``i`` of ``tensor`` sits on ``wires[i]``.

        Raises:
            EvaluationError: rank mismatch, unknown wire, or a wire end that
                is already taken.
        """
        tensor = np.asarray(tensor, dtype=object)
        if tensor.ndim != len(wires) or len(wires) != len(directions):
            raise EvaluationError(f"{kind} coupon: tensor rank {tensor.ndim} for {len(wires)} legs")
        cid = len(self.coupons)
        for axis, (w, direction) in enumerate(zip(wires, directions)):
            if not 0 <= w < len(self.wires):
                raise EvaluationError(f"{kind} coupon names unknown wire {w}")
            wire = self.wires[w]
            end = 'tail' if direction == OUT else 'head'
            if direction not in (OUT, IN):
                raise EvaluationError(f"leg direction must be '{OUT}' or '{IN}', got {direction!r}")
            if getattr(wire, end) is not None:
                raise EvaluationError(f"wire {w} already has an {direction}-leg")
            setattr(wire, end, (cid, axis))
        self.coupons.append(Coupon(cid, kind, tensor, tuple(wires), tuple(directions), label))
        return cid

    @property
    def coupon_count(self) -> int:
        return len(self.coupons)

    def count(self, kind: str) -> int:
        return sum(1 for c in self.coupons if c.kind == kind)

    def validate(self):
        """
        Raises:
            EvaluationError: a dangling wire end or a wire whose dimension
                disagrees with a leg.
        """
        for wire in self.wires:
            if wire.tail is None or wire.head is None:
                raise EvaluationError(f"wire {wire.id} is not fully contracted")
            for cid, axis in (wire.tail, wire.head):
                size = self.coupons[cid].tensor.shape[axis]
                if size != wire.dim:
                    raise EvaluationError(
                        f"wire {wire.id} has dimension {wire.dim} but coupon {cid} leg {axis} has {size}")

    def coupon_graph(self) -> Multigraph:
        """One node per coupon, one edge per wire (labeled by wire id)."""
        graph = Multigraph(self.coupon_count)
        for wire in self.wires:
            if wire.tail is not None and wire.head is not None:
                graph.add_edge(wire.tail[0], wire.head[0], label=wire.id)
        return graph

    def core_coupons(self) -> List[int]:
        """Coupons carrying a crossing, in increasing id order."""
        return sorted({cid for pair in self.crossing_coupons.values() for cid in pair})

    def core_graph(self) -> Tuple[Multigraph, List[int]]:
        """
        Coupon graph without pendant trace/cotrace coupons, with each
        antipode replaced by an edge between its two neighbours.

        Returns:
            The graph on compact indices and the coupon id of each index.
        """
        core = self.core_coupons()
        index = {cid: i for i, cid in enumerate(core)}
        graph = Multigraph(len(core), node_labels=core)
        for wire in self.wires:
            if wire.tail is None or wire.head is None:
                continue
            u, v = wire.tail[0], wire.head[0]
            if u in index and v in index:
                graph.add_edge(index[u], index[v], label=wire.id)
        for crossing, cid in sorted(self.antipodes.items()):
            alpha, beta = self.crossing_coupons[crossing]
            graph.add_edge(index[alpha], index[beta], label=('antipode', cid))
        return graph, core

    def neighbours(self, cid: int) -> List[int]:
        out = set()
        for w in self.coupons[cid].wires:
            wire = self.wires[w]
            for end in (wire.tail, wire.head):
                if end is not None and end[0] != cid:
                    out.add(end[0])
        return sorted(out)

    def __repr__(self):
        return f"TensorNetwork(coupons={self.coupon_count}, wires={len(self.wires)})"


@dataclass(frozen=True)
class Partial:
    """Intermediate result: a tensor whose axes sit on ``wires``."""
    tensor: np.ndarray = field(repr=False)
    wires: Tuple[int, ...]
    coupons: FrozenSet[int]

    @property
    def rank(self) -> int:
        return len(self.wires)


def _trace_repeated(tensor: np.ndarray, wires: Sequence[int]) -> Tuple[np.ndarray, Tuple[int, ...]]:
    """Sum over every wire that appears on two axes of the same tensor."""
    wires = list(wires)
    while True:
        seen = {}
        pair = None
        for axis, w in enumerate(wires):
            if w in seen:
                pair = (seen[w], axis)
                break
            seen[w] = axis
        if pair is None:
            return tensor, tuple(wires)
        i, j = pair
        tensor = np.asarray(np.diagonal(tensor, axis1=i, axis2=j).sum(axis=-1), dtype=object)
        del wires[j]
        del wires[i]


class Contractor:
    """
    Pairwise contraction over one network, recording the largest rank seen.

    No intermediate tensor may exceed ``max_entries`` scalars
    (``Config.MAX_TENSOR_ENTRIES`` by default).
    """

    def __init__(self, network: TensorNetwork, max_entries: Optional[int] = None):
        self.network = network
        self.field = network.field
        self.max_entries = max_entries or get_config().MAX_TENSOR_ENTRIES
        self.max_rank = 0
        self.steps = 0

    def _note(self, rank: int):
        self.max_rank = max(self.max_rank, rank)

    def leaf(self, cid: int) -> Partial:
        coupon = self.network.coupons[cid]
        self._note(coupon.rank)
        tensor, wires = _trace_repeated(coupon.tensor, coupon.wires)
        return Partial(np.asarray(self.field.reduce(tensor), dtype=object), wires, frozenset([cid]))

    @staticmethod
    def merged_rank(a: Partial, b: Partial) -> int:
        shared = set(a.wires) & set(b.wires)
        return a.rank + b.rank - 2 * len(shared)

    def merge(self, a: Partial, b: Partial) -> Partial:
        """
        Raises:
            EvaluationError: the result would hold more than ``max_entries``
                scalars.
        """
        shared = [w for w in a.wires if w in set(b.wires)]
        wires = tuple(w for w in a.wires if w not in shared) + tuple(w for w in b.wires if w not in shared)
        entries = math.prod(self.network.wires[w].dim for w in wires)
        if entries > self.max_entries:
            raise EvaluationError(
                f"contraction would build a rank {len(wires)} tensor with {entries} entries "
                f"(limit {self.max_entries})")
        axes_a = [a.wires.index(w) for w in shared]
        axes_b = [b.wires.index(w) for w in shared]
        tensor = np.tensordot(a.tensor, b.tensor, (axes_a, axes_b))
        tensor = np.asarray(self.field.reduce(tensor), dtype=object)
        self._note(len(wires))
        self.steps += 1
        return Partial(tensor, wires, a.coupons | b.coupons)

    def contract_pool(self, pool: List[Partial]) -> List[Partial]:
        """
        Contract every pair of partials that share a wire, smallest result
        first; ties go to the lower pair of pool positions.

        Partials sharing no wire with any other are returned as they are.
        """
        items: Dict[int, Partial] = dict(enumerate(pool))
        next_id = len(pool)
        holders: Dict[int, set] = {}
        for pid, partial in items.items():
            for w in partial.wires:
                holders.setdefault(w, set()).add(pid)
        heap = []

        def push(pid):
            partners = set()
            for w in items[pid].wires:
                partners.update(holders[w])
            partners.discard(pid)
            for other in partners:
                heapq.heappush(heap, (self.merged_rank(items[pid], items[other]), min(pid, other), max(pid, other)))

        for pid in list(items):
            push(pid)
        while heap:
            _, a, b = heapq.heappop(heap)
            if a not in items or b not in items:
                continue
            first, second = items.pop(a), items.pop(b)
            merged = self.merge(first, second)
            for w in first.wires + second.wires:
                holders[w].discard(a)
                holders[w].discard(b)
            items[next_id] = merged
            for w in merged.wires:
                holders.setdefault(w, set()).add(next_id)
            push(next_id)
            next_id += 1
        return [items[pid] for pid in sorted(items)]

    def finish(self, pool: Sequence[Partial]):
        """Product of the fully contracted partials."""
        value = self.field.coerce(1)
        for partial in pool:
            if partial.rank:
                raise EvaluationError(f"partial result still has open wires {list(partial.wires)}")
            value = value * partial.tensor.item()
        return self.field.normalize(value)


def _greedy(network: TensorNetwork, contractor: Contractor):
    pool = [contractor.leaf(c.id) for c in network.coupons]
    return contractor.finish(contractor.contract_pool(pool))


def _by_decomposition(network: TensorNetwork, decomposition: TreeDecomposition, contractor: Contractor):
    if network.coupon_count == 0:
        return contractor.field.coerce(1)
    if not decomposition.bags:
        raise EvaluationError("contraction plan has no bags")
    try:
        parent, order = decomposition.rooted(0)
    except ValueError as exc:
        raise EvaluationError(f"contraction plan is not a tree: {exc}")
    depth = [0] * decomposition.node_count
    for node in reversed(order):
        if parent[node] is not None:
            depth[node] = depth[parent[node]] + 1

    owner: Dict[int, int] = {}
    for bag_id in sorted(range(decomposition.node_count), key=lambda b: (depth[b], b)):
        for cid in decomposition.bags[bag_id]:
            if not 0 <= cid < network.coupon_count:
                raise EvaluationError(f"bag {bag_id} names unknown coupon {cid}")
            owner.setdefault(cid, bag_id)
    missing = [c.id for c in network.coupons if c.id not in owner]
    if missing:
        raise EvaluationError(f"contraction plan does not cover coupon {missing[0]}")

    owned: Dict[int, List[int]] = {}
    for cid, bag_id in owner.items():
        owned.setdefault(bag_id, []).append(cid)
    leg_limit = max(c.rank for c in network.coupons)
    pools: Dict[int, List[Partial]] = {}
    for bag_id in order:
        pool = []
        for child in decomposition.neighbors(bag_id):
            if child != parent[bag_id]:
                pool.extend(pools.pop(child))
        pool.extend(contractor.leaf(cid) for cid in sorted(owned.get(bag_id, ())))
        pool = contractor.contract_pool(pool)
        up = parent[bag_id]
        if up is not None:
            separator = decomposition.bags[bag_id] & decomposition.bags[up]
            open_wires = sum(p.rank for p in pool)
            if open_wires > leg_limit * len(separator):
                raise EvaluationError(
                    f"bag {bag_id} passes {open_wires} open wires over a separator of {len(separator)}")
        pools[bag_id] = pool
    return contractor.finish(pools[order[-1]])


def evaluate(network: TensorNetwork, plan: Optional[TreeDecomposition] = None,
             contractor: Optional[Contractor] = None):
    """
    Exact scalar of a fully contracted network.

    Args:
        network: The network; validated first.
        plan: Tree decomposition of ``network.coupon_graph()`` whose bags
            name coupon ids, or ``None`` for greedy contraction.
        contractor: Optional contractor, to read ``max_rank`` afterwards.

    Raises:
        EvaluationError: dangling wires, dimension mismatches, or a plan that
            does not cover the network.
    """
    network.validate()
    contractor = contractor or Contractor(network)
    if plan is None:
        value = _greedy(network, contractor)
    else:
        value = _by_decomposition(network, plan, contractor)
    logger.debug("evaluated %r in %d contractions, max rank %d", network, contractor.steps,
                 contractor.max_rank)
    return value

"""
Multigraphs and tree decompositions.

Elimination-order heuristics (min-degree, min-fill) build decompositions
of the simple graph underlying a multigraph; loops and parallel edges do not
change treewidth and are dropped before elimination. Graphs small enough for
exhaustive search get an optimal order instead.
"""

import heapq
import itertools
import logging
from collections import deque
from dataclasses import dataclass
from typing import Any, Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

import networkx as nx

from trisparse.config import get_config
from trisparse.errors import DecompositionError, ParseError

logger = logging.getLogger(__name__)

STRATEGIES = ('min-degree', 'min-fill')


class Multigraph:
    """
    Undirected multigraph on nodes ``0..node_count-1``.

    Edges keep their insertion index, which is their identifier. Loops add
    two to the degree of their node.
    """

    def __init__(self, node_count: int, edges: Optional[Iterable[Tuple[int, int]]] = None,
                 node_labels: Optional[Sequence[Any]] = None):
        if node_count < 0:
            raise ValueError("node_count must be non-negative")
        self.node_count = node_count
        self.edges: List[Tuple[int, int]] = []
        self.edge_labels: List[Any] = []
        self.node_labels = list(node_labels) if node_labels is not None else None
        for u, v in edges or ():
            self.add_edge(u, v)

    def add_edge(self, u: int, v: int, label: Any = None) -> int:
        if not (0 <= u < self.node_count and 0 <= v < self.node_count):
            raise ValueError(f"edge ({u}, {v}) has an endpoint outside 0..{self.node_count - 1}")
        self.edges.append((u, v))
        self.edge_labels.append(label)
        return len(self.edges) - 1

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def degrees(self) -> List[int]:
        deg = [0] * self.node_count
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def degree(self, node: int) -> int:
        return self.degrees()[node]

    def loops(self) -> List[int]:
        """Ids of loop edges."""
        return [i for i, (u, v) in enumerate(self.edges) if u == v]

    def simple_graph(self) -> nx.Graph:
        """Underlying simple graph: all nodes, no loops, no parallel edges."""
        graph = nx.Graph()
        graph.add_nodes_from(range(self.node_count))
        graph.add_edges_from((u, v) for u, v in self.edges if u != v)
        return graph

    def to_networkx(self) -> nx.MultiGraph:
        graph = nx.MultiGraph()
        graph.add_nodes_from(range(self.node_count))
        for i, (u, v) in enumerate(self.edges):
            graph.add_edge(u, v, key=i, label=self.edge_labels[i])
        return graph

    def is_regular(self, degree: int) -> bool:
        return all(d == degree for d in self.degrees())

    def _edge_multiset(self):
        return sorted((min(u, v), max(u, v)) for u, v in self.edges)

    def __eq__(self, other):
        if not isinstance(other, Multigraph):
            return NotImplemented
        return self.node_count == other.node_count and self._edge_multiset() == other._edge_multiset()

    def __repr__(self):
        return f"Multigraph(nodes={self.node_count}, edges={self.edge_count})"


class TreeDecomposition:
    """
    Tree decomposition: bags indexed ``0..len(bags)-1`` and tree edges
    between bag indices.
    """

    def __init__(self, bags: Sequence[Iterable[int]], edges: Iterable[Tuple[int, int]] = ()):
        self.bags: List[FrozenSet[int]] = [frozenset(b) for b in bags]
        self.edges: List[Tuple[int, int]] = sorted((min(a, b), max(a, b)) for a, b in edges)
        self._tree = None

    @property
    def width(self) -> int:
        if not self.bags:
            return -1
        return max(len(b) for b in self.bags) - 1

    @property
    def node_count(self) -> int:
        return len(self.bags)

    def tree(self) -> nx.Graph:
        if self._tree is None:
            tree = nx.Graph()
            tree.add_nodes_from(range(len(self.bags)))
            tree.add_edges_from(self.edges)
            self._tree = tree
        return self._tree

    def neighbors(self, node: int) -> List[int]:
        return sorted(self.tree().neighbors(node))

    def rooted(self, root: int = 0) -> Tuple[List[Optional[int]], List[int]]:
        """
        Parent array and post-order for the tree rooted at ``root``.

        Children are visited in increasing id order.

        Raises:
            DecompositionError: the bag graph is not a tree.
        """
        if not nx.is_tree(self.tree()):
            raise DecompositionError("decomposition graph is not a tree")
        parent: List[Optional[int]] = [None] * len(self.bags)
        order: List[int] = []
        stack = [(root, None, False)]
        while stack:
            node, up, expanded = stack.pop()
            if expanded:
                order.append(node)
                continue
            parent[node] = up
            stack.append((node, up, True))
            for child in reversed(self.neighbors(node)):
                if child != up:
                    stack.append((child, node, False))
        return parent, order

    def postorder(self, root: int = 0) -> List[int]:
        return self.rooted(root)[1]

    def bags_containing(self, vertex: int) -> List[int]:
        return [i for i, bag in enumerate(self.bags) if vertex in bag]

    def same_tree(self, other: 'TreeDecomposition') -> bool:
        return len(self.bags) == len(other.bags) and self.edges == other.edges

    def __eq__(self, other):
        if not isinstance(other, TreeDecomposition):
            return NotImplemented
        return self.bags == other.bags and self.edges == other.edges

    def __repr__(self):
        return f"TreeDecomposition(bags={len(self.bags)}, width={self.width})"


@dataclass
class DecompositionCheck:
    """Outcome of :func:`validate_decomposition`; truthy iff valid."""
    valid: bool
    property: Optional[str] = None
    witness: Any = None

    def __bool__(self):
        return self.valid

    def describe(self) -> str:
        if self.valid:
            return 'valid'
        return f"{self.property} violated at {self.witness!r}"


def validate_decomposition(graph: Multigraph, decomposition: TreeDecomposition) -> DecompositionCheck:
    """
    Check the tree, vertex coverage, edge coverage and subtree properties.

    Properties are checked in that order; the first failure is reported with
    a witness (a vertex, an edge id, or ``None`` for the tree property).
    """
    tree = decomposition.tree()
    if not decomposition.bags or not nx.is_tree(tree):
        return DecompositionCheck(False, 'tree', None)

    where: Dict[int, List[int]] = {}
    for i, bag in enumerate(decomposition.bags):
        for v in bag:
            if not 0 <= v < graph.node_count:
                return DecompositionCheck(False, 'vertex range', v)
            where.setdefault(v, []).append(i)

    for v in range(graph.node_count):
        if v not in where:
            return DecompositionCheck(False, 'vertex coverage', v)

    for edge_id, (u, v) in enumerate(graph.edges):
        if not any(v in decomposition.bags[i] for i in where[u]):
            return DecompositionCheck(False, 'edge coverage', edge_id)

    for v in range(graph.node_count):
        nodes = where[v]
        if len(nodes) > 1 and not nx.is_connected(tree.subgraph(nodes)):
            return DecompositionCheck(False, 'subtree', v)

    return DecompositionCheck(True)


def bfs_tree_edges(node_count: int, edges: Sequence[Tuple[int, int]], root: int = 0) -> Set[int]:
    """
    Edge ids of a breadth-first spanning forest.

    Search starts at ``root``, then at the least unvisited node of each
    further component; neighbours are taken in edge-id order.
    """
    incident: List[List[Tuple[int, int]]] = [[] for _ in range(node_count)]
    for i, (u, v) in enumerate(edges):
        if u != v:
            incident[u].append((i, v))
            incident[v].append((i, u))
    seen = [False] * node_count
    tree = set()
    for start in [root] + list(range(node_count)):
        if start >= node_count or seen[start]:
            continue
        seen[start] = True
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for i, w in incident[u]:
                if not seen[w]:
                    seen[w] = True
                    tree.add(i)
                    queue.append(w)
    return tree


def _adjacency(graph: nx.Graph) -> Dict[int, Set[int]]:
    return {v: set(graph.neighbors(v)) for v in graph.nodes}


def _eliminate(adj: Dict[int, Set[int]], v: int) -> Set[int]:
    """Remove ``v`` and turn its neighbourhood into a clique."""
    nbrs = adj.pop(v)
    for u in nbrs:
        adj[u].discard(v)
        adj[u].update(w for w in nbrs if w != u)
    return nbrs


def _fill_in(adj: Dict[int, Set[int]], v: int) -> int:
    nbrs = sorted(adj[v])
    return sum(1 for a, b in itertools.combinations(nbrs, 2) if b not in adj[a])


def _min_degree_order(adj: Dict[int, Set[int]]) -> List[int]:
    heap = [(len(nbrs), v) for v, nbrs in adj.items()]
    heapq.heapify(heap)
    order = []
    while heap:
        degree, v = heapq.heappop(heap)
        if v not in adj or degree != len(adj[v]):
            continue
        order.append(v)
        for u in _eliminate(adj, v):
            heapq.heappush(heap, (len(adj[u]), u))
    return order


def _min_fill_order(adj: Dict[int, Set[int]]) -> List[int]:
    fill = {v: _fill_in(adj, v) for v in adj}
    heap = [(f, v) for v, f in fill.items()]
    heapq.heapify(heap)
    order = []
    while heap:
        value, v = heapq.heappop(heap)
        if v not in adj or fill[v] != value:
            continue
        order.append(v)
        nbrs = _eliminate(adj, v)
        del fill[v]
        touched = set(nbrs)
        for u in nbrs:
            touched.update(adj[u])
        for u in touched:
            fresh = _fill_in(adj, u)
            if fresh != fill[u]:
                fill[u] = fresh
                heapq.heappush(heap, (fresh, u))
    return order


def elimination_order(graph: Multigraph, strategy: str) -> List[int]:
    """Greedy elimination order; ties go to the lowest node id."""
    adj = _adjacency(graph.simple_graph())
    if strategy == 'min-degree':
        return _min_degree_order(adj)
    if strategy == 'min-fill':
        return _min_fill_order(adj)
    raise ValueError(f"Unknown strategy: {strategy} (expected one of {', '.join(STRATEGIES)})")


def order_width(graph: Multigraph, order: Sequence[int]) -> int:
    adj = _adjacency(graph.simple_graph())
    width = -1
    for v in order:
        width = max(width, len(adj[v]))
        _eliminate(adj, v)
    return width


def decomposition_from_order(graph: Multigraph, order: Sequence[int]) -> TreeDecomposition:
    """
    Tree decomposition induced by an elimination order.

    The bag of ``v`` is ``v`` plus its neighbours at elimination time; its
    parent is the bag of the earliest-eliminated of those neighbours. The
    roots of separate components are chained to the first root.
    """
    if sorted(order) != list(range(graph.node_count)):
        raise ValueError("order must list every node exactly once")
    if graph.node_count == 0:
        return TreeDecomposition([frozenset()])
    adj = _adjacency(graph.simple_graph())
    position = {v: i for i, v in enumerate(order)}
    bags = []
    parents: List[Optional[int]] = []
    for v in order:
        nbrs = _eliminate(adj, v)
        bags.append(frozenset(nbrs | {v}))
        parents.append(position[min(nbrs, key=position.__getitem__)] if nbrs else None)
    edges = [(i, p) for i, p in enumerate(parents) if p is not None]
    roots = [i for i, p in enumerate(parents) if p is None]
    edges.extend((roots[0], r) for r in roots[1:])
    return TreeDecomposition(bags, edges)


def exact_decomposition(graph: Multigraph) -> TreeDecomposition:
    """
    Minimum-width decomposition by trying every elimination order.

    Only sensible for a handful of nodes; the first optimal order in
    lexicographic order wins.
    """
    best_order, best_width = None, None
    for order in itertools.permutations(range(graph.node_count)):
        width = order_width(graph, order)
        if best_width is None or width < best_width:
            best_order, best_width = order, width
    return decomposition_from_order(graph, best_order)


def heuristic_decomposition(graph: Multigraph, strategy: Optional[str] = None) -> TreeDecomposition:
    """
    Tree decomposition from a greedy elimination order.

    Args:
        graph: Any multigraph; loops and parallel edges are ignored.
        strategy: ``min-degree`` or ``min-fill``; defaults to
            ``Config.DEFAULT_HEURISTIC``.

    Returns:
        A valid decomposition. Graphs with at most
        ``Config.EXACT_WIDTH_NODE_LIMIT`` nodes get an optimal one.
    """
    cfg = get_config()
    strategy = strategy or cfg.DEFAULT_HEURISTIC
    if strategy not in STRATEGIES:
        raise ValueError(f"Unknown strategy: {strategy} (expected one of {', '.join(STRATEGIES)})")
    if graph.node_count <= cfg.EXACT_WIDTH_NODE_LIMIT:
        decomposition = exact_decomposition(graph)
    else:
        decomposition = decomposition_from_order(graph, elimination_order(graph, strategy))
    logger.debug("%s decomposition of %r: width %d", strategy, graph, decomposition.width)
    return decomposition


def single_bag_decomposition(graph: Multigraph) -> TreeDecomposition:
    return TreeDecomposition([range(graph.node_count)])


# PACE 2017 formats

def write_pace_graph(graph: Multigraph) -> str:
    lines = [f"p tw {graph.node_count} {graph.edge_count}"]
    lines.extend(f"{u + 1} {v + 1}" for u, v in graph.edges)
    return '\n'.join(lines) + '\n'


def _content_lines(text: str):
    for lineno, raw in enumerate(text.split('\n'), 1):
        tokens = raw.split()
        if not tokens or tokens[0] == 'c':
            continue
        yield lineno, tokens


def _positive_ints(tokens, lineno) -> List[int]:
    try:
        values = [int(t) for t in tokens]
    except ValueError:
        raise ParseError(f"expected integers, got {' '.join(tokens)!r}", lineno)
    if any(v < 0 for v in values):
        raise ParseError("negative value", lineno)
    return values


def read_pace_graph(text: str) -> Multigraph:
    """Parse a PACE ``.gr`` document (1-indexed vertices)."""
    graph = None
    expected = 0
    for lineno, tokens in _content_lines(text):
        if graph is None:
            if len(tokens) != 4 or tokens[:2] != ['p', 'tw']:
                raise ParseError("expected header 'p tw <n> <m>'", lineno, 1)
            n, expected = _positive_ints(tokens[2:], lineno)
            graph = Multigraph(n)
            continue
        if len(tokens) != 2:
            raise ParseError("expected edge line 'u v'", lineno, 1)
        u, v = _positive_ints(tokens, lineno)
        if not (1 <= u <= graph.node_count and 1 <= v <= graph.node_count):
            raise ParseError(f"edge ({u}, {v}) out of range", lineno, 1)
        graph.add_edge(u - 1, v - 1)
    if graph is None:
        raise ParseError("missing 'p tw' header", 1, 1)
    if graph.edge_count != expected:
        raise ParseError(f"header declares {expected} edges, found {graph.edge_count}")
    return graph


def write_pace_decomposition(decomposition: TreeDecomposition, node_count: int) -> str:
    bag_size = max((len(b) for b in decomposition.bags), default=0)
    lines = [f"s td {len(decomposition.bags)} {bag_size} {node_count}"]
    for i, bag in enumerate(decomposition.bags, 1):
        lines.append(' '.join(['b', str(i)] + [str(v + 1) for v in sorted(bag)]))
    lines.extend(f"{a + 1} {b + 1}" for a, b in decomposition.edges)
    return '\n'.join(lines) + '\n'


def read_pace_decomposition(text: str) -> Tuple[TreeDecomposition, int]:
    """
    Parse a PACE ``.td`` document.

    Returns:
        The decomposition (0-indexed) and the declared graph node count.
    """
    header = None
    bags: Dict[int, FrozenSet[int]] = {}
    edges = []
    for lineno, tokens in _content_lines(text):
        if header is None:
            if len(tokens) != 5 or tokens[:2] != ['s', 'td']:
                raise ParseError("expected header 's td <bags> <width+1> <n>'", lineno, 1)
            header = _positive_ints(tokens[2:], lineno)
            continue
        bag_count, bag_size, n = header
        if tokens[0] == 'b':
            values = _positive_ints(tokens[1:], lineno)
            if not values:
                raise ParseError("bag line without an index", lineno, 1)
            index, members = values[0], values[1:]
            if not 1 <= index <= bag_count:
                raise ParseError(f"bag index {index} out of range", lineno, 3)
            if index - 1 in bags:
                raise ParseError(f"bag {index} listed twice", lineno, 3)
            if len(set(members)) > bag_size:
                raise ParseError(f"bag {index} has {len(set(members))} vertices, "
                                 f"exceeding the declared width", lineno, 1)
            if any(not 1 <= v <= n for v in members):
                raise ParseError(f"bag {index} names a vertex outside 1..{n}", lineno, 1)
            bags[index - 1] = frozenset(v - 1 for v in members)
            continue
        if len(tokens) != 2:
            raise ParseError("expected tree edge line 'i j'", lineno, 1)
        a, b = _positive_ints(tokens, lineno)
        if not (1 <= a <= bag_count and 1 <= b <= bag_count):
            raise ParseError(f"tree edge ({a}, {b}) out of range", lineno, 1)
        edges.append((a - 1, b - 1))
    if header is None:
        raise ParseError("missing 's td' header", 1, 1)
    bag_count, _, n = header
    if len(bags) != bag_count:
        raise ParseError(f"header declares {bag_count} bags, found {len(bags)}")
    return TreeDecomposition([bags[i] for i in range(bag_count)], edges), n

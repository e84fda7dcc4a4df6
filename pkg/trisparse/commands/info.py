"""``info``: skeleton counts and counting identities of a triangulation."""
import logging

import networkx as nx

from trisparse.commands.common import load_triangulation
from trisparse.errors import NonOrientableError
from trisparse.graphs import STRATEGIES, heuristic_decomposition
from trisparse.report import RunReport
from trisparse.skeleton import compute_skeleton, counting_checks, is_closed_manifold
from trisparse.triangulation import dual_graph, orient

logger = logging.getLogger(__name__)

NAME = 'info'


def register(subparsers):
    parser = subparsers.add_parser(NAME, help='skeleton counts, valences and dual graph statistics')
    parser.add_argument('path', help='gluing table (.tri)')
    parser.add_argument('--heuristic', choices=STRATEGIES, default=None,
                        help='elimination heuristic for the treewidth upper bound')
    parser.set_defaults(handler=run)
    return parser


def format_histogram(histogram) -> str:
    return ','.join(f"{valence}:{count}" for valence, count in sorted(histogram.items())) or 'none'


def run(args, report: RunReport) -> RunReport:
    tri = load_triangulation(args.path)
    s = compute_skeleton(tri)
    check = is_closed_manifold(tri, s)
    report.extend([('n', s.n), ('v', s.v), ('e', s.e), ('f', s.f), ('closed', check.closed)])
    if not check.closed:
        report.add('diagnostic', check.diagnostic)
    report.extend([('unglued', len(s.unglued_faces)), ('delta', s.delta),
                   ('valences', format_histogram(s.valence_histogram())), ('sum_val', s.sum_valence)])

    dual = dual_graph(tri)
    simple = dual.simple_graph()
    components = nx.number_connected_components(simple) if tri.size else 0
    report.extend([('dual_edges', dual.edge_count), ('dual_loops', len(dual.loops())),
                   ('dual_components', components),
                   ('tw_ub', heuristic_decomposition(dual, args.heuristic).width)])

    if s.unglued_faces:
        report.add('orientable', None)
    else:
        try:
            orient(tri)
            report.add('orientable', True)
        except NonOrientableError:
            report.add('orientable', False)

    if check.closed:
        checks = counting_checks(tri, s)
        report.extend(((f"check_{name}", holds) for name, holds in checks))
        failed = [name for name, holds in checks if not holds]
        if failed:
            logger.warning("counting identities failed on a closed triangulation: %s", ', '.join(failed))
    return report

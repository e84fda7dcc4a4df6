"""``kuperberg``: exact Kuperberg invariant of a closed orientable triangulation."""
import logging

from trisparse.commands.common import load_dual_decomposition, load_triangulation, require_closed
from trisparse.data_loader import get_data_loader
from trisparse.graphs import STRATEGIES
from trisparse.kuperberg import kuperberg_invariant
from trisparse.report import RunReport

logger = logging.getLogger(__name__)

NAME = 'kuperberg'


def register(subparsers):
    parser = subparsers.add_parser(NAME, help='Kuperberg invariant for an involutory Hopf algebra')
    parser.add_argument('path', help='closed orientable gluing table (.tri)')
    parser.add_argument('--algebra', default='Z2',
                        help='builtin group (Z<k>, Z2xZ2, S3, Q8), data file name, '
                             'or path to a .grp or .hopf file (default Z2)')
    parser.add_argument('--field', default='Q', help='Q or F<p> for group algebras (default Q)')
    plan = parser.add_mutually_exclusive_group()
    plan.add_argument('--td', help='PACE decomposition of the dual graph guiding contraction')
    plan.add_argument('--heuristic', choices=STRATEGIES, default=None,
                      help='elimination heuristic for the dual graph decomposition')
    parser.add_argument('--mirror', action='store_true',
                        help='also evaluate the mirror image and report both values')
    parser.add_argument('--minimize', action='store_true', help='evaluate on the minimal diagram')
    parser.set_defaults(handler=run)
    return parser


def run(args, report: RunReport) -> RunReport:
    tri = load_triangulation(args.path)
    require_closed(tri)
    algebra = get_data_loader().load_algebra(args.algebra, args.field)
    decomposition = load_dual_decomposition(args.td, tri) if args.td else None

    result = kuperberg_invariant(tri, algebra, decomposition, minimize=args.minimize,
                                 heuristic=args.heuristic)
    report.add('algebra', algebra.name)
    report.extend(result.as_pairs())
    if args.mirror:
        mirrored = kuperberg_invariant(tri, algebra, decomposition, minimize=args.minimize,
                                       mirror=True, heuristic=args.heuristic)
        report.extend([('mirror_value', mirrored.value), ('mirror_equal', mirrored.value == result.value)])
    return report

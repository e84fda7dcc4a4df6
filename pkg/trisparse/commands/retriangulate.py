"""``retriangulate``: valence reduction with optional decomposition transfer."""
import logging

from trisparse.commands.common import (load_dual_decomposition, load_triangulation, require_closed,
                                       write_output)
from trisparse.config import get_config
from trisparse.errors import VerificationError
from trisparse.graphs import validate_decomposition, write_pace_decomposition
from trisparse.report import RunReport
from trisparse.retriangulate import (expected_vertex_count, retriangulate_step, step_bound_checks,
                                     step_budget)
from trisparse.skeleton import compute_skeleton
from trisparse.transforms import transform_for_retriangulation
from trisparse.triangulation import dual_graph, write_triangulation

logger = logging.getLogger(__name__)

NAME = 'retriangulate'


def register(subparsers):
    parser = subparsers.add_parser(NAME, help='reduce the maximum edge valence')
    parser.add_argument('path', help='closed gluing table (.tri)')
    rounds = parser.add_mutually_exclusive_group()
    rounds.add_argument('--steps', type=int, default=1, metavar='N',
                        help='run at most N rounds (default 1)')
    rounds.add_argument('--full', action='store_true',
                        help='repeat until every valence is at most 9')
    parser.add_argument('--force', action='store_true',
                        help='run rounds even when every valence is already at most 9 '
                             '(with --full, only the first round)')
    parser.add_argument('--emit-td', nargs=2, metavar=('IN', 'OUT'),
                        help='carry a PACE decomposition of the dual graph through every round')
    parser.add_argument('-o', '--output', help='write the final gluing table here')
    parser.set_defaults(handler=run)
    return parser


def run(args, report: RunReport) -> RunReport:
    tri = load_triangulation(args.path)
    s = require_closed(tri)
    if args.steps < 0:
        raise ValueError("--steps must be non-negative")
    decomposition = load_dual_decomposition(args.emit_td[0], tri) if args.emit_td else None
    limit = get_config().CONE_VALENCE_LIMIT
    budget = step_budget(s.delta)
    report.extend([('n_in', s.n), ('v_in', s.v), ('delta_in', s.delta), ('budget', budget)])
    if decomposition is not None:
        report.add('td_in_width', decomposition.width)

    steps = 0
    bounds_ok = True
    while args.full or steps < args.steps:
        force = args.force and (not args.full or steps == 0)
        if s.delta <= limit and not force:
            break
        result, trace = retriangulate_step(tri, force=True)
        after = compute_skeleton(result)
        checks = step_bound_checks(s, after)
        checks.append(('vertices', after.v == expected_vertex_count(s, trace)))
        failed = [name for name, holds in checks if not holds]
        if failed:
            logger.warning("round %d broke the %s bound(s)", steps + 1, ', '.join(failed))
            bounds_ok = False
        if decomposition is not None:
            decomposition = transform_for_retriangulation(decomposition, trace)
        steps += 1
        report.extend([('n', after.n), ('v', after.v), ('delta', after.delta)], prefix=f"step{steps}_")
        tri, s = result, after

    report.extend([('steps', steps), ('n_out', s.n), ('v_out', s.v), ('delta_out', s.delta),
                   ('bounds_ok', bounds_ok)])
    if args.full:
        report.add('within_budget', steps <= budget)
        if steps > budget:
            logger.warning("retriangulation took %d rounds, predicted at most %d", steps, budget)

    if decomposition is not None:
        check = validate_decomposition(dual_graph(tri), decomposition)
        report.extend([('td_out_width', decomposition.width), ('td_valid', bool(check))])
        if not check:
            raise VerificationError("transferred decomposition is invalid",
                                    [f"td: {check.describe()}"])
        write_output(args.emit_td[1], write_pace_decomposition(decomposition, tri.size))
    if args.output:
        write_output(args.output, write_triangulation(tri))
    return report

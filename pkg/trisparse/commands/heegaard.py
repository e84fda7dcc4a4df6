"""``heegaard``: the Heegaard diagram induced by a closed triangulation."""
import logging

from trisparse.commands.common import load_triangulation, require_closed, write_output
from trisparse.heegaard import (heegaard_from_triangulation, minimize_diagram, orient_diagram,
                                validate_diagram, write_diagram)
from trisparse.report import RunReport
from trisparse.triangulation import orient

logger = logging.getLogger(__name__)

NAME = 'heegaard'


def register(subparsers):
    parser = subparsers.add_parser(NAME, help='induced Heegaard diagram of a closed triangulation')
    parser.add_argument('path', help='gluing table (.tri)')
    parser.add_argument('--minimize', action='store_true',
                        help='drop the curves dual to spanning trees')
    parser.add_argument('--oriented', action='store_true', help='sign every crossing')
    parser.add_argument('-o', '--output', help='write the diagram (.hd) here')
    parser.set_defaults(handler=run)
    return parser


def run(args, report: RunReport) -> RunReport:
    tri = load_triangulation(args.path)
    skeleton = require_closed(tri)
    if args.oriented:
        tri = orient(tri)
        diagram = orient_diagram(heegaard_from_triangulation(tri, skeleton), tri)
    else:
        diagram = heegaard_from_triangulation(tri, skeleton)
    if args.minimize:
        diagram = minimize_diagram(diagram, tri)

    problems = validate_diagram(diagram)
    for problem in problems:
        logger.warning("diagram problem: %s", problem)

    report.extend([('crossings', diagram.crossing_count), ('genus', diagram.genus),
                   ('alpha', len(diagram.alpha_curves)), ('beta', len(diagram.beta_curves)),
                   ('oriented', diagram.oriented)])
    if diagram.oriented:
        report.add('negative', sum(1 for c in diagram.crossings if c.sign == -1))
    report.extend([
        ('max_alpha_meets', max((len(diagram.alpha_neighbours(i)) for i in range(len(diagram.alpha_curves))),
                                default=0)),
        ('max_beta_meets', max((len(diagram.beta_neighbours(i)) for i in range(len(diagram.beta_curves))),
                               default=0)),
        ('problems', len(problems)),
    ])
    if args.output:
        write_output(args.output, write_diagram(diagram))
    return report

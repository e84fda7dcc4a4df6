"""Input and output helpers shared by the command modules."""
import logging
from pathlib import Path

from trisparse.errors import DecompositionError, NotClosedError, ParseError
from trisparse.graphs import TreeDecomposition, read_pace_decomposition, validate_decomposition
from trisparse.report import file_digest
from trisparse.skeleton import SkeletonSummary, compute_skeleton, is_closed_manifold
from trisparse.triangulation import Triangulation, dual_graph, parse_triangulation

logger = logging.getLogger(__name__)


def input_digest(path) -> str:
    """sha256 of the raw bytes of an input file."""
    return file_digest(Path(path).read_bytes())


def read_input(path) -> str:
    """
    Raises:
        ParseError: the file is not UTF-8.
    """
    data = Path(path).read_bytes()
    try:
        return data.decode('utf-8')
    except UnicodeDecodeError as exc:
        raise ParseError(f"{path} is not UTF-8 text: {exc.reason}") from exc


def load_triangulation(path) -> Triangulation:
    tri = parse_triangulation(read_input(path))
    logger.info("loaded %s: %d tets", path, tri.size)
    return tri


def require_closed(tri: Triangulation) -> SkeletonSummary:
    """
    Raises:
        NotClosedError: ``tri`` is not a closed 3-manifold.
    """
    skeleton = compute_skeleton(tri)
    check = is_closed_manifold(tri, skeleton)
    if not check.closed:
        raise NotClosedError(check.diagnostic)
    return skeleton


def write_output(path, text: str):
    Path(path).write_text(text, encoding='utf-8', newline='\n')
    logger.info("wrote %s", path)


def load_dual_decomposition(path, tri: Triangulation) -> TreeDecomposition:
    """
    Read a PACE decomposition and check it against ``dual_graph(tri)``.

    Raises:
        DecompositionError: wrong node count or an invalid decomposition.
    """
    decomposition, declared = read_pace_decomposition(read_input(path))
    if declared != tri.size:
        raise DecompositionError(f"{path} decomposes a graph on {declared} nodes, dual graph has {tri.size}")
    check = validate_decomposition(dual_graph(tri), decomposition)
    if not check:
        raise DecompositionError(f"{path}: {check.describe()}")
    return decomposition

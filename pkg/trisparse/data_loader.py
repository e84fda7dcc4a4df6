"""Loader for the reference triangulations, group tables and algebras in data/."""
import logging
from pathlib import Path

from trisparse.config import get_config
from trisparse.errors import TrisparseError
from trisparse.hopf import (BUILTIN_GROUPS, ScalarField, builtin_group, group_algebra,
                            parse_group_table, parse_hopf_algebra)
from trisparse.triangulation import parse_triangulation

logger = logging.getLogger(__name__)

TRIANGULATION_SUFFIX = '.tri'
GROUP_SUFFIX = '.grp'
ALGEBRA_SUFFIX = '.hopf'


class DataLoader:
    """Loads and caches reference data files."""

    def __init__(self, data_dir=None):
        """Initialize the data loader."""
        if data_dir is None:
            self.data_dir = Path(get_config().DATA_DIR)
        else:
            self.data_dir = Path(data_dir)

        self._triangulations = {}
        self._groups = {}
        self._algebras = {}

    def list_triangulations(self):
        """Names of the bundled triangulations, sorted."""
        folder = self.data_dir / 'triangulations'
        if not folder.is_dir():
            return []
        return sorted(p.stem for p in folder.glob('*' + TRIANGULATION_SUFFIX))

    def load_triangulation(self, name):
        """Load ``triangulations/<name>.tri``."""
        if name not in self._triangulations:
            file_path = self.data_dir / 'triangulations' / (name + TRIANGULATION_SUFFIX)
            with open(file_path, 'r', encoding='utf-8') as f:
                self._triangulations[name] = parse_triangulation(f.read())
            logger.debug("loaded triangulation %s (%d tets)", name, self._triangulations[name].size)
        return self._triangulations[name]

    def load_group(self, name):
        """Load ``groups/<name>.grp``, falling back to a builtin group."""
        if name not in self._groups:
            file_path = self.data_dir / 'groups' / (name + GROUP_SUFFIX)
            if file_path.is_file():
                with open(file_path, 'r', encoding='utf-8') as f:
                    self._groups[name] = parse_group_table(f.read(), name)
            else:
                self._groups[name] = builtin_group(name)
        return self._groups[name]

    def load_algebra(self, source, field='Q'):
        """
        Hopf algebra from a source string.

        ``source`` is a builtin group name, a group name found under
        ``groups/``, a name found under ``algebras/``, or a path to a
        ``.grp`` or ``.hopf`` file.
        """
        key = (source, field)
        if key in self._algebras:
            return self._algebras[key]
        path = Path(source)
        if path.suffix == ALGEBRA_SUFFIX and path.is_file():
            algebra = parse_hopf_algebra(path.read_text(encoding='utf-8'), path.stem)
        elif path.suffix == GROUP_SUFFIX and path.is_file():
            algebra = group_algebra(parse_group_table(path.read_text(encoding='utf-8'), path.stem),
                                    ScalarField(field))
        elif (self.data_dir / 'algebras' / (source + ALGEBRA_SUFFIX)).is_file():
            text = (self.data_dir / 'algebras' / (source + ALGEBRA_SUFFIX)).read_text(encoding='utf-8')
            algebra = parse_hopf_algebra(text, source)
        else:
            algebra = group_algebra(self.load_group(source), ScalarField(field))
        self._algebras[key] = algebra
        return algebra

    def validate_data(self):
        """Validate bundled data files."""
        errors = []

        names = self.list_triangulations()
        if not names:
            errors.append("No triangulations found")
        for name in names:
            try:
                self.load_triangulation(name)
            except (TrisparseError, OSError) as exc:
                errors.append(f"Triangulation {name}: {exc}")

        groups = self.data_dir / 'groups'
        for path in sorted(groups.glob('*' + GROUP_SUFFIX)) if groups.is_dir() else []:
            if path.stem in BUILTIN_GROUPS:
                errors.append(f"Group file {path.name} shadows a builtin group")
            try:
                self.load_group(path.stem)
            except (TrisparseError, OSError) as exc:
                errors.append(f"Group {path.stem}: {exc}")

        algebras = self.data_dir / 'algebras'
        for path in sorted(algebras.glob('*' + ALGEBRA_SUFFIX)) if algebras.is_dir() else []:
            try:
                self.load_algebra(path.stem)
            except (TrisparseError, OSError) as exc:
                errors.append(f"Algebra {path.stem}: {exc}")

        return errors


# Global instance
_data_loader = None


def get_data_loader(data_dir=None):
    """Get or create the global data loader instance."""
    global _data_loader
    if _data_loader is None or (data_dir is not None and Path(data_dir) != _data_loader.data_dir):
        _data_loader = DataLoader(data_dir)
    return _data_loader

"""Line-oriented ``key=value`` reports printed by the command-line tools."""
import hashlib
from typing import Iterable, List, Tuple

EXIT_OK = 0
EXIT_FORMAT = 1
EXIT_PRECONDITION = 2
EXIT_VERIFICATION = 3


def file_digest(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def format_value(value) -> str:
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if value is None:
        return 'none'
    return str(value).replace('\n', ' ')


class RunReport:
    """
    Metrics of one command run.

    The report always starts with ``command`` and ``digest`` and ends with
    ``exit``; every key appears once, in insertion order.
    """

    def __init__(self, command: str, digest: str):
        self.command = command
        self.digest = digest
        self.status = EXIT_OK
        self._metrics: List[Tuple[str, str]] = []
        self._keys = {'command', 'digest', 'exit'}

    def add(self, key: str, value):
        if key in self._keys:
            raise KeyError(f"metric {key!r} reported twice")
        self._keys.add(key)
        self._metrics.append((key, format_value(value)))

    def extend(self, pairs: Iterable[Tuple[str, object]], prefix: str = ''):
        for key, value in pairs:
            self.add(prefix + key, value)

    def get(self, key: str):
        for k, value in self._metrics:
            if k == key:
                return value
        return None

    def fail(self, status: int, error: Exception):
        self.status = status
        if 'error' not in self._keys:
            self.add('error', f"{type(error).__name__}: {error}")

    def render(self) -> str:
        lines = [f"command={self.command}", f"digest={self.digest}"]
        lines.extend(f"{key}={value}" for key, value in self._metrics)
        lines.append(f"exit={self.status}")
        return '\n'.join(lines) + '\n'

"""Command modules of the trisparse CLI; each exposes ``register`` and ``run``."""
from trisparse.commands import heegaard, info, kuperberg, retriangulate, verify

COMMANDS = (info, heegaard, retriangulate, kuperberg, verify)

__all__ = ['COMMANDS', 'heegaard', 'info', 'kuperberg', 'retriangulate', 'verify']

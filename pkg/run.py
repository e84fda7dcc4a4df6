#!/usr/bin/env python3
"""Run script for the trisparse command-line tools."""
import os
import sys

# Add the package root to path
sys.path.insert(0, os.path.dirname(__file__))

from trisparse.cli import main

if __name__ == '__main__':
    sys.exit(main())

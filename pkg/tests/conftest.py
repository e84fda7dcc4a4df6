"""Shared fixtures for the trisparse test suite."""
from pathlib import Path

import pytest

from trisparse import builders
from trisparse.config import use_config

use_config('testing')

DATA_DIR = Path(__file__).resolve().parent.parent / 'data'


@pytest.fixture
def data_dir():
    return DATA_DIR


@pytest.fixture
def tri_path(data_dir):
    """Path of a bundled triangulation by name."""
    def resolve(name):
        return str(data_dir / 'triangulations' / f"{name}.tri")
    return resolve


@pytest.fixture
def s3():
    return builders.s3()


@pytest.fixture
def rp3():
    return builders.rp3()


@pytest.fixture
def fig1():
    return builders.two_tetrahedra_example()


@pytest.fixture
def single_tet():
    return builders.single_tetrahedron()


@pytest.fixture
def nonorientable():
    return builders.nonorientable_one_tet()


@pytest.fixture
def bipyramid16():
    """Closed 3-sphere with 32 tets and maximum valence 16."""
    return builders.double_bipyramid(16)

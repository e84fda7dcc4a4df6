"""Configuration settings for the trisparse library and CLI."""
import os
from dotenv import load_dotenv

load_dotenv()


def _env_int(name, fallback):
    value = os.environ.get(name)
    return int(value) if value else fallback


def _env_flag(name, fallback):
    value = os.environ.get(name)
    if value is None:
        return fallback
    return value.strip().lower() in ('1', 'true', 'yes', 'on')


class Config:
    """Base configuration."""
    DATA_DIR = os.environ.get('TRISPARSE_DATA_DIR') or \
        os.path.join(os.path.dirname(os.path.dirname(__file__)), 'data')
    LOG_LEVEL = os.environ.get('TRISPARSE_LOG_LEVEL') or 'WARNING'

    # Oracles
    HOM_SEARCH_BUDGET = _env_int('TRISPARSE_HOM_SEARCH_BUDGET', 10 ** 8)  # backtracking nodes, not |G|**r
    SNF_VERIFY = _env_flag('TRISPARSE_SNF_VERIFY', False)  # check U*A*V == D after every SNF

    # Tree decompositions
    DEFAULT_HEURISTIC = os.environ.get('TRISPARSE_HEURISTIC') or 'min-degree'
    EXACT_WIDTH_NODE_LIMIT = _env_int('TRISPARSE_EXACT_WIDTH_NODES', 7)

    # Tensor networks: largest intermediate tensor a contraction may build
    MAX_TENSOR_ENTRIES = _env_int('TRISPARSE_MAX_TENSOR_ENTRIES', 10 ** 7)

    # Retriangulation: faces of boundary length <= this are coned from a center
    CONE_VALENCE_LIMIT = 9

    # Exact bound checks start with this many bits of sqrt precision
    SQRT_PRECISION_BITS = _env_int('TRISPARSE_SQRT_BITS', 64)

    # CLI
    DEFAULT_SEED = _env_int('TRISPARSE_SEED', 0)
    VERIFY_GROUPS = os.environ.get('TRISPARSE_VERIFY_GROUPS') or 'Z2,Z3'
    RANDOM_ATTEMPTS = _env_int('TRISPARSE_RANDOM_ATTEMPTS', 20000)

    # Format versions printed by --version
    TRI_FORMAT_VERSION = 1
    DIAGRAM_FORMAT_VERSION = 1
    PACE_FORMAT_VERSION = 2017


class DevelopmentConfig(Config):
    """Development configuration."""
    DEBUG = True
    LOG_LEVEL = os.environ.get('TRISPARSE_LOG_LEVEL') or 'INFO'


class ProductionConfig(Config):
    """Production configuration."""
    DEBUG = False


class TestingConfig(Config):
    """Testing configuration."""
    TESTING = True
    SNF_VERIFY = True
    HOM_SEARCH_BUDGET = 10 ** 7


config = {
    'development': DevelopmentConfig,
    'production': ProductionConfig,
    'testing': TestingConfig,
    'default': ProductionConfig
}

_active_name = None


def get_config(name=None):
    """Return the active configuration class.

    Args:
        name: Explicit configuration name; defaults to ``TRISPARSE_ENV``.
    """
    if name is None:
        name = _active_name or os.environ.get('TRISPARSE_ENV', 'default')
    return config.get(name, config['default'])


def use_config(name):
    """Select the configuration used by subsequent ``get_config()`` calls."""
    global _active_name
    if name is not None and name not in config:
        raise KeyError(f"Unknown configuration: {name}")
    _active_name = name

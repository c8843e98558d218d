"""Configuration constants for plumbing-calculus.

Values marked with an environment variable can be overridden from the
process environment (the CLI loads a ``.env`` file first).
"""

import os
from pathlib import Path

# Project Paths
PROJECT_ROOT = Path(__file__).parent.parent
DATA_DIR = PROJECT_ROOT / "data"

# Data Paths
TABLES_PATH = Path(os.environ.get(
    "PLUMBING_TABLES", str(DATA_DIR / "realizability_tables.json")))
REPORT_SCHEMA_PATH = DATA_DIR / "report_schema.json"
TABLES_VERSION = 1

# Equivalence Search
DEFAULT_BUDGET = int(os.environ.get("PLUMBING_BUDGET", "4"))  # extra vertices
DEFAULT_DEPTH = int(os.environ.get("PLUMBING_DEPTH", "12"))  # total moves
MAX_SEARCH_STATES = 50_000  # per side of the bidirectional search

# Inflation Path Planning
INFLATION_MAX_REFINEMENTS = 24  # doubling rounds of the staircase

# Trichotomy back-substitution
TRICHOTOMY_MAX_HALVINGS = 512

# Enumeration
DEFAULT_MAX_Y = 20
STABILITY_MAX_Y = 40
NON_DIHEDRAL_PAIRS = ((3, 3), (3, 4), (3, 5))
CHARACTERIZING_TOTAL = 10  # n^T + n^Y for conjugates, n^T for QHD fillings
DEFAULT_JOBS = int(os.environ.get("PLUMBING_JOBS", "1"))

# Logging
LOG_LEVEL = os.environ.get("PLUMBING_LOG_LEVEL", "WARNING")

# CLI Exit Codes
EXIT_OK = 0
EXIT_INVALID = 2
EXIT_UNKNOWN = 3

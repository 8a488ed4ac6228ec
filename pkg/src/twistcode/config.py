"""Enumeration caps and seeds shared across the package.

Every cap can be overridden per call; ``TWISTCODE_BUDGET`` overrides the
default distance-enumeration budget for the whole process.
"""

from __future__ import annotations

import os

# Largest extension-field order ever constructed (log/exp tables are this long).
FIELD_ORDER_CAP = 2**20

# Largest prime field; keeps products of two residues inside int64.
PRIME_FIELD_CAP = 2**31

# Scalar classes (q^k - 1)/(q - 1) enumerated before min_distance degrades to bounds-only.
DEFAULT_DISTANCE_BUDGET = 2**24

# Matrices q^(n^2) a census may scan without an explicit override.
DEFAULT_CENSUS_BUDGET = 2**25

# Largest coset-leader table (number of syndromes q^(n^2 - k)).
COSET_TABLE_CAP = 2**16

# Seed for equal-degree splitting in polynomial factorization.
EDF_SEED = 0x7C0DE

# Default seed for randomized property checks and CLI sampling.
DEFAULT_SEED = 0

# Fields with q above this have no dense add/mul lookup tables.
TABLE_ORDER_LIMIT = 256


def distance_budget(budget: int | None = None) -> int:
    if budget is not None:
        return int(budget)
    env = os.environ.get("TWISTCODE_BUDGET")
    if env:
        return int(env)
    return DEFAULT_DISTANCE_BUDGET

"""
Centralized configuration for Brooks AT.
"""

# --- Graph Limits ---
MAX_VERTICES = 64  # Dense integer ids fit one machine word as a bitmask

# --- Exhaustive Oracle Capacities ---
CENSUS_MAX_EDGES = 24  # Eulerian census enumerates 2^m edge subsets
CENSUS_CHUNK_SIZE = 1 << 16  # Subsets per vectorised numpy chunk
POLYNOMIAL_MAX_EDGES = 14  # Graph polynomial expansion has up to 2^m terms
CHOOSABILITY_MAX_VERTICES = 6
CHOOSABILITY_MAX_LIST_TOTAL = 20  # Sum of list sizes; above the documented 16 so K5 and W5 degree lists fit
AUDIT_MAX_ASSIGNMENTS = 2_000_000  # Literal list-assignment enumeration (no pruning)
PAINT_MAX_VERTICES = 10
PIPELINE_PAINT_MAX_VERTICES = 7  # Paint stage of `pipeline` is skipped above this

# --- Random Trials ---
DEFAULT_TRIALS = 1000
DEFAULT_SEED = 0  # Text mode only; JSON mode refuses to default the seed
PALETTE_SLACK = 2  # Default palette = largest list size + slack

# --- Settings File ---
SETTINGS_ENV_VAR = "BROOKS_AT_SETTINGS"
SETTINGS_DIR_NAME = ".brooks_at"

# --- Console Colors ---
GRAY = "\033[90m"
RESET = "\033[0m"
BOLD = "\033[1m"
CYAN = "\033[36m"
GREEN = "\033[32m"
YELLOW = "\033[33m"
RED = "\033[31m"

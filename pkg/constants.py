# constants.py
"""
Centralized constants for the domination toolkit to eliminate magic numbers
"""

# Search budget
DEFAULT_NODE_BUDGET = 10 ** 8
ENV_NODE_BUDGET = "DOMLAB_BUDGET"

# Solver limits and defaults
class SolverDefaults:
    NODE_BUDGET = DEFAULT_NODE_BUDGET
    REFERENCE_MAX_VERTICES = 64      # subset enumeration beyond this is hopeless
    ENUMERATION_WARN_VERTICES = 24   # solve_all_min logs a warning above this
    MAX_PARALLEL_WIDTH = 64

# Column-sum rules for P_n x K_m and C_n x K_m
class ColumnRules:
    DOMINATING_TRIPLE = 2         # d_{i-1} + d_i + d_{i+1} >= 2
    SECURE_TRIPLE = 3             # s_{i-1} + s_i + s_{i+1} >= 3
    SECURE_PATH_CORNER = 4        # s_1 + s_2 + s_3 >= 4 on paths
    MIN_CLIQUE_ORDER = 3          # triple rules need m >= 3
    CORNER_MIN_CLIQUE_ORDER = 4   # corner rule needs m >= 4
    PROFILE_CAP = 4               # counts above this never help a window

# CLI exit codes
class ExitCodes:
    SUCCESS = 0
    VERIFICATION_FAILED = 1
    USAGE = 2
    PARSE_ERROR = 3
    GUARD_ERROR = 4
    BUDGET_EXCEEDED = 5

# Environment variables
class EnvironmentKeys:
    NODE_BUDGET = ENV_NODE_BUDGET
    LOG_DIRECTORY = "DOMLAB_LOG_DIR"
    LOG_LEVEL = "DOMLAB_LOG_LEVEL"

# Certificate and edge-list text formats
class CertificateFormat:
    COMMENT_PREFIX = "#"
    STRIP_CHARACTERS = "(),"

# Table rendering
class TableFormat:
    MISSING = "—"
    COLUMNS = ["family", "param", "n", "m", "formula", "solver", "construction", "agree", "note"]
    SUMMARY_TEMPLATE = "AGREEMENTS {agreements}/{total}, DISCREPANCIES listed"

# Counterexample instances
class ErratumInstances:
    PATH_N = 6
    PATH_M = 8
    CYCLE_N = 6
    CYCLE_M = 8
    BOUND_N = 6
    BOUND_M = 5
    BOUND_M_LARGE = 8

# Logging
class LoggingDefaults:
    LEVEL = "WARNING"
    FORMAT = '%(asctime)s - %(levelname)s - %(name)s - %(message)s'
    DATE_FORMAT = '%Y-%m-%d %H:%M:%S'
    ABBREVIATE_KEEP = 8

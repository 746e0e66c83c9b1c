#-*- coding: utf-8 -*-

"""
Job defaults that a single run may override from the command line.
"""

SETTINGS = {
    # === Output ===
    'FORMAT': 'json',          # 'json' is the source of truth, 'table' is for people
    'OUT': None,               # None writes the report to stdout

    # === Computation ===
    'DEGREE': 3,
    'SEED': 0,
    'COEFFICIENT': None,       # None defers to the diagram file

    # === Logging ===
    'LOG_LEVEL': 'WARNING',
}

"""CLI commands for machinkit.

This package contains the implementation of CLI commands:
    - verify: Exact verification of relation files
    - search: Three-term search and parity census
    - reduce: Factor x^2 + 1 over a basis, smooth-value enumeration
    - powers: Pure-power scan
    - pi: Digits of pi from a formula
    - bounds: Exponent bound, published tables and theorem pipelines
    - version: Version information
"""

"""machinkit CLI module.

This module provides the `machin` command-line interface, enabling users to:
    - Verify relation files with `machin verify`
    - Search for three-term formulae with `machin search`
    - Compute pi digits with `machin pi`
    - Evaluate the exponent bounds with `machin bounds` and `machin theorem`
"""

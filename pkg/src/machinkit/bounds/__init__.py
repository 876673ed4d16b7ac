"""Explicit bounds for three-term Machin-type formulae.

Submodules:
    - functions: Closed-form constants and linear-form lower bounds
    - tables: Published constant tables and their consistency checks
    - exponent: Maximum-over-rows exponent bound
    - theorem: Case I and Case II pipelines
"""

from machinkit.bounds.exponent import ExponentBound, RowBound, exponent_bound
from machinkit.bounds.functions import (
    OneLogInputs,
    ThreeLogInputs,
    TwoLogInputs,
    compute_c2,
    f1,
    f2,
    f3,
    f4,
    g1,
    g2,
    implied_c1,
    one_log_lower_bound,
    precision,
    tau_for,
    three_log_b_prime,
    three_log_lower_bound,
    two_log_lower_bound,
)
from machinkit.bounds.tables import (
    BoundTableRow,
    ConsistencyEntry,
    applicable_rows,
    consistency_report,
    load_rows,
    render_table,
)
from machinkit.bounds.theorem import (
    TheoremState,
    closed_form_holds,
    stormer_m2_cap,
    theorem_case1,
    theorem_case2,
)

__all__ = [
    "BoundTableRow",
    "ConsistencyEntry",
    "ExponentBound",
    "OneLogInputs",
    "RowBound",
    "TheoremState",
    "ThreeLogInputs",
    "TwoLogInputs",
    "applicable_rows",
    "closed_form_holds",
    "compute_c2",
    "consistency_report",
    "exponent_bound",
    "f1",
    "f2",
    "f3",
    "f4",
    "g1",
    "g2",
    "implied_c1",
    "load_rows",
    "one_log_lower_bound",
    "precision",
    "render_table",
    "stormer_m2_cap",
    "tau_for",
    "theorem_case1",
    "theorem_case2",
    "three_log_b_prime",
    "three_log_lower_bound",
    "two_log_lower_bound",
]

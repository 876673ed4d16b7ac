"""machinkit: Machin-type arctangent formulae over Gaussian integers.

Core Components:
    - gaussian: Gaussian integers and rationals
    - relations: Arctangent relations, exact verification, synthesis
    - corpus: Known formulae
    - solver: Smooth values of x² + 1 and three-term formula search
    - precision: Fixed-point arctangents and π
    - bounds: Explicit bounds on three-term formulae
"""

from machinkit.corpus import NAMED_RELATIONS
from machinkit.errors import MachinError, MachinErrorCode
from machinkit.relations import ArctanRelation, parse_relation, verify

__all__ = [
    "NAMED_RELATIONS",
    "ArctanRelation",
    "MachinError",
    "MachinErrorCode",
    "parse_relation",
    "verify",
]

"""Skew-morphisms of cyclic p-groups.

Construction, verification, classification and enumeration of the
skew-morphisms of Z_{p^e} for odd primes p, with brute-force oracles for
independent checks.  See :mod:`skewmorph.cli` for the command-line tool.
"""
from ._backend import BACKEND
from .classify import (
    EnumerationReport,
    SkewRecord,
    count_closed_form,
    cross_check,
    enumerate_constructive,
    skew_product_group,
)
from .errors import (
    ClosureCapError,
    ConsistencyError,
    NotClassifiableError,
    OracleTimeoutError,
    SkewmorphError,
)
from .groups import GroupClosure, closure, commutator_subgroup, is_split_metacyclic, quotient_exponent
from .oracle import oracle_exhaustive, oracle_pruned
from .perm import Permutation, compose, conjugate, identity, inverse, mult_map, order, power, translation
from .skew import (
    AdmissibleTuple,
    PowerFunction,
    SkewMorphism,
    b_map,
    classify,
    compute_power_function,
    crt_product,
    is_admissible,
    iterate_admissible,
    s_ij,
    s_ijkl,
    verify_criterion,
    verify_definition,
)
from .zmod import Modulus, Unit, canonical_b_unit, gcd_shift, multiplicative_order, pow_mod

__version__ = "0.1.0"

"""Mealy automata and the semigroups they generate.

Core model plus minimization, md-reduction, power connectivity,
permutation portraits, semigroup enumeration with tensor closure,
finiteness/freeness decision procedures and an enumeration harness.
"""

from .machine import (
    MealyMachine,
    MealyError,
    ValidationError,
    BudgetError,
    PreconditionError,
    validate,
    rho_apply,
    delta_apply,
    state_word,
    letter_word,
    state_names,
    letter_names,
    DEFAULT_POWER_BUDGET,
)
from .library import TRIV, ALESHIN, BABY, SIX, SWAP, CYC
from .minimize import (
    Partition,
    nerode_partition,
    is_minimal,
    minimize,
    words_equivalent,
)
from .mdreduce import ReductionStep, ReductionTrace, md_reduce, is_md_trivial
from .connectivity import (
    ComponentReport,
    ConnectionDegree,
    components,
    power_components,
    connection_degree,
    verify_component_growth,
)
from .portrait import (
    Portrait,
    identity_portrait,
    portrait_of,
    portrait_product,
    classify_homogeneity,
    build_j_tau,
)
from .semigroup import (
    SemigroupTable,
    OrderBound,
    enumerate_semigroup,
    semigroup_order,
    tensor_closure,
    is_tensor_closed,
    verify_complete_components,
)
from .decide import (
    Verdict,
    Relation,
    NoRelationUpTo,
    decide_two_state_reversible,
    decide_finite_group_2state,
    decide_free_semigroup_2state,
    decide_finite_group_2letter,
    free_relation_search,
    verify_prime_class_sizes,
)
from .certificates import CheckResult, check_verdict, check_relation, check_no_relation
from .census import (
    FamilySpec,
    CensusReport,
    canonical_form,
    canonical_machine,
    isomorphic,
    enumerate_family,
    classify_family,
    two_letter_bireversible_census,
)
from .io import (
    ParseError,
    parse_machine,
    serialize_machine,
    machine_to_json,
    machine_from_json,
    machine_to_dot,
)

__version__ = "0.1.0"

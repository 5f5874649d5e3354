"""surfcob: decision procedures for compact surfaces in orientable
4-manifolds.

The library answers cobordism, cobordism rel boundary, concordance, and
extension questions from user-presented homology and Euler data, and backs
positive answers with a double-point diagram calculus whose normalization
traces replay deterministically and re-verify against an exhaustive oracle.
"""

from .errors import (
    GroupMismatchError,
    ImmersedInputError,
    InputError,
    InternalLogicError,
    LinkMismatchError,
    MissingDataError,
    MoveError,
    NotACycleError,
    ParityError,
    SizeLimitError,
    SurfcobError,
)
from .homology import (
    AbelianGroupPresentation,
    ChainComplexPresentation,
    HomologyClass,
    IntMatrix,
    ReductionMap,
    class_of_cycle,
    classes_equal,
    f2_group,
    homology_of_complex,
    mod2_reduce,
    reduction_map,
    smith_normal_form,
    zero_class,
)
from .framing import (
    Framing,
    Link,
    RelEulerDatum,
    boundary_euler_balance,
    euler_under_framing,
    hopf_seifert_framings,
    links_match,
    mod2_intersection_consistent,
    restrict_framing,
    twist,
    twist_all,
    union_framings,
    zero_framing,
)
from .surfaces import (
    ANSWER_NO,
    ANSWER_NOT_APPLICABLE,
    ANSWER_YES,
    CanonicalForm,
    ComponentSpec,
    SurfaceSpec,
    Verdict,
    canonical_form,
    diffeomorphic,
    homotopy_invariant,
    massey_range,
    massey_warnings,
    puncture_adjust,
)
from .diagrams import (
    Component,
    DoublePoint,
    DoublePointDiagram,
    Infeasible,
    MoveRecord,
    MoveTrace,
    NormalizeResult,
    SignTable,
    classify_type,
    component_sum,
    diagram_from_json_dict,
    diagram_to_json_dict,
    feasible_three,
    feasible_two,
    finger_move,
    flip_zero,
    normalize,
    oracle_assign,
    p_count,
    parity_valid,
    replay,
    state_hash,
    swap_signs,
    table_from_json_dict,
    table_to_json_dict,
    verify_normalization,
)
from .decide import (
    AmbientSpec,
    AuditReport,
    BoundaryCobordismSpec,
    consistency_audit,
    decide_almost_extendable,
    decide_cobordant,
    decide_cobordant_rel_boundary,
    decide_concordant,
    decide_extends_cobordism,
    decide_oriented_cobordant,
    decide_oriented_extends,
    decide_spanning_extends,
    product_concordance,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]

"""starpir: private information retrieval from star products of linear codes.

Library layout: `algebra` (exact finite fields and matrices), `codes`
(linear-code combinatorics), `families` (RM/GRS/repetition constructors and
fixed examples), `plans` (retrieval-plan builders), `protocol` (the simulated
multi-server protocol), `privacy` (collusion audits), `rates` (rate tables),
`cli` and `service` (front ends).
"""

from .algebra import (
    Field,
    GF2,
    Matrix,
    element_arithmetic,
    field_of_order,
    format_matrix,
    invert,
    make_field,
    multiply,
    parse_matrix,
    rank,
    right_kernel,
)
from .codes import (
    LinearCode,
    apply_permutation,
    from_generator,
    from_parity_check,
    is_automorphism,
    star_product,
    star_vectors,
)
from .errors import (
    BudgetExceededError,
    CapExceededError,
    PlanConditionError,
    SingularMatrixError,
    StarPirError,
    ValidationError,
)
from .families import (
    GrsSpec,
    affine_group,
    evaluation_points,
    fixture,
    grs,
    grs_code,
    grs_rate,
    parse_code_spec,
    reed_muller,
    repetition,
    rm_dimension,
    translation_group,
)
from .groups import PermutationGroup, cyclic_shift_permutation
from .plans import (
    RetrievalPlan,
    format_plan,
    parse_plan,
    pir_rate,
    plan_auto,
    plan_basic,
    plan_cyclic,
    plan_from_sets,
    plan_orbit,
    plan_rm,
    plan_symmetric,
)
from .privacy import (
    CollusionReport,
    DistributionAudit,
    audit,
    collusion_bound,
    collusion_parameter,
    empirical_query_distribution,
    min_weight_count_rm,
    protects_set,
    unprotected_count,
)
from .protocol import (
    Database,
    QueryBatch,
    ResponseBatch,
    StorageSystem,
    decode_responses,
    make_queries,
    random_database,
    respond,
    retrieve,
    store,
)
from .rates import RateTableRow, rm_pir_rate, rows_to_csv, series_rows

__version__ = "0.1.0"

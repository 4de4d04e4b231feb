"""Orders on quandles with exact dynamical realizations.

Free quandles in normal form, finite quandle tables and constructions,
right/circular order oracles (including a bi-invariant free group order),
order-preserving embeddings into the rational line and circle with
piecewise-linear realized actions, order restoration from a single orbit,
and a perturbation pipeline that searches for nearby distinct orders.
"""

from .freequandle import (
    FqElem,
    FreeQuandle,
    as_group_element,
    ball,
    fq_inv_op,
    fq_op,
    fq_to_str,
    norm,
    normalize,
    parse_fq,
)
from .magnus import magnus_compare
from .orders import (
    CircularOrderOracle,
    IndexLambda,
    NotSemiLatinError,
    RightOrderOracle,
    agreement_window,
    circular_from_right,
    circular_order_sampler,
    conjugation_order,
    conjugation_order_compare,
    e2_order,
    e2_order_compare,
    magnus_order,
    natural_order,
    right_order_sampler,
    window_dump,
)
from .perturbation import (
    BumpSpec,
    MuExtremum,
    NoWitnessFound,
    WitnessReport,
    build_bump,
    mu_minus,
    mu_plus,
    perturb_realization,
    witness_nonisolation,
)
from .quandles import (
    AlexanderQuandle,
    AxiomReport,
    FiniteGroup,
    FiniteQuandle,
    LatinReport,
    TableFormatError,
    alexander_op,
    alexander_solve_left,
    check_axioms,
    conj_quandle,
    core_quandle,
    dehn_quandle,
    is_latin_at,
    is_semi_latin_at,
    is_weak_latin,
    load_table_json,
    table_to_json,
    trivial_quandle,
)
from .realization import (
    ClosureError,
    Embedding,
    PLMap,
    Realization,
    build_circle_embedding,
    build_line_embedding,
    build_semiconjugacy,
    check_consistency,
    circle_ord,
    close_prefix,
    plmap_from_pairs,
    realization_dump,
    realize,
    restore_circular,
    restore_circular_latin,
    restore_right,
    restore_right_latin,
)
from .words import (
    EMPTY,
    Word,
    common_prefix,
    conjugate,
    enumerate_words,
    invert,
    multiply,
    parse_word,
    reduce_letters,
    word_to_str,
)

__version__ = "0.1.0"

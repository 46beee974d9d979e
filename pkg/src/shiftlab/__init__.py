"""Exact combinatorics of run-length encoded infinite words, recursive
block constructions with verifiable hitting-time certificates, sampled
shift-dynamics evidence, and a rational piecewise-linear interval map.

Counts and positions are arbitrary-precision throughout: structures are
queried through run arithmetic, never expanded, unless a caller explicitly
materializes a bounded prefix.
"""

from .words import (
    DEFAULT_MATERIALIZATION_CAP,
    AlphabetMismatch,
    InvalidExponent,
    InvalidPattern,
    InvalidRun,
    InvalidSymbol,
    MaterializationRefused,
    OutOfRange,
    RleWord,
    WordError,
    concat,
    find_first,
    find_first_in_word,
    from_json,
    from_obj,
    iter_occurrences,
    make_word,
    occurrence_intervals,
    power,
    word_from_symbols,
    word_from_text,
)
from .points import (
    Cylinder,
    InfiniteRun,
    PointError,
    RunLocation,
    SymbolicPoint,
    UnknownDescriptor,
    constant_point,
    cylinder,
    ev_periodic_point,
    point_from_descriptor,
    point_from_json,
)
from .construction import (
    CertificateCheck,
    EvpEvidenceReport,
    HittingOrderReport,
    InequalityReport,
    InsufficientHorizon,
    MembershipFact,
    WitnessCertificate,
    c_runs,
    check_evp_x_0inf,
    closing_point,
    cum_c,
    cum_w,
    layered_entry_evidence,
    len_c,
    len_q,
    len_w,
    lengths,
    point_x,
    point_y,
    q_runs,
    tau,
    validate_certificate,
    verify_claim1,
    verify_corollary,
    verify_hitting_order,
    verify_one_part_remark,
    w_runs,
    witness_not_eqp_y_fixed,
    witness_not_eqp_y_general,
    witness_not_evp_x_10inf,
)
from .dynamics import (
    HittingReport,
    PairVerdict,
    SpaceModel,
    check_pair,
    classify,
    example_family_model,
    hitting_times,
    omega_membership_evidence,
    periodic_scan,
    recursive_word_model,
    sensitivity_times,
    spike_train_eqp_refutation,
    spike_train_model,
    splitting_times,
    trivial_pair_scan,
    zero_block_independence,
    zero_block_schedule,
)
from .intervalmap import (
    DomainError,
    EventualSensitivityWitness,
    MapError,
    PiecewiseLinearMap,
    PrecisionCap,
    constant_value_on,
    eventual_sensitivity_witness,
    example_es_map,
    plot_samples,
    samples_to_csv,
    verify_constant_on,
    verify_invariant_interval,
)

__version__ = "0.1.0"

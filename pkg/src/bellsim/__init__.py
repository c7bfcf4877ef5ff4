"""Monte Carlo Bell-experiment simulator with hidden-variable counter-models
and Lorentz-frame causality tools."""

from .angles import canonicalize, relative_angle
from .harness import (
    ExperimentConfig,
    InvariantViolation,
    RelativityScenario,
    StageResult,
    run_relativity_example,
    run_series_demo,
    run_stage,
    run_sweep,
    stage_axes,
)
from .hidden import (
    FlipConstruction,
    HiddenPairState,
    analytic_mismatch_lhv_threshold,
    build_flip_series,
    enumerate_flip_mismatches,
    sample_trial_lhv,
)
from .quantum import (
    AlreadyMeasuredError,
    PairState,
    TrialOutcome,
    analytic_mismatch_qm,
    joint_probabilities_qm,
    malus_pass_probability,
    sample_trial_qm,
)
from .relativity import (
    C_EXACT,
    CausalRelation,
    InertialFrame,
    IntervalClass,
    SignalLink,
    SpacetimeEvent,
    classify_causal_relation,
    classify_interval,
    delta_t_prime,
    lorentz_transform,
    reversal_threshold_beta,
)
from .stats import BellGapReport, MismatchStats, Verdict, bell_gap, mismatch_fraction, sweep_gap_analytic

__version__ = "0.1.0"

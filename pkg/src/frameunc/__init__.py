"""Uncertainty inequalities for finite frame expansions.

Support (Elad-Bruckstein type), Rényi/Shannon entropic and l^p bounds for the
analysis coefficients of a signal in two frames, the order-r mutual coherence
they depend on, and a small exact solver for two-frame signal separation.
"""

from .bounds import (
    BoundConstants,
    FramePair,
    bound_constants,
    entropic_rhs,
    k_frame_bound,
    lp_bound,
    support_bound,
    tight_shannon_bound,
    weak_support_bound,
)
from .coherence import (
    CoherenceCurve,
    PropMurReport,
    coherence_curve,
    coherence_r,
    cross_gram,
    max_column_entropy,
    mu_star,
    prop_mur_condition,
    slope_at_two,
)
from .entropy import beta_conjugate, renyi, shannon
from .frames import (
    CoefficientSeq,
    Frame,
    FrameBounds,
    FrameError,
    analyze,
    canonical_dual,
    change_of_frame,
    frame_bounds,
    is_tight,
    load_frames,
    save_frames,
    synthesize,
)
from .separation import (
    SeparationResult,
    SplitCandidate,
    certify_split,
    exhaustive_separate,
    feasible_splits,
    two_split_bound_check,
)
from .verify import (
    BatchReport,
    EqualityDiagnostics,
    TrialConfig,
    VerificationReport,
    check_entropic,
    check_lp,
    check_shannon,
    check_support,
    check_support_sum,
    check_weak_support,
    equality_conditions,
    random_trials,
    variational_residual,
)

__version__ = "0.1.0"

//! Verification and measurement drivers built on the transform, operator,
//! and norm layers: exact exponent arithmetic, slope fitting for scaling
//! sweeps, seeded random inputs, identity checkers, and the sweep /
//! necessity experiment harness.

pub mod exponents;
pub mod random;
pub mod slopes;
pub mod sweeps;
pub mod verify;

pub use exponents::{
    admissible, lp_case_conditions, region_boundary, region_contains, AdmissibilityBreakdown,
    ExponentConfig, ExtExponent, LpBranch, LpCaseConditions, RegionVertex,
};
pub use random::{random_bandlimited, random_gaussian_field};
pub use slopes::{scaling_slope, SlopeReport};
pub use sweeps::{
    boundedness_recipe, boundedness_sweep, modulation_scaling_sweep, necessity_growth,
    necessity_predicted_slope, necessity_recipe, necessity_target_check, predicted_family_slope,
    sweep_recipe, BoundednessRecipe, GrowthRow, NecessityCase, NecessityGrowth, NecessityRecipe,
    PairSlope, RatioRow, RatioTable, ScalingSweep, SweepRecipe,
};
pub use verify::{
    standard_compact_family, twisted_pair_window, verify_compact_support_equiv, verify_duality,
    verify_embedding, verify_operator_identities, verify_rihaczek_window_relation,
    verify_stft_factorization, verify_transform_identities, CheckRow, EmbeddingKind,
    EmbeddingReport, NamedSymbol, SupportEquivReport, SupportEquivRow,
};

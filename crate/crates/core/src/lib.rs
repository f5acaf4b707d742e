//! Discretized time-frequency analysis on centered periodic grids.
//!
//! The crate provides, over a generic float scalar (`f32` or `f64`):
//!
//! * centered grids and complex sampled fields ([`grid`]),
//! * unitary Fourier, symplectic Fourier, and short-time Fourier transforms
//!   ([`transforms`]),
//! * mixed Lebesgue and modulation-type norms ([`norms`]),
//! * Kohn–Nirenberg operator application and related bilinear forms
//!   ([`operators`]),
//! * analytic test functions with known transforms ([`testfns`]),
//! * scaling-law, boundedness, and exponent-region analysis ([`analysis`]).
//!
//! All transforms follow one convention set: axes hold `n` points
//! x_j = (j − n/2)·Δ with Δ = extent/n, the frequency axis dual to extent `L`
//! has spacing 1/L, and the forward transform uses kernel e^{−2πixξ} with
//! Riemann-sum normalization, making Parseval exact on the grid.

pub mod analysis;
pub mod error;
pub mod grid;
pub mod norms;
pub mod operators;
mod rng;
pub mod scalar;
pub mod testfns;
pub mod transforms;

pub use error::{Error, Result};
pub use grid::{
    coordinate_shear, dual_label, integrate, make_grid, phase_space_axes, sample, tensor, Axis,
    GridSpec, SampledField,
};
pub use norms::{
    fl_norm, is_moderate_check, mixed_norm, modulation_norm, modulation_norm_tilde,
    phase_m_norm, phase_modulation_norm, phase_modulation_norms_batch, sobolev_norm,
    sheared_product_weight, weight_ws, ExponentChain, ModNormSpec, ModVariant, ModerateReport,
    ModerateViolation, Weight, WeightKind,
};
pub use operators::{
    apply_kn, apply_kn_fast, convolve, duality_pair, rihaczek, symbol_multiply_convolve,
    symbol_tensor, MultiplyConvolveSymbol, SymbolField, SymbolProvenance,
};
pub use scalar::Scalar;
pub use testfns::{
    bump, chirp, chirp_matched_input, chirped_symbol, gaussian_lambda, FamilyKind, FamilyParam,
};
pub use transforms::{
    fourier, fourier_along, inverse_fourier, inverse_fourier_along, modulate, stft, stft_2d,
    symplectic_fourier, symplectic_modulate, symplectic_stft, translate, WindowKind, WindowSpec,
};

/// Default-precision grid.
pub type Grid = GridSpec<f64>;
/// Default-precision field.
pub type Field = SampledField<f64>;

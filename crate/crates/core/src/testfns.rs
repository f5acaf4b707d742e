//! Deterministic test-function families: scaled Gaussians, smooth compactly
//! supported bumps, quadratic chirps, and the tensor symbols and matched
//! inputs built from them.
//!
//! Every member is exactly reproducible from its parameters — there is no
//! hidden randomness. Chirped constructions carry an aliasing guard: the
//! instantaneous frequency λ·|x| of e^{−πiλ|x|²} must stay below the axis
//! Nyquist frequency on the support of the envelope.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::grid::{phase_space_axes, tensor, Axis, GridSpec, SampledField};
use crate::operators::{SymbolField, SymbolProvenance};
use crate::scalar::Scalar;
use crate::transforms::inverse_fourier;

/// Which deterministic asymptotic family a parameter point selects.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyKind {
    /// φ(λx) = e^{−π(λ|x|)²} — concentrating as λ grows.
    GaussianDilate,
    /// φ(x/λ) = e^{−π(|x|/λ)²} — spreading as λ grows.
    GaussianShrink,
    /// bump(r)·e^{−πiλ|x|²}.
    ChirpedBump,
    /// bump(x) ⊗ (bump·chirp)(ξ) tensor symbol.
    SymbolChirp,
    /// Inverse transform of the conjugated chirped bump, matched to the
    /// `SymbolChirp` symbol.
    PreparedInput,
}

/// One member of an asymptotic family: the family and its λ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FamilyParam<T> {
    pub lambda: T,
    pub kind: FamilyKind,
}

impl<T: Scalar> FamilyParam<T> {
    /// λ must be ≥ 1 so that log-λ regressions are well posed.
    pub fn new(kind: FamilyKind, lambda: T) -> Result<Self> {
        if !(lambda >= T::one()) {
            return Err(Error::invalid(format!("family parameter λ={lambda} must be ≥ 1")));
        }
        Ok(FamilyParam { lambda, kind })
    }
}

/// Samples of φ_λ(x) = e^{−πλ|x|²} on the grid's default axes.
pub fn gaussian_lambda<T: Scalar>(lambda: T, grid: &GridSpec<T>) -> Result<SampledField<T>> {
    if !(lambda > T::zero()) {
        return Err(Error::invalid(format!("gaussian rate λ={lambda} must be positive")));
    }
    let pi = T::PI();
    SampledField::from_fn(grid.default_axes()?, |p| {
        let r2: T = p.iter().map(|&x| x * x).sum();
        Complex::new((-pi * lambda * r2).exp(), T::zero())
    })
}

pub(crate) fn mollifier_on_axes<T: Scalar>(
    axes: Vec<Axis<T>>,
    radius: T,
) -> Result<SampledField<T>> {
    for a in &axes {
        if !(radius > T::zero() && radius + radius < a.extent) {
            return Err(Error::invalid(format!(
                "bump radius {radius} must satisfy 0 < r < {}/2 on axis '{}'",
                a.extent, a.label
            )));
        }
    }
    SampledField::from_fn(axes, |p| {
        let u: T = p.iter().map(|&x| (x / radius) * (x / radius)).sum();
        Complex::new(mollifier_profile(u), T::zero())
    })
}

/// Mollifier profile in the squared radial variable u = |x/r|²:
/// exp(1 − 1/(1−u)) inside the unit ball, 0 outside.
pub(crate) fn mollifier_profile<T: Scalar>(u: T) -> T {
    let one = T::one();
    if u < one {
        (one - (one - u).recip()).exp()
    } else {
        T::zero()
    }
}

/// The standard mollifier h(x) = exp(1 − 1/(1−|x/r|²)) for |x| < r and 0
/// outside: smooth, nonnegative, compactly supported, h(0) = 1.
pub fn bump<T: Scalar>(grid: &GridSpec<T>, radius: T) -> Result<SampledField<T>> {
    mollifier_on_axes(grid.default_axes()?, radius)
}

/// Per-axis support radius of h, estimated as the largest coordinate
/// magnitude carrying a nonzero sample plus one grid spacing (the true
/// support may extend up to one cell past the last nonzero sample).
fn support_radii<T: Scalar>(h: &SampledField<T>) -> Vec<T> {
    let mut radii = vec![T::zero(); h.dim()];
    let coords: Vec<Vec<T>> = h.axes().iter().map(|a| a.coords()).collect();
    let strides = h.strides();
    let mut any = false;
    for (flat, v) in h.values().iter().enumerate() {
        if v.norm_sqr() > T::zero() {
            any = true;
            for (k, axis) in h.axes().iter().enumerate() {
                let idx = (flat / strides[k]) % axis.n;
                let m = coords[k][idx].abs();
                if m > radii[k] {
                    radii[k] = m;
                }
            }
        }
    }
    if any {
        for (r, a) in radii.iter_mut().zip(h.axes()) {
            *r += a.spacing();
        }
    }
    radii
}

/// Multiply h by the chirp phase e^{−πiλ|x|²}. Requires λ ≥ 1 and, per
/// axis, λ·r < n/(2·extent) where r is the support radius of h along that
/// axis — otherwise the chirp would alias on the grid.
pub fn chirp<T: Scalar>(h: &SampledField<T>, lambda: T) -> Result<SampledField<T>> {
    if !(lambda >= T::one()) {
        return Err(Error::invalid(format!("chirp rate λ={lambda} must be ≥ 1")));
    }
    let two = T::one() + T::one();
    for (axis, r) in h.axes().iter().zip(support_radii(h)) {
        let nyquist = T::of_usize(axis.n) / (two * axis.extent);
        if lambda * r >= nyquist {
            return Err(Error::NyquistViolation(format!(
                "chirp rate λ={lambda} with support radius {r} on axis '{}' reaches \
                 instantaneous frequency {} ≥ Nyquist {nyquist}",
                axis.label,
                lambda * r,
            )));
        }
    }
    let pi = T::PI();
    let mut out = h.clone();
    let coords: Vec<Vec<T>> = h.axes().iter().map(|a| a.coords()).collect();
    let strides = h.strides();
    let shape = h.shape();
    for (flat, v) in out.values_mut().iter_mut().enumerate() {
        let mut r2 = T::zero();
        for k in 0..shape.len() {
            let x = coords[k][(flat / strides[k]) % shape[k]];
            r2 += x * x;
        }
        let phase = -pi * lambda * r2;
        *v *= Complex::new(phase.cos(), phase.sin());
    }
    Ok(out)
}

/// The tensor symbol σ_λ(x,ξ) = h(x)·h_λ(ξ) on a 1-axis grid's phase
/// space, where h is the radius-r mollifier and h_λ its ξ-side chirp.
pub fn chirped_symbol<T: Scalar>(
    grid: &GridSpec<T>,
    radius: T,
    lambda: T,
) -> Result<SymbolField<T>> {
    let axes = phase_space_axes(grid)?;
    let bx = mollifier_on_axes(vec![axes[0].clone()], radius)?;
    let bxi = chirp(&mollifier_on_axes(vec![axes[1].clone()], radius)?, lambda)?;
    SymbolField::new(tensor(&bx, &bxi)?, SymbolProvenance::ChirpTensor)
}

/// The sampled member of a 1-axis asymptotic family at the given λ:
/// concentrating Gaussians e^{−π(λx)²}, spreading Gaussians e^{−π(x/λ)²},
/// or radius-r chirped bumps. The two symbol-side kinds have dedicated
/// constructors ([`chirped_symbol`], [`chirp_matched_input`]) because they
/// produce differently shaped data.
pub fn family_member<T: Scalar>(
    param: FamilyParam<T>,
    grid: &GridSpec<T>,
    radius: T,
) -> Result<SampledField<T>> {
    let lam = param.lambda;
    match param.kind {
        FamilyKind::GaussianDilate => gaussian_lambda(lam * lam, grid),
        FamilyKind::GaussianShrink => gaussian_lambda((lam * lam).recip(), grid),
        FamilyKind::ChirpedBump => chirp(&bump(grid, radius)?, lam),
        FamilyKind::SymbolChirp | FamilyKind::PreparedInput => Err(Error::invalid(
            "symbol-side family members are built by their dedicated constructors",
        )),
    }
}

/// The input matched to [`chirped_symbol`]: the inverse transform of the
/// conjugated ξ-side chirped bump, as a field on the grid's x axis.
pub fn chirp_matched_input<T: Scalar>(
    grid: &GridSpec<T>,
    radius: T,
    lambda: T,
) -> Result<SampledField<T>> {
    let axes = phase_space_axes(grid)?;
    let bxi = chirp(&mollifier_on_axes(vec![axes[1].clone()], radius)?, lambda)?;
    inverse_fourier(&bxi.conj())?.relabel(&["x"])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{integrate, make_grid};
    use crate::norms::{mixed_norm, ExponentChain};
    use crate::operators::apply_kn;
    use crate::transforms::fourier;

    #[test]
    fn gaussian_family_closed_forms() {
        let g = make_grid(1, 256, 16.0f64).unwrap();
        // λ = 1 integrates to 1 (Gaussian integral).
        let f1 = gaussian_lambda(1.0, &g).unwrap();
        assert!((integrate(&f1).re - 1.0).abs() < 1e-12);
        for lam in [0.5, 1.0, 2.0, 5.0] {
            let f = gaussian_lambda(lam, &g).unwrap();
            // Peak value 1 at the origin (a grid point).
            assert_eq!(f.values()[256 / 2], Complex::new(1.0, 0.0));
            // ‖φ_λ‖₂ = (2λ)^{−1/4}.
            assert!((f.l2_norm() - (2.0 * lam).powf(-0.25)).abs() < 1e-10);
        }
        assert!(gaussian_lambda(0.0, &g).is_err());
        assert!(gaussian_lambda(-1.0, &g).is_err());
    }

    #[test]
    fn bump_is_a_normalized_mollifier() {
        let g = make_grid(1, 128, 8.0f64).unwrap();
        let h = bump(&g, 2.0).unwrap();
        let x = h.axes()[0].coords();
        // h(0) = 1, h ≥ 0, exact zeros outside |x| ≤ r.
        assert_eq!(h.values()[64], Complex::new(1.0, 0.0));
        for (v, &xi) in h.values().iter().zip(&x) {
            assert!(v.im == 0.0 && v.re >= 0.0);
            if xi.abs() > 2.0 {
                assert_eq!(v.re, 0.0);
            }
        }
        // Radius range checks.
        assert!(bump(&g, 0.0).is_err());
        assert!(bump(&g, 4.0).is_err());
        assert!(bump(&g, 3.9999).is_ok());
    }

    #[test]
    fn chirp_preserves_magnitude_and_guards_aliasing() {
        let g = make_grid(1, 256, 16.0f64).unwrap();
        let h = bump(&g, 2.0).unwrap();
        let hl = chirp(&h, 3.0).unwrap();
        for (a, b) in h.values().iter().zip(hl.values()) {
            assert!((a.norm() - b.norm()).abs() < 1e-15);
        }
        // Nyquist n/(2L) = 8; the inferred support radius is the largest
        // nonzero grid point (2 − 1/16) plus one spacing, i.e. exactly 2,
        // so the guard trips once 2λ ≥ 8.
        assert!(chirp(&h, 3.99).is_ok());
        assert!(matches!(chirp(&h, 4.0), Err(Error::NyquistViolation(_))));
        // λ < 1 is out of the asymptotic range.
        assert!(chirp(&h, 0.5).is_err());
        // The zero field has empty support: any λ is fine.
        let z = SampledField::from_fn(g.default_axes().unwrap(), |_| {
            Complex::new(0.0, 0.0)
        })
        .unwrap();
        assert!(chirp(&z, 1000.0).is_ok());
    }

    #[test]
    fn transformed_chirp_spreads_at_the_predicted_rate() {
        // ‖ĥ_λ‖_{L^q} scales like λ^{1/q − 1/2}.
        let g = make_grid(1, 2048, 16.0f64).unwrap();
        let h = bump(&g, 2.0).unwrap();
        let lambdas = [1.0, 2.0, 4.0, 8.0, 16.0];
        let mut logs = Vec::new();
        for &lam in &lambdas {
            let hh = fourier(&chirp(&h, lam).unwrap()).unwrap();
            let v = mixed_norm(&hh, &ExponentChain::of(&[("nu", 4.0)]).unwrap(), None).unwrap();
            logs.push(v.ln());
        }
        // Least-squares slope over (ln λ, ln value).
        let xs: Vec<f64> = lambdas.iter().map(|l| l.ln()).collect();
        let n = xs.len() as f64;
        let (sx, sy): (f64, f64) = (xs.iter().sum(), logs.iter().sum());
        let sxx: f64 = xs.iter().map(|x| x * x).sum();
        let sxy: f64 = xs.iter().zip(&logs).map(|(x, y)| x * y).sum();
        let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        assert!((slope - (0.25 - 0.5)).abs() < 0.01, "slope {slope}");
    }

    #[test]
    fn chirped_symbol_is_compactly_supported() {
        let g = make_grid(1, 256, 16.0f64).unwrap();
        let sym = chirped_symbol(&g, 2.0, 1.0).unwrap();
        assert!(matches!(sym.provenance, SymbolProvenance::ChirpTensor));
        let f = &sym.field;
        let x = f.axes()[0].coords();
        let xi = f.axes()[1].coords();
        let n1 = f.axes()[1].n;
        for (flat, v) in f.values().iter().enumerate() {
            if x[flat / n1].abs() > 2.0 || xi[flat % n1].abs() > 2.0 {
                assert_eq!(v.norm(), 0.0);
            }
        }
        // ξ-axis guard: dual Nyquist is L/2 = 8 → the ξ chirp aliases once
        // λ·(2 − Δξ) ≥ 8.
        assert!(chirped_symbol(&g, 2.0, 4.2).is_err());
    }

    #[test]
    fn matched_input_makes_the_operator_output_rate_independent() {
        let g = make_grid(1, 256, 32.0f64).unwrap();
        let outputs: Vec<SampledField<f64>> = [1.0, 4.0]
            .iter()
            .map(|&lam| {
                let sym = chirped_symbol(&g, 2.0, lam).unwrap();
                let f = chirp_matched_input(&g, 2.0, lam).unwrap();
                apply_kn(&sym, &f).unwrap()
            })
            .collect();
        let scale = outputs[0].max_abs();
        assert!(scale > 0.0);
        assert!(outputs[0].max_abs_diff(&outputs[1]).unwrap() < 1e-6 * scale);
        // ‖f_λ‖₂ = ‖bump‖₂ on the dual grid is exactly rate-flat.
        let f1 = chirp_matched_input(&g, 2.0, 1.0).unwrap();
        let f4 = chirp_matched_input(&g, 2.0, 4.0).unwrap();
        assert!((f1.l2_norm() - f4.l2_norm()).abs() < 1e-12 * f1.l2_norm());
    }
}

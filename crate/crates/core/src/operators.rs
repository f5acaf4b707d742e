//! Kohn–Nirenberg operator application and the bilinear forms around it.
//!
//! A symbol σ(x,ξ) acts on a function by T_σf(x) = ∫σ(x,ξ) f̂(ξ) e^{2πix·ξ}dξ,
//! discretized as Δξ·Σ_k σ(x_j,ξ_k) f̂(ξ_k) e^{2πi x_j ξ_k}. On the centered
//! grid the phase x_j·ξ_k is the exact rational (j−n/2)(k−n/2)/n, so the
//! exponential is read from an exact table of n-th roots of unity.
//!
//! Symbols always live on the phase-space axes (x, ξ) with the ξ grid pinned
//! to the dual of the x grid; this keeps operator application free of
//! resampling and makes the identities in this module hold to rounding.

use num_complex::Complex;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::grid::{tensor, Axis, SampledField};
use crate::scalar::Scalar;
use crate::transforms::{fourier, inverse_fourier};

/// How a symbol was constructed (informational; the field is authoritative).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymbolProvenance {
    /// Arbitrary user samples.
    Direct,
    /// h₁(x)·ĥ₂(ξ) — the operator multiplies after convolving.
    Tensor,
    /// Built from a twisted tensor kernel — the operator convolves after
    /// multiplying; see [`symbol_multiply_convolve`].
    TwistedKernel,
    /// Compactly supported bump ⊗ chirped bump family.
    ChirpTensor,
}

/// An operator symbol: samples on (x, ξ) with the ξ axis on the dual grid
/// of the x axis.
#[derive(Debug, Clone)]
pub struct SymbolField<T> {
    pub field: SampledField<T>,
    pub provenance: SymbolProvenance,
}

impl<T: Scalar> SymbolField<T> {
    /// Wrap a two-axis field as a symbol, enforcing the (x, ξ) layout.
    pub fn new(field: SampledField<T>, provenance: SymbolProvenance) -> Result<Self> {
        if field.dim() != 2 {
            return Err(Error::invalid("a symbol needs exactly the two axes (x, xi)"));
        }
        let (a, b) = (&field.axes()[0], &field.axes()[1]);
        if a.label != "x" || b.label != "xi" {
            return Err(Error::invalid(format!(
                "symbol axes must be labeled (x, xi), got ({}, {})",
                a.label, b.label
            )));
        }
        if !b.same_geometry(&a.dual()) {
            return Err(Error::mismatch(
                "symbol frequency axis must be the dual grid of its spatial axis",
            ));
        }
        Ok(SymbolField { field, provenance })
    }

    /// Wrap user samples (provenance [`SymbolProvenance::Direct`]).
    pub fn direct(field: SampledField<T>) -> Result<Self> {
        Self::new(field, SymbolProvenance::Direct)
    }

    /// Point count of the underlying square grid.
    pub fn n(&self) -> usize {
        self.field.axes()[0].n
    }
}

/// Exact table of e^{2πi m/n}, m = 0..n.
pub(crate) fn root_table<T: Scalar>(n: usize) -> Vec<Complex<T>> {
    let two_pi = T::PI() + T::PI();
    (0..n)
        .map(|m| {
            let theta = two_pi * T::of_usize(m) / T::of_usize(n);
            Complex::new(theta.cos(), theta.sin())
        })
        .collect()
}

fn check_operator_grids<T: Scalar>(sigma: &SymbolField<T>, f: &SampledField<T>) -> Result<usize> {
    if f.dim() != 1 {
        return Err(Error::invalid("operator application expects a one-axis input"));
    }
    let fx = &f.axes()[0];
    let sx = &sigma.field.axes()[0];
    if !fx.same_geometry(sx) {
        return Err(Error::mismatch(
            "input grid differs from the symbol's spatial grid",
        ));
    }
    Ok(fx.n)
}

/// Apply the operator with the given symbol: direct O(n²) quadrature
/// T_σf(x_j) = Δξ·Σ_k σ(x_j,ξ_k) f̂(ξ_k) e^{2πi x_j ξ_k}.
///
/// The input's axis label is preserved on the output. Rows are computed in
/// parallel and merged in index order.
pub fn apply_kn<T: Scalar>(sigma: &SymbolField<T>, f: &SampledField<T>) -> Result<SampledField<T>> {
    let n = check_operator_grids(sigma, f)?;
    let fhat = fourier(f)?;
    let fh = fhat.values();
    let sv = sigma.field.values();
    let dxi = sigma.field.axes()[1].spacing();
    let tw = root_table::<T>(n);
    let h = (n / 2) as isize;
    let ni = n as isize;
    let out: Vec<Complex<T>> = (0..n)
        .into_par_iter()
        .map(|j| {
            let mut acc = Complex::new(T::zero(), T::zero());
            let jc = j as isize - h;
            for k in 0..n {
                let m = (jc * (k as isize - h)).rem_euclid(ni) as usize;
                acc += sv[j * n + k] * fh[k] * tw[m];
            }
            acc.scale(dxi)
        })
        .collect();
    SampledField::new(vec![f.axes()[0].clone()], out)
}

/// Same contract as [`apply_kn`], computed by one inverse transform per
/// symbol row (the output is the diagonal of the row-wise back transforms).
pub fn apply_kn_fast<T: Scalar>(
    sigma: &SymbolField<T>,
    f: &SampledField<T>,
) -> Result<SampledField<T>> {
    let n = check_operator_grids(sigma, f)?;
    let fhat = fourier(f)?;
    let fh = fhat.values();
    let sv = sigma.field.values();
    let xi_axis = sigma.field.axes()[1].clone();
    let out: Vec<Complex<T>> = (0..n)
        .into_par_iter()
        .map(|j| {
            let row: Vec<Complex<T>> = (0..n).map(|k| sv[j * n + k] * fh[k]).collect();
            let row_field = SampledField::new(vec![xi_axis.clone()], row)?;
            Ok(inverse_fourier(&row_field)?.values()[j])
        })
        .collect::<Result<_>>()?;
    SampledField::new(vec![f.axes()[0].clone()], out)
}

/// Rihaczek form R(f,g)(x,ξ) = e^{2πi x·ξ} f̂(ξ) conj(g(x)) on (x, ξ).
pub fn rihaczek<T: Scalar>(
    f: &SampledField<T>,
    g: &SampledField<T>,
) -> Result<SampledField<T>> {
    f.check_same_axes(g)?;
    if f.dim() != 1 {
        return Err(Error::invalid("the Rihaczek form expects one-axis inputs"));
    }
    let x = Axis { label: "x".into(), ..f.axes()[0].clone() };
    let xi = Axis { label: "xi".into(), ..x.dual() };
    let n = x.n;
    let fh = fourier(f)?;
    let fhv = fh.values();
    let gv = g.values();
    let tw = root_table::<T>(n);
    let h = (n / 2) as isize;
    let ni = n as isize;
    let mut vals = Vec::with_capacity(n * n);
    for j in 0..n {
        let gc = gv[j].conj();
        let jc = j as isize - h;
        for (k, fk) in fhv.iter().enumerate() {
            let m = (jc * (k as isize - h)).rem_euclid(ni) as usize;
            vals.push(tw[m] * fk * gc);
        }
    }
    SampledField::new(vec![x, xi], vals)
}

/// Both sides of the operator–form duality ⟨T_σf, g⟩ = ⟨σ, conj R(f,g)⟩,
/// with ⟨·,·⟩ linear in the first slot and antilinear in the second.
/// Returned as (left, right); the caller asserts closeness.
pub fn duality_pair<T: Scalar>(
    sigma: &SymbolField<T>,
    f: &SampledField<T>,
    g: &SampledField<T>,
) -> Result<(Complex<T>, Complex<T>)> {
    let lhs = apply_kn(sigma, f)?.inner(g)?;
    let r = rihaczek(f, g)?.conj();
    let rhs = sigma.field.inner(&r)?;
    Ok((lhs, rhs))
}

/// Periodic convolution scaled by the cell measure (Riemann approximation
/// of ∫f(y)g(x−y)dy), computed by a Fourier round trip.
pub fn convolve<T: Scalar>(
    f: &SampledField<T>,
    g: &SampledField<T>,
) -> Result<SampledField<T>> {
    f.check_same_axes(g)?;
    let prod = fourier(f)?.mul_pointwise(&fourier(g)?)?;
    inverse_fourier(&prod)
}

/// Symbol for the multiply-then-convolve operator f ↦ (h₁·f) * h₂, together
/// with its twisted-tensor kernel on the reciprocal grid.
#[derive(Debug, Clone)]
pub struct MultiplyConvolveSymbol<T> {
    pub symbol: SymbolField<T>,
    /// κ(t,ν) = e^{−2πi t·ν} h₂(t) ĥ₁(ν); its symplectic transform equals
    /// the symbol exactly on the grid.
    pub kernel: SampledField<T>,
}

/// Build the symbol whose operator is f ↦ (h₁·f) * h₂.
///
/// Column k is the convolution (M_{−ξ_k}h₂ * h₁)(x), evaluated by one
/// frequency-side product and back transform per column (the modulation
/// becomes a whole-grid shift of ĥ₂). The twisted kernel κ is returned for
/// cross-checks: symplectic_fourier(κ) = symbol to rounding.
pub fn symbol_multiply_convolve<T: Scalar>(
    h1: &SampledField<T>,
    h2: &SampledField<T>,
) -> Result<MultiplyConvolveSymbol<T>> {
    h1.check_same_axes(h2)?;
    if h1.dim() != 1 {
        return Err(Error::invalid("symbol factories expect one-axis factors"));
    }
    let xin = &h1.axes()[0];
    let x = Axis { label: "x".into(), ..xin.clone() };
    let xi = Axis { label: "xi".into(), ..x.dual() };
    let n = x.n;
    let h = n / 2;
    let h1hat = fourier(h1)?;
    let h2hat = fourier(h2)?;
    let h1h = h1hat.values();
    let h2h = h2hat.values();
    let dual_axis = xin.dual();
    // One back transform per ξ column: FT(M_{−ξ_k}h₂)(ν) = ĥ₂(ν + ξ_k).
    let cols: Vec<Vec<Complex<T>>> = (0..n)
        .into_par_iter()
        .map(|k| {
            let prod: Vec<Complex<T>> = (0..n)
                .map(|m| h2h[(m + k + n - h) % n] * h1h[m])
                .collect();
            let field = SampledField::new(vec![dual_axis.clone()], prod)?;
            Ok(inverse_fourier(&field)?.into_values())
        })
        .collect::<Result<_>>()?;
    let mut vals = vec![Complex::new(T::zero(), T::zero()); n * n];
    for (k, col) in cols.iter().enumerate() {
        for (j, v) in col.iter().enumerate() {
            vals[j * n + k] = *v;
        }
    }
    let symbol = SymbolField::new(
        SampledField::new(vec![x.clone(), xi], vals)?,
        SymbolProvenance::TwistedKernel,
    )?;

    // Kernel κ(t,ν) = e^{−2πi t·ν} h₂(t) ĥ₁(ν) on the reciprocal grid; the
    // phase t_i·ν_j = (i−n/2)(j−n/2)/n is read from the exact root table.
    let t_axis = Axis { label: "t".into(), ..x.clone() };
    let nu_axis = Axis { label: "nu".into(), ..x.dual() };
    let tw = root_table::<T>(n);
    let h2v = h2.values();
    let hi = h as isize;
    let ni = n as isize;
    let mut kvals = Vec::with_capacity(n * n);
    for i in 0..n {
        let ic = i as isize - hi;
        for (j, h1j) in h1h.iter().enumerate() {
            let m = (-(ic * (j as isize - hi))).rem_euclid(ni) as usize;
            kvals.push(tw[m] * h2v[i] * h1j);
        }
    }
    let kernel = SampledField::new(vec![t_axis, nu_axis], kvals)?;
    Ok(MultiplyConvolveSymbol { symbol, kernel })
}

/// Symbol σ = h₁ ⊗ ĥ₂ for the convolve-then-multiply operator
/// f ↦ h₁·(h₂ * f).
pub fn symbol_tensor<T: Scalar>(
    h1: &SampledField<T>,
    h2: &SampledField<T>,
) -> Result<SymbolField<T>> {
    h1.check_same_axes(h2)?;
    if h1.dim() != 1 {
        return Err(Error::invalid("symbol factories expect one-axis factors"));
    }
    let hx = h1.clone().relabel(&["x"])?;
    let hxi = fourier(h2)?.relabel(&["xi"])?;
    SymbolField::new(tensor(&hx, &hxi)?, SymbolProvenance::Tensor)
}

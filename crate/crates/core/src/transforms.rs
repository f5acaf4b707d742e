//! Centered Fourier, symplectic Fourier, and short-time Fourier transforms.
//!
//! Conventions, shared by every routine here:
//!
//! * Forward kernel e^{−2πi x·ξ}, inverse kernel e^{+2πi x·ξ}, both with
//!   Riemann-sum weights, so `fourier` approximates ∫f(x)e^{−2πix·ξ}dx.
//! * An axis with n points over extent L transforms to the centered dual
//!   axis: n points, spacing 1/L, extent n/L. With both grids centered the
//!   transform reduces to a standard FFT conjugated by (−1)^j twiddles and
//!   one quarter-turn constant, making the pair exactly unitary (Parseval
//!   holds to rounding, round trips to ~1e−15).
//! * The symplectic transform uses the pairing [(x,ξ),(t,ν)] = x·ν − ξ·t and
//!   satisfies sympFT(F)(t,ν) = FT(F)(ν,−t) exactly on the grid.
//! * Short-time transforms shift the window by whole grid steps: the sample
//!   at shift index i along an axis corresponds to t_i = (i − n/2)·Δ.

use std::any::{Any, TypeId};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex;
use rayon::prelude::*;
use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};
use crate::grid::{for_each_line, Axis, SampledField};
use crate::scalar::Scalar;

/// Process-wide FFT plan cache keyed by scalar type, length, and direction.
static PLAN_CACHE: OnceLock<Mutex<HashMap<(TypeId, usize, bool), Box<dyn Any + Send + Sync>>>> =
    OnceLock::new();

fn fft_plan<T: Scalar>(n: usize, forward: bool) -> Arc<dyn Fft<T>> {
    let cache = PLAN_CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut map = cache.lock().expect("FFT plan cache poisoned");
    let key = (TypeId::of::<T>(), n, forward);
    if let Some(entry) = map.get(&key) {
        return entry
            .downcast_ref::<Arc<dyn Fft<T>>>()
            .expect("cache entry matches its key type")
            .clone();
    }
    let mut planner = FftPlanner::<T>::new();
    let plan = if forward {
        planner.plan_fft_forward(n)
    } else {
        planner.plan_fft_inverse(n)
    };
    map.insert(key, Box::new(plan.clone()));
    plan
}

/// The constant produced by centering both index ranges at n/2: i^{−n} for
/// the forward transform, its conjugate for the inverse.
fn quarter_phase<T: Scalar>(n: usize, forward: bool) -> Complex<T> {
    let (o, z) = (T::one(), T::zero());
    let c = match n % 4 {
        0 => Complex::new(o, z),
        1 => Complex::new(z, -o),
        2 => Complex::new(-o, z),
        _ => Complex::new(z, o),
    };
    if forward {
        c
    } else {
        c.conj()
    }
}

/// In-place centered transform of one contiguous length-n line.
///
/// Forward: out_k = Δ·Σ_j buf_j e^{−2πi x_j ξ_k} with x_j = (j−n/2)Δ,
/// ξ_k = (k−n/2)/extent_in, Δ = extent_in/n. The inverse uses the conjugate
/// kernel with Δ read from its own (frequency-side) input axis.
fn cdft_line<T: Scalar>(
    buf: &mut [Complex<T>],
    extent_in: T,
    forward: bool,
    plan: &Arc<dyn Fft<T>>,
    scratch: &mut [Complex<T>],
) {
    let n = buf.len();
    for v in buf.iter_mut().skip(1).step_by(2) {
        *v = -*v;
    }
    plan.process_with_scratch(buf, scratch);
    let scale = quarter_phase::<T>(n, forward).scale(extent_in / T::of_usize(n));
    for (k, v) in buf.iter_mut().enumerate() {
        *v *= scale;
        if k % 2 == 1 {
            *v = -*v;
        }
    }
}

fn transform_axes<T: Scalar>(
    f: &SampledField<T>,
    labels: &[&str],
    forward: bool,
) -> Result<SampledField<T>> {
    let mut axes = f.axes().to_vec();
    let mut values = f.values().to_vec();
    let shape: Vec<usize> = axes.iter().map(|a| a.n).collect();
    for label in labels {
        let idx = axes
            .iter()
            .position(|a| a.label == *label)
            .ok_or_else(|| Error::invalid(format!("no axis labeled '{label}'")))?;
        let n = shape[idx];
        let extent_in = axes[idx].extent;
        let plan = fft_plan::<T>(n, forward);
        let mut scratch =
            vec![Complex::new(T::zero(), T::zero()); plan.get_inplace_scratch_len()];
        let mut line = vec![Complex::new(T::zero(), T::zero()); n];
        for_each_line(&shape, idx, |base, stride| {
            for (j, slot) in line.iter_mut().enumerate() {
                *slot = values[base + j * stride];
            }
            cdft_line(&mut line, extent_in, forward, &plan, &mut scratch);
            for (j, slot) in line.iter().enumerate() {
                values[base + j * stride] = *slot;
            }
        });
        axes[idx] = axes[idx].dual();
    }
    SampledField::new(axes, values)
}

/// Full centered Fourier transform: every axis is transformed to its dual.
pub fn fourier<T: Scalar>(f: &SampledField<T>) -> Result<SampledField<T>> {
    let labels: Vec<String> = f.axes().iter().map(|a| a.label.clone()).collect();
    let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
    transform_axes(f, &refs, true)
}

/// Exact inverse of [`fourier`].
pub fn inverse_fourier<T: Scalar>(f: &SampledField<T>) -> Result<SampledField<T>> {
    let labels: Vec<String> = f.axes().iter().map(|a| a.label.clone()).collect();
    let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
    transform_axes(f, &refs, false)
}

/// Partial Fourier transform along the named axes only.
pub fn fourier_along<T: Scalar>(f: &SampledField<T>, labels: &[&str]) -> Result<SampledField<T>> {
    transform_axes(f, labels, true)
}

/// Partial inverse Fourier transform along the named axes only.
pub fn inverse_fourier_along<T: Scalar>(
    f: &SampledField<T>,
    labels: &[&str],
) -> Result<SampledField<T>> {
    transform_axes(f, labels, false)
}

/// Symplectic Fourier transform of a field with axes (x⃗, ξ⃗):
/// F̃(t,ν) = ∫∫ e^{−2πi(x·ν − ξ·t)} F(x,ξ) dx dξ.
///
/// Computed as the plain 2d-axis transform followed by the index rotation
/// (ν,t') ↦ (t,ν) with t = −t', which is exact on the centered grid. Output
/// axes are the duals in the order (t⃗, ν⃗). Applying it twice is the
/// identity.
pub fn symplectic_fourier<T: Scalar>(f: &SampledField<T>) -> Result<SampledField<T>> {
    let dim = f.dim();
    if dim == 0 || dim % 2 != 0 {
        return Err(Error::invalid(
            "symplectic transform needs an even number of axes",
        ));
    }
    let d = dim / 2;
    let g = fourier(f)?;
    let gshape = g.shape();
    let gstrides = g.strides();
    let gaxes = g.axes();
    let mut out_axes: Vec<Axis<T>> = gaxes[d..].to_vec();
    out_axes.extend_from_slice(&gaxes[..d]);
    let out_shape: Vec<usize> = out_axes.iter().map(|a| a.n).collect();
    let gv = g.values();
    let mut out = Vec::with_capacity(gv.len());
    let mut idx = vec![0usize; dim];
    for _ in 0..gv.len() {
        // idx = (t⃗ then ν⃗); source entry is G[ν⃗, −t⃗].
        let mut src = 0usize;
        for k in 0..d {
            src += idx[d + k] * gstrides[k];
            let nk = gshape[d + k];
            src += ((nk - idx[k]) % nk) * gstrides[d + k];
        }
        out.push(gv[src]);
        for k in (0..dim).rev() {
            idx[k] += 1;
            if idx[k] < out_shape[k] {
                break;
            }
            idx[k] = 0;
        }
    }
    SampledField::new(out_axes, out)
}

fn grid_steps<T: Scalar>(
    axes: &[Axis<T>],
    amounts: &[T],
    unit: impl Fn(&Axis<T>) -> T,
    what: &str,
) -> Result<Vec<isize>> {
    if amounts.len() != axes.len() {
        return Err(Error::invalid(format!(
            "{what} needs one component per axis ({} axes, {} components)",
            axes.len(),
            amounts.len()
        )));
    }
    axes.iter()
        .zip(amounts)
        .map(|(a, &s)| {
            let u = unit(a);
            let m = (s / u).round();
            if (s - m * u).abs() > T::of_f64(1e-9) * u.max(s.abs()) {
                return Err(Error::invalid(format!(
                    "{what} component {s} is not a whole multiple of the grid step {u}"
                )));
            }
            m.to_isize()
                .ok_or_else(|| Error::invalid(format!("{what} component {s} out of range")))
        })
        .collect()
}

/// Translation (T_a f)(x) = f(x − a); each component of `a` must be a whole
/// multiple of the axis spacing (no interpolation is performed).
pub fn translate<T: Scalar>(f: &SampledField<T>, a: &[T]) -> Result<SampledField<T>> {
    let steps = grid_steps(f.axes(), a, Axis::spacing, "translation")?;
    f.roll(&steps)
}

fn cis<T: Scalar>(theta: T) -> Complex<T> {
    Complex::new(theta.cos(), theta.sin())
}

/// Multiply a field by a separable unimodular phase given per-axis tables.
fn multiply_separable<T: Scalar>(
    f: &SampledField<T>,
    tables: &[Vec<Complex<T>>],
) -> Result<SampledField<T>> {
    let shape = f.shape();
    let mut out = f.values().to_vec();
    let mut idx = vec![0usize; shape.len()];
    for v in &mut out {
        for (k, &i) in idx.iter().enumerate() {
            *v *= tables[k][i];
        }
        for k in (0..idx.len()).rev() {
            idx[k] += 1;
            if idx[k] < shape[k] {
                break;
            }
            idx[k] = 0;
        }
    }
    SampledField::new(f.axes().to_vec(), out)
}

/// Modulation (M_ν f)(x) = e^{2πi x·ν} f(x); each component of `nu` must lie
/// on the dual grid (a whole multiple of 1/extent).
pub fn modulate<T: Scalar>(f: &SampledField<T>, nu: &[T]) -> Result<SampledField<T>> {
    grid_steps(f.axes(), nu, |a| a.extent.recip(), "modulation")?;
    let two_pi = T::PI() + T::PI();
    let tables: Vec<Vec<Complex<T>>> = f
        .axes()
        .iter()
        .zip(nu)
        .map(|(a, &v)| a.coords().iter().map(|&x| cis(two_pi * x * v)).collect())
        .collect();
    multiply_separable(f, &tables)
}

/// Symplectic modulation of a field on axes (x⃗, ξ⃗) by s = (t⃗, ν⃗):
/// multiply pointwise by e^{2πi(x·ν − ξ·t)}. Components must lie on the dual
/// grids of the axes they pair with.
pub fn symplectic_modulate<T: Scalar>(
    f: &SampledField<T>,
    shift: &[T],
) -> Result<SampledField<T>> {
    let dim = f.dim();
    if dim % 2 != 0 {
        return Err(Error::invalid(
            "symplectic modulation needs an even number of axes",
        ));
    }
    let d = dim / 2;
    if shift.len() != dim {
        return Err(Error::invalid(format!(
            "symplectic modulation needs {dim} shift components, got {}",
            shift.len()
        )));
    }
    // Pair axis k with shift[d+k] (its ν) and axis d+k with shift[k] (its t).
    let paired: Vec<T> = (0..dim)
        .map(|k| if k < d { shift[d + k] } else { shift[k - d] })
        .collect();
    grid_steps(f.axes(), &paired, |a| a.extent.recip(), "symplectic modulation")?;
    let two_pi = T::PI() + T::PI();
    let tables: Vec<Vec<Complex<T>>> = f
        .axes()
        .iter()
        .enumerate()
        .map(|(k, a)| {
            let sign = if k < d { T::one() } else { -T::one() };
            let v = paired[k];
            a.coords()
                .iter()
                .map(|&x| cis(two_pi * sign * x * v))
                .collect()
        })
        .collect();
    multiply_separable(f, &tables)
}

/// Analysis window for short-time transforms.
#[derive(Debug, Clone)]
pub enum WindowKind<T> {
    /// φ(x) = e^{−π‖x‖²/2}.
    StandardGaussian,
    /// e^{−π·rate·‖x‖²}.
    GaussianScaled(T),
    /// Arbitrary samples; must match the target grid geometry.
    Explicit(SampledField<T>),
}

/// A window choice plus an optional L²-normalization flag (off by default;
/// normalization makes the short-time transform an isometry).
#[derive(Debug, Clone)]
pub struct WindowSpec<T> {
    pub kind: WindowKind<T>,
    pub normalize: bool,
}

impl<T: Scalar> WindowSpec<T> {
    /// φ(x) = e^{−π‖x‖²/2}.
    pub fn standard_gaussian() -> Self {
        WindowSpec { kind: WindowKind::StandardGaussian, normalize: false }
    }

    /// e^{−π·rate·‖x‖²}.
    pub fn gaussian_scaled(rate: T) -> Self {
        WindowSpec { kind: WindowKind::GaussianScaled(rate), normalize: false }
    }

    /// Use the given samples as the window.
    pub fn explicit(field: SampledField<T>) -> Self {
        WindowSpec { kind: WindowKind::Explicit(field), normalize: false }
    }

    /// Same window, rescaled to unit L² norm when materialized.
    pub fn normalized(mut self) -> Self {
        self.normalize = true;
        self
    }

    /// Evaluate the window on the given axes (relabeling an explicit window
    /// to match; geometry must agree).
    pub fn materialize(&self, axes: &[Axis<T>]) -> Result<SampledField<T>> {
        let pi = T::PI();
        let mut w = match &self.kind {
            WindowKind::StandardGaussian => SampledField::from_fn(axes.to_vec(), |p| {
                let r2 = p.iter().map(|&x| x * x).fold(T::zero(), |a, b| a + b);
                Complex::new((-pi * r2 / (T::one() + T::one())).exp(), T::zero())
            })?,
            WindowKind::GaussianScaled(rate) => {
                if !(*rate > T::zero()) {
                    return Err(Error::invalid("gaussian window rate must be positive"));
                }
                let r = *rate;
                SampledField::from_fn(axes.to_vec(), |p| {
                    let r2 = p.iter().map(|&x| x * x).fold(T::zero(), |a, b| a + b);
                    Complex::new((-pi * r * r2).exp(), T::zero())
                })?
            }
            WindowKind::Explicit(g) => {
                if g.axes().len() != axes.len()
                    || g.axes().iter().zip(axes).any(|(a, b)| !a.same_geometry(b))
                {
                    return Err(Error::mismatch(
                        "explicit window does not match the target grid",
                    ));
                }
                let labels: Vec<&str> = axes.iter().map(|a| a.label.as_str()).collect();
                g.clone().relabel(&labels)?
            }
        };
        if self.normalize {
            let nrm = w.l2_norm();
            if !(nrm > T::zero()) {
                return Err(Error::invalid("cannot normalize a zero window"));
            }
            w = w.scale(Complex::new(nrm.recip(), T::zero()));
        }
        Ok(w)
    }
}

/// values[j⃗] = f[j⃗] · conj-free w[(j⃗ − steps) mod n⃗]: the pointwise product
/// of `f` with the window translated by `steps` grid cells.
pub(crate) fn shifted_product<T: Scalar>(
    f: &SampledField<T>,
    w: &SampledField<T>,
    steps: &[isize],
) -> Result<SampledField<T>> {
    f.check_same_axes(w)?;
    let shape = f.shape();
    let strides = f.strides();
    let tables: Vec<Vec<usize>> = shape
        .iter()
        .zip(steps)
        .map(|(&n, &s)| {
            (0..n)
                .map(|j| (j as isize - s).rem_euclid(n as isize) as usize)
                .collect()
        })
        .collect();
    let fv = f.values();
    let wv = w.values();
    let mut out = Vec::with_capacity(fv.len());
    let mut idx = vec![0usize; shape.len()];
    for &val in fv {
        let src: usize = idx
            .iter()
            .enumerate()
            .map(|(k, &i)| tables[k][i] * strides[k])
            .sum();
        out.push(val * wv[src]);
        for k in (0..idx.len()).rev() {
            idx[k] += 1;
            if idx[k] < shape[k] {
                break;
            }
            idx[k] = 0;
        }
    }
    SampledField::new(f.axes().to_vec(), out)
}

fn decode_shift_steps(shape: &[usize], mut flat: usize) -> Vec<isize> {
    let mut idx = vec![0isize; shape.len()];
    for k in (0..shape.len()).rev() {
        idx[k] = (flat % shape[k]) as isize - (shape[k] / 2) as isize;
        flat /= shape[k];
    }
    idx
}

/// One transformed slab per window shift, in row-major shift order.
fn all_windowed_spectra<T: Scalar>(
    f: &SampledField<T>,
    w: &SampledField<T>,
    symplectic: bool,
) -> Result<Vec<Vec<Complex<T>>>> {
    let shape = f.shape();
    let nshifts: usize = shape.iter().product();
    (0..nshifts)
        .into_par_iter()
        .map(|s| {
            let steps = decode_shift_steps(&shape, s);
            let prod = shifted_product(f, w, &steps)?;
            let g = if symplectic {
                symplectic_fourier(&prod)?
            } else {
                fourier(&prod)?
            };
            Ok(g.into_values())
        })
        .collect()
}

/// Short-time Fourier transform V_w f(t,ν) = FT(f · T_t w)(ν).
///
/// Output axes are the shift axes (labeled "t", or "t1…" for several) with
/// the input geometry, followed by the frequency axes (labeled "nu", …) on
/// the dual grid. The window is NOT conjugated.
pub fn stft<T: Scalar>(f: &SampledField<T>, window: &WindowSpec<T>) -> Result<SampledField<T>> {
    let w = window.materialize(f.axes())?;
    let d = f.dim();
    let (tl, nl): (Vec<String>, Vec<String>) = if d == 1 {
        (vec!["t".into()], vec!["nu".into()])
    } else {
        (
            (1..=d).map(|k| format!("t{k}")).collect(),
            (1..=d).map(|k| format!("nu{k}")).collect(),
        )
    };
    let mut out_axes = Vec::with_capacity(2 * d);
    for (a, l) in f.axes().iter().zip(&tl) {
        out_axes.push(Axis { label: l.clone(), n: a.n, extent: a.extent });
    }
    for (a, l) in f.axes().iter().zip(&nl) {
        out_axes.push(Axis { label: l.clone(), ..a.dual() });
    }
    let slabs = all_windowed_spectra(f, &w, false)?;
    let mut values = Vec::with_capacity(f.len() * f.len());
    for slab in slabs {
        values.extend(slab);
    }
    SampledField::new(out_axes, values)
}

/// Plain 2-axis short-time Fourier transform with output axes ordered
/// (shift₀, shift₁, freq₀, freq₁): input labels are kept on the shift axes
/// and dual labels go on the frequency axes, e.g. (x,ξ) ↦ (x,ξ,ν,t).
pub fn stft_2d<T: Scalar>(f: &SampledField<T>, window: &WindowSpec<T>) -> Result<SampledField<T>> {
    if f.dim() != 2 {
        return Err(Error::invalid("stft_2d expects a two-axis field"));
    }
    let w = window.materialize(f.axes())?;
    let (a0, a1) = (f.axes()[0].clone(), f.axes()[1].clone());
    let out_axes = vec![a0.clone(), a1.clone(), a0.dual(), a1.dual()];
    let slabs = all_windowed_spectra(f, &w, false)?;
    let mut values = Vec::with_capacity(f.len() * f.len());
    for slab in slabs {
        values.extend(slab);
    }
    SampledField::new(out_axes, values)
}

/// Symplectic short-time Fourier transform of a phase-space field:
/// Ṽ_w F(x,t,ξ,ν) = sympFT(F · T_{(x,ξ)} w)(t,ν).
///
/// Output axis order is exactly (shift₀, dual₁, shift₁, dual₀) — for an
/// (x,ξ) input that is (x,t,ξ,ν). Computed as one 2-axis symplectic
/// transform per shift; the shift loop runs in parallel with a
/// deterministic merge.
pub fn symplectic_stft<T: Scalar>(
    f: &SampledField<T>,
    window: &WindowSpec<T>,
) -> Result<SampledField<T>> {
    if f.dim() != 2 {
        return Err(Error::invalid("symplectic stft expects a two-axis field"));
    }
    let w = window.materialize(f.axes())?;
    let (a0, a1) = (f.axes()[0].clone(), f.axes()[1].clone());
    let (n0, n1) = (a0.n, a1.n);
    let out_axes = vec![a0.clone(), a1.dual(), a1.clone(), a0.dual()];
    let slabs = all_windowed_spectra(f, &w, true)?;
    let zero = Complex::new(T::zero(), T::zero());
    let mut out = vec![zero; n0 * n1 * n1 * n0];
    for i0 in 0..n0 {
        for i1 in 0..n1 {
            let slab = &slabs[i0 * n1 + i1]; // slab axes: (t: n1, ν: n0)
            for kt in 0..n1 {
                let dst = ((i0 * n1 + kt) * n1 + i1) * n0;
                out[dst..dst + n0].copy_from_slice(&slab[kt * n0..(kt + 1) * n0]);
            }
        }
    }
    SampledField::new(out_axes, out)
}

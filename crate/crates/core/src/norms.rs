//! Mixed Lebesgue norms with explicit integration order, weights, and the
//! modulation-type norms built on short-time Fourier transforms.
//!
//! A mixed norm is an iterated reduction: the innermost axis is reduced
//! first via (Σ|·|^p Δ)^{1/p}; exponent ∞ reduces as a plain maximum (no Δ
//! factor). Weights multiply |F| pointwise before the innermost reduction.
//!
//! Modulation norms are mixed norms of short-time transforms:
//!
//! * `modulation_norm` — chain ((t,p),(ν,q)) on the 1-axis transform,
//! * `modulation_norm_tilde` — chain ((ν,q),(t,p)), frequency innermost,
//! * `phase_modulation_norm` — chain ((x,p₁),(t,p₂),(ξ,q₁),(ν,q₂)) on the
//!   symplectic transform of a phase-space field,
//! * `phase_m_norm` — chain ((x,p₁),(ξ,q₁),(ν,q₂),(t,p₂)) on the plain
//!   2-axis transform.
//!
//! The four-axis norms stream over window shifts when the full transform
//! would not fit comfortably in memory, reducing axes incrementally; the
//! streamed and materialized paths agree to rounding.

use num_complex::Complex;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::grid::{for_each_line, phase_space_axes, Axis, GridSpec, SampledField};
use crate::operators::{apply_kn, SymbolField};
use crate::rng::splitmix64;
use crate::scalar::Scalar;
use crate::transforms::{fourier, inverse_fourier, shifted_product, stft, stft_2d,
    symplectic_stft, WindowSpec};

/// Four-axis transforms with at most this many samples are materialized;
/// larger ones use the streaming reduction.
const MATERIALIZE_CAP: usize = 8_388_608;

// ---------------------------------------------------------------------------
// Exponent handling
// ---------------------------------------------------------------------------

/// Classified Lebesgue exponent, with fast paths for 1, 2, and ∞.
#[derive(Debug, Clone, Copy)]
enum PowKind<T> {
    One,
    Two,
    Inf,
    General(T),
}

fn pow_kind<T: Scalar>(p: T) -> Result<PowKind<T>> {
    if p.is_nan() || p < T::one() {
        return Err(Error::invalid(format!("exponent {p} must lie in [1, ∞]")));
    }
    Ok(if p == T::infinity() {
        PowKind::Inf
    } else if p == T::one() {
        PowKind::One
    } else if p == T::one() + T::one() {
        PowKind::Two
    } else {
        PowKind::General(p)
    })
}

#[inline]
fn accum<T: Scalar>(acc: &mut T, v: T, kind: PowKind<T>) {
    match kind {
        PowKind::One => *acc += v,
        PowKind::Two => *acc += v * v,
        PowKind::Inf => {
            if v > *acc {
                *acc = v;
            }
        }
        PowKind::General(p) => *acc += v.powf(p),
    }
}

#[inline]
fn finish<T: Scalar>(acc: T, kind: PowKind<T>, delta: T) -> T {
    match kind {
        PowKind::One => acc * delta,
        PowKind::Two => (acc * delta).sqrt(),
        PowKind::Inf => acc,
        PowKind::General(p) => (acc * delta).powf(p.recip()),
    }
}

/// Ordered reduction plan: (axis label, exponent) pairs, innermost first.
#[derive(Debug, Clone, PartialEq)]
pub struct ExponentChain<T> {
    steps: Vec<(String, T)>,
}

impl<T: Scalar> ExponentChain<T> {
    /// Build a chain, validating exponents and label uniqueness.
    pub fn new(steps: Vec<(String, T)>) -> Result<Self> {
        if steps.is_empty() {
            return Err(Error::invalid("an exponent chain needs at least one step"));
        }
        for (_, p) in &steps {
            pow_kind(*p)?;
        }
        let mut labels: Vec<&str> = steps.iter().map(|(l, _)| l.as_str()).collect();
        labels.sort_unstable();
        if labels.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::invalid("chain labels must be pairwise distinct"));
        }
        Ok(ExponentChain { steps })
    }

    /// Convenience constructor from borrowed labels.
    pub fn of(steps: &[(&str, T)]) -> Result<Self> {
        Self::new(steps.iter().map(|(l, p)| ((*l).to_string(), *p)).collect())
    }

    /// The steps, innermost first.
    pub fn steps(&self) -> &[(String, T)] {
        &self.steps
    }
}

// ---------------------------------------------------------------------------
// Weights
// ---------------------------------------------------------------------------

/// How a weight was constructed.
#[derive(Debug, Clone, PartialEq)]
pub enum WeightKind<T> {
    /// Identically 1.
    Unit,
    /// (1 + |ξ|²)^{s/2} on phase space.
    PolynomialS(T),
    /// Four-axis product w₁(x−t,ξ)·w₂(x,ν+ξ).
    Product,
    /// Arbitrary user samples.
    Explicit,
}

/// A nonnegative real weight field, optionally carrying the companion
/// weight v and constant C of a moderateness bound w(z+y) ≤ C·w(z)·v(y).
#[derive(Debug, Clone)]
pub struct Weight<T> {
    values: SampledField<T>,
    pub kind: WeightKind<T>,
    pub moderate_metadata: Option<(Box<Weight<T>>, T)>,
}

impl<T: Scalar> Weight<T> {
    /// Wrap samples as a weight; every sample must be real and ≥ 0.
    pub fn new(values: SampledField<T>, kind: WeightKind<T>) -> Result<Self> {
        if values
            .values()
            .iter()
            .any(|v| v.im != T::zero() || !(v.re >= T::zero()))
        {
            return Err(Error::invalid("weights must be real and nonnegative"));
        }
        Ok(Weight { values, kind, moderate_metadata: None })
    }

    /// The weight identically 1 on the given axes.
    pub fn unit(axes: Vec<Axis<T>>) -> Result<Self> {
        let one = Complex::new(T::one(), T::zero());
        Self::new(
            SampledField::from_fn(axes, |_| one)?,
            WeightKind::Unit,
        )
    }

    /// Arbitrary user samples.
    pub fn explicit(values: SampledField<T>) -> Result<Self> {
        Self::new(values, WeightKind::Explicit)
    }

    /// Attach a moderateness companion (v, C).
    pub fn with_moderate_companion(mut self, v: Weight<T>, c: T) -> Self {
        self.moderate_metadata = Some((Box::new(v), c));
        self
    }

    /// The sampled weight values.
    pub fn values(&self) -> &SampledField<T> {
        &self.values
    }
}

/// The polynomial weight w_s(x,ξ) = (1 + |ξ|²)^{s/2} on the phase-space
/// axes of a 1-axis grid.
pub fn weight_ws<T: Scalar>(s: T, grid: &GridSpec<T>) -> Result<Weight<T>> {
    let axes = phase_space_axes(grid)?;
    let half = T::of_f64(0.5);
    let field = SampledField::from_fn(axes, |p| {
        Complex::new((T::one() + p[1] * p[1]).powf(s * half), T::zero())
    })?;
    Weight::new(field, WeightKind::PolynomialS(s))
}

/// The four-axis weight w(x,t,ξ,ν) = w₁(x−t,ξ)·w₂(x,ν+ξ), with periodic
/// index arithmetic, on the axes of the symplectic short-time transform.
pub fn sheared_product_weight<T: Scalar>(w1: &Weight<T>, w2: &Weight<T>) -> Result<Weight<T>> {
    let f1 = w1.values();
    let f2 = w2.values();
    f1.check_same_axes(f2)?;
    if f1.dim() != 2 {
        return Err(Error::invalid("the product weight needs two-axis factors"));
    }
    let (a0, a1) = (&f1.axes()[0], &f1.axes()[1]);
    if !a1.same_geometry(&a0.dual()) {
        return Err(Error::mismatch(
            "product weight factors must live on phase-space axes (dual grids)",
        ));
    }
    let (n0, n1) = (a0.n, a1.n);
    let (h0, h1) = (n0 / 2, n1 / 2);
    let axes = vec![a0.clone(), a1.dual(), a1.clone(), a0.dual()];
    let v1 = f1.values();
    let v2 = f2.values();
    let mut out = Vec::with_capacity(n0 * n0 * n1 * n1);
    for ix in 0..n0 {
        for it in 0..n0 {
            let xm = (ix + n0 + h0 - it) % n0; // index of x − t
            for ixi in 0..n1 {
                let a = v1[xm * n1 + ixi];
                for inu in 0..n1 {
                    let np = (inu + ixi + n1 - h1) % n1; // index of ν + ξ
                    out.push(a * v2[ix * n1 + np]);
                }
            }
        }
    }
    let mut w = Weight::new(SampledField::new(axes, out)?, WeightKind::Product)?;
    w.moderate_metadata = None;
    Ok(w)
}

/// One sampled counterexample to a moderateness bound.
#[derive(Debug, Clone)]
pub struct ModerateViolation<T> {
    pub base_index: Vec<usize>,
    pub shift_index: Vec<usize>,
    pub ratio: T,
}

/// Result of a randomized moderateness check.
#[derive(Debug, Clone)]
pub struct ModerateReport<T> {
    pub pass: bool,
    pub worst_ratio: T,
    pub violations: Vec<ModerateViolation<T>>,
    pub trials: usize,
}

/// Sample `trials` seeded grid pairs (z, y) with z+y still on the grid (no
/// wraparound) and test w(z+y) ≤ C·w(z)·v(y); reports every violation and
/// the worst observed ratio.
pub fn is_moderate_check<T: Scalar>(
    w: &Weight<T>,
    v: &Weight<T>,
    c: T,
    trials: usize,
    seed: u64,
) -> Result<ModerateReport<T>> {
    w.values().check_same_axes(v.values())?;
    let shape = w.values().shape();
    let strides = w.values().strides();
    let wv = w.values().values();
    let vv = v.values().values();
    let mut worst = T::zero();
    let mut violations = Vec::new();
    let mut state = splitmix64(seed);
    for _ in 0..trials {
        // Rejection-sample an in-grid pair.
        let (bi, si, sum_flat) = loop {
            let mut bi = Vec::with_capacity(shape.len());
            let mut si = Vec::with_capacity(shape.len());
            let mut sum_flat = 0usize;
            let mut ok = true;
            for (k, &n) in shape.iter().enumerate() {
                state = splitmix64(state);
                let i = (state % n as u64) as usize;
                state = splitmix64(state);
                let j = (state % n as u64) as usize;
                let s = i + j;
                if s < n / 2 || s >= n + n / 2 {
                    ok = false;
                    break;
                }
                sum_flat += (s - n / 2) * strides[k];
                bi.push(i);
                si.push(j);
            }
            if ok {
                break (bi, si, sum_flat);
            }
        };
        let base_flat: usize = bi.iter().zip(&strides).map(|(i, s)| i * s).sum();
        let shift_flat: usize = si.iter().zip(&strides).map(|(i, s)| i * s).sum();
        let num = wv[sum_flat].re;
        let den = c * wv[base_flat].re * vv[shift_flat].re;
        let ratio = if den > T::zero() {
            num / den
        } else if num > T::zero() {
            T::infinity()
        } else {
            T::zero()
        };
        if ratio > worst {
            worst = ratio;
        }
        if ratio > T::one() + T::of_f64(1e-9) {
            violations.push(ModerateViolation { base_index: bi, shift_index: si, ratio });
        }
    }
    Ok(ModerateReport { pass: violations.is_empty(), worst_ratio: worst, violations, trials })
}

// ---------------------------------------------------------------------------
// Mixed norms
// ---------------------------------------------------------------------------

fn reduce_axis<T: Scalar>(
    vals: &[T],
    shape: &[usize],
    axis: usize,
    kind: PowKind<T>,
    delta: T,
) -> Vec<T> {
    let n = shape[axis];
    let mut out = Vec::with_capacity(vals.len() / n);
    for_each_line(shape, axis, |base, stride| {
        let mut acc = T::zero();
        for j in 0..n {
            accum(&mut acc, vals[base + j * stride], kind);
        }
        out.push(finish(acc, kind, delta));
    });
    out
}

/// Iterated mixed norm of a field, innermost chain step first; an optional
/// weight multiplies |F| pointwise before any reduction.
pub fn mixed_norm<T: Scalar>(
    f: &SampledField<T>,
    chain: &ExponentChain<T>,
    weight: Option<&Weight<T>>,
) -> Result<T> {
    if chain.steps().len() != f.dim() {
        return Err(Error::invalid(format!(
            "chain has {} steps but the field has {} axes",
            chain.steps().len(),
            f.dim()
        )));
    }
    let mut mags: Vec<T> = f.values().iter().map(|v| v.norm()).collect();
    if let Some(w) = weight {
        f.check_same_axes(w.values())?;
        for (m, wv) in mags.iter_mut().zip(w.values().values()) {
            *m *= wv.re;
        }
    }
    let mut axes: Vec<Axis<T>> = f.axes().to_vec();
    for (label, p) in chain.steps() {
        let k = axes
            .iter()
            .position(|a| &a.label == label)
            .ok_or_else(|| Error::invalid(format!("chain names no axis '{label}'")))?;
        let shape: Vec<usize> = axes.iter().map(|a| a.n).collect();
        mags = reduce_axis(&mags, &shape, k, pow_kind(*p)?, axes[k].spacing());
        axes.remove(k);
    }
    Ok(mags[0])
}

// ---------------------------------------------------------------------------
// Modulation-norm specifications
// ---------------------------------------------------------------------------

/// Which modulation-type norm a [`ModNormSpec`] describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModVariant {
    /// Chain ((t,p),(ν,q)) on the 1-axis transform.
    Euclidean,
    /// Chain ((ν,q),(t,p)) — frequency innermost.
    Tilde,
    /// Chain ((x,p₁),(t,p₂),(ξ,q₁),(ν,q₂)) on the symplectic transform.
    PhaseTilde,
    /// Chain ((x,p₁),(ξ,q₁),(ν,q₂),(t,p₂)) on the plain 2-axis transform.
    PhasePlain,
}

/// Exponents, window, and optional weight for a modulation-type norm.
#[derive(Debug, Clone)]
pub struct ModNormSpec<T> {
    pub exponents: Vec<T>,
    pub window: WindowSpec<T>,
    pub weight: Option<Weight<T>>,
    pub variant: ModVariant,
}

impl<T: Scalar> ModNormSpec<T> {
    fn build(exponents: Vec<T>, window: WindowSpec<T>, variant: ModVariant) -> Result<Self> {
        for p in &exponents {
            pow_kind(*p)?;
        }
        Ok(ModNormSpec { exponents, window, weight: None, variant })
    }

    /// M^{pq}: chain ((t,p),(ν,q)).
    pub fn euclidean(p: T, q: T, window: WindowSpec<T>) -> Result<Self> {
        Self::build(vec![p, q], window, ModVariant::Euclidean)
    }

    /// Frequency-innermost variant: chain ((ν,q),(t,p)).
    pub fn tilde(p: T, q: T, window: WindowSpec<T>) -> Result<Self> {
        Self::build(vec![p, q], window, ModVariant::Tilde)
    }

    /// Phase-space norm on the symplectic transform:
    /// chain ((x,p₁),(t,p₂),(ξ,q₁),(ν,q₂)).
    pub fn phase_tilde(p1: T, p2: T, q1: T, q2: T, window: WindowSpec<T>) -> Result<Self> {
        Self::build(vec![p1, p2, q1, q2], window, ModVariant::PhaseTilde)
    }

    /// Phase-space norm on the plain 2-axis transform:
    /// chain ((x,p₁),(ξ,q₁),(ν,q₂),(t,p₂)).
    pub fn phase_plain(p1: T, q1: T, q2: T, p2: T, window: WindowSpec<T>) -> Result<Self> {
        Self::build(vec![p1, q1, q2, p2], window, ModVariant::PhasePlain)
    }

    /// Attach a weight on the transform axes.
    pub fn with_weight(mut self, w: Weight<T>) -> Self {
        self.weight = Some(w);
        self
    }

    fn expect(&self, variant: ModVariant, what: &str) -> Result<()> {
        if self.variant != variant {
            return Err(Error::invalid(format!(
                "{what} requires the {variant:?} spec variant, got {:?}",
                self.variant
            )));
        }
        Ok(())
    }
}

/// Positional chain over a transform's output axes.
fn positional_chain<T: Scalar>(axes: &[Axis<T>], exps: &[T]) -> Result<ExponentChain<T>> {
    ExponentChain::new(
        axes.iter()
            .zip(exps)
            .map(|(a, p)| (a.label.clone(), *p))
            .collect(),
    )
}

/// Modulation norm ‖f‖ = mixed norm of the short-time transform with chain
/// ((t,p),(ν,q)) (shift axes innermost, each at p, then frequency axes
/// at q). The `spec` argument must use the `Euclidean` variant.
pub fn modulation_norm<T: Scalar>(f: &SampledField<T>, spec: &ModNormSpec<T>) -> Result<T> {
    spec.expect(ModVariant::Euclidean, "modulation_norm")?;
    let v = stft(f, &spec.window)?;
    let d = f.dim();
    let (p, q) = (spec.exponents[0], spec.exponents[1]);
    let exps: Vec<T> = (0..d).map(|_| p).chain((0..d).map(|_| q)).collect();
    let chain = positional_chain(v.axes(), &exps)?;
    mixed_norm(&v, &chain, spec.weight.as_ref())
}

/// Frequency-innermost modulation norm: chain ((ν,q),(t,p)) on the
/// short-time transform.
pub fn modulation_norm_tilde<T: Scalar>(
    f: &SampledField<T>,
    p: T,
    q: T,
    window: &WindowSpec<T>,
) -> Result<T> {
    let v = stft(f, window)?;
    let d = f.dim();
    let steps: Vec<(String, T)> = v.axes()[d..]
        .iter()
        .map(|a| (a.label.clone(), q))
        .chain(v.axes()[..d].iter().map(|a| (a.label.clone(), p)))
        .collect();
    mixed_norm(&v, &ExponentChain::new(steps)?, None)
}

/// Magnitudes of one windowed-spectrum slab, in the plain-transform layout
/// (frequency axes in input-axis order).
fn slab_mags<T: Scalar>(
    f: &SampledField<T>,
    w: &SampledField<T>,
    i0: usize,
    i1: usize,
) -> Result<Vec<T>> {
    let (n0, n1) = (f.axes()[0].n, f.axes()[1].n);
    let steps = [
        i0 as isize - (n0 / 2) as isize,
        i1 as isize - (n1 / 2) as isize,
    ];
    let g = fourier(&shifted_product(f, w, &steps)?)?;
    Ok(g.values().iter().map(|v| v.norm()).collect())
}

/// Streaming evaluation of four-axis phase-space norms: each entry of
/// `specs` is (frequency-inner?, exponents in the variant's order). All
/// specs share one sweep over window shifts.
///
/// Works on the plain-transform slab layout; since every axis is reduced in
/// full, the index rotation distinguishing the symplectic transform does not
/// change any norm value.
fn streamed_phase_norms<T: Scalar>(
    f: &SampledField<T>,
    w: &SampledField<T>,
    specs: &[(bool, [T; 4])],
) -> Result<Vec<T>> {
    let (a0, a1) = (&f.axes()[0], &f.axes()[1]);
    let (n0, n1) = (a0.n, a1.n);
    let slab_len = n0 * n1; // slab layout: [kν * n1 + kt]
    let (dx, dxi) = (a0.spacing(), a1.spacing());
    let (dnu, dt) = (a0.extent.recip(), a1.extent.recip());

    struct State<T> {
        tilde: bool,
        kinds: [PowKind<T>; 4],
        /// tilde: rows[i1*n0 + kν]; plain: running acc over i1 at [kν*n1+kt].
        store: Vec<T>,
    }
    let mut states: Vec<State<T>> = specs
        .iter()
        .map(|(tilde, e)| {
            Ok(State {
                tilde: *tilde,
                kinds: [
                    pow_kind(e[0])?,
                    pow_kind(e[1])?,
                    pow_kind(e[2])?,
                    pow_kind(e[3])?,
                ],
                store: vec![T::zero(); if *tilde { n1 * n0 } else { slab_len }],
            })
        })
        .collect::<Result<_>>()?;

    let mut accx: Vec<Vec<T>> = vec![vec![T::zero(); slab_len]; specs.len()];
    let batch = (4_000_000 / slab_len.max(1)).max(1);
    for i1 in 0..n1 {
        for a in &mut accx {
            a.iter_mut().for_each(|v| *v = T::zero());
        }
        let mut i0 = 0;
        while i0 < n0 {
            let hi = (i0 + batch).min(n0);
            let mags: Vec<Vec<T>> = (i0..hi)
                .into_par_iter()
                .map(|i| slab_mags(f, w, i, i1))
                .collect::<Result<_>>()?;
            for m in &mags {
                for (acc, st) in accx.iter_mut().zip(&states) {
                    let kind = st.kinds[0];
                    for (a, &v) in acc.iter_mut().zip(m) {
                        accum(a, v, kind);
                    }
                }
            }
            i0 = hi;
        }
        for (acc, st) in accx.iter().zip(states.iter_mut()) {
            if st.tilde {
                // Finish x, then reduce t (contiguous) at p₂ for this ξ-shift.
                for kv in 0..n0 {
                    let mut a = T::zero();
                    for kt in 0..n1 {
                        let bx = finish(acc[kv * n1 + kt], st.kinds[0], dx);
                        accum(&mut a, bx, st.kinds[1]);
                    }
                    st.store[i1 * n0 + kv] = finish(a, st.kinds[1], dt);
                }
            } else {
                // Finish x, accumulate the ξ-reduction at q₁ in place.
                for (slot, &a) in st.store.iter_mut().zip(acc) {
                    let bx = finish(a, st.kinds[0], dx);
                    accum(slot, bx, st.kinds[1]);
                }
            }
        }
    }
    Ok(states
        .iter()
        .map(|st| {
            if st.tilde {
                // Reduce ξ-shift at q₁, then ν at q₂.
                let mut outer = T::zero();
                for kv in 0..n0 {
                    let mut a = T::zero();
                    for i1 in 0..n1 {
                        accum(&mut a, st.store[i1 * n0 + kv], st.kinds[2]);
                    }
                    accum(&mut outer, finish(a, st.kinds[2], dxi), st.kinds[3]);
                }
                finish(outer, st.kinds[3], dnu)
            } else {
                // Finish ξ at q₁, reduce ν at q₂ per t, then t at p₂.
                let mut outer = T::zero();
                for kt in 0..n1 {
                    let mut a = T::zero();
                    for kv in 0..n0 {
                        let c = finish(st.store[kv * n1 + kt], st.kinds[1], dxi);
                        accum(&mut a, c, st.kinds[2]);
                    }
                    accum(&mut outer, finish(a, st.kinds[2], dnu), st.kinds[3]);
                }
                finish(outer, st.kinds[3], dt)
            }
        })
        .collect())
}

fn phase_norm_dispatch<T: Scalar>(
    f: &SampledField<T>,
    spec: &ModNormSpec<T>,
    tilde: bool,
) -> Result<T> {
    if f.dim() != 2 {
        return Err(Error::invalid("phase-space norms expect a two-axis field"));
    }
    let n4 = f.len() * f.len();
    if spec.weight.is_some() || n4 <= MATERIALIZE_CAP {
        if n4 > MATERIALIZE_CAP {
            return Err(Error::Unsupported(format!(
                "weighted four-axis norms need at most {MATERIALIZE_CAP} transform samples, got {n4}"
            )));
        }
        let v = if tilde {
            symplectic_stft(f, &spec.window)?
        } else {
            stft_2d(f, &spec.window)?
        };
        let chain = positional_chain(v.axes(), &spec.exponents)?;
        mixed_norm(&v, &chain, spec.weight.as_ref())
    } else {
        let w = spec.window.materialize(f.axes())?;
        let e = [
            spec.exponents[0],
            spec.exponents[1],
            spec.exponents[2],
            spec.exponents[3],
        ];
        Ok(streamed_phase_norms(f, &w, &[(tilde, e)])?[0])
    }
}

/// Four-exponent norm of a phase-space field via the symplectic short-time
/// transform: chain ((x,p₁),(t,p₂),(ξ,q₁),(ν,q₂)). Spec variant must be
/// `PhaseTilde`.
pub fn phase_modulation_norm<T: Scalar>(
    f: &SampledField<T>,
    spec: &ModNormSpec<T>,
) -> Result<T> {
    spec.expect(ModVariant::PhaseTilde, "phase_modulation_norm")?;
    phase_norm_dispatch(f, spec, true)
}

/// Four-exponent norm of a phase-space field via the plain 2-axis
/// transform: chain ((x,p₁),(ξ,q₁),(ν,q₂),(t,p₂)). Spec variant must be
/// `PhasePlain`.
pub fn phase_m_norm<T: Scalar>(f: &SampledField<T>, spec: &ModNormSpec<T>) -> Result<T> {
    spec.expect(ModVariant::PhasePlain, "phase_m_norm")?;
    phase_norm_dispatch(f, spec, false)
}

/// Several `PhaseTilde` norms of the same field sharing one streamed sweep
/// over window shifts; exponent sets are ((p₁,p₂,q₁,q₂)) as in
/// [`phase_modulation_norm`]. Unweighted.
pub fn phase_modulation_norms_batch<T: Scalar>(
    f: &SampledField<T>,
    window: &WindowSpec<T>,
    exponent_sets: &[[T; 4]],
) -> Result<Vec<T>> {
    if f.dim() != 2 {
        return Err(Error::invalid("phase-space norms expect a two-axis field"));
    }
    let w = window.materialize(f.axes())?;
    let specs: Vec<(bool, [T; 4])> = exponent_sets.iter().map(|e| (true, *e)).collect();
    streamed_phase_norms(f, &w, &specs)
}

/// ‖f‖ = L^p norm of the inverse Fourier transform of f.
pub fn fl_norm<T: Scalar>(f: &SampledField<T>, p: T) -> Result<T> {
    let g = inverse_fourier(f)?;
    let exps: Vec<T> = vec![p; g.dim()];
    let chain = positional_chain(g.axes(), &exps)?;
    mixed_norm(&g, &chain, None)
}

/// Sobolev-type norm: L^p norm of the Fourier multiplier (1+|ξ|²)^{s/2}
/// applied through the operator calculus (1-axis fields).
pub fn sobolev_norm<T: Scalar>(f: &SampledField<T>, p: T, s: T) -> Result<T> {
    if f.dim() != 1 {
        return Err(Error::invalid("sobolev_norm expects a one-axis field"));
    }
    let ax = &f.axes()[0];
    let grid = GridSpec::new(1, ax.n, ax.extent)?;
    let half = T::of_f64(0.5);
    let sym = SymbolField::direct(SampledField::from_fn(phase_space_axes(&grid)?, |pt| {
        Complex::new((T::one() + pt[1] * pt[1]).powf(s * half), T::zero())
    })?)?;
    let tf = apply_kn(&sym, f)?;
    mixed_norm(&tf, &ExponentChain::of(&[(ax.label.as_str(), p)])?, None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{make_grid, sample};
    use crate::rng::uniform_complex_values;
    use crate::transforms::{modulate, translate};
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    const INF: f64 = f64::INFINITY;

    #[test]
    fn box_indicator_has_unit_mixed_norm() {
        // Indicator of [0,1]² has unit mass, so every (p,q) gives 1.
        let g = make_grid(2, 16, 4.0).unwrap();
        let f = sample(&g, &["x", "xi"], |p| {
            if (0.0..1.0).contains(&p[0]) && (0.0..1.0).contains(&p[1]) {
                c(1.0, 0.0)
            } else {
                c(0.0, 0.0)
            }
        })
        .unwrap();
        for (p, q) in [(1.0, 1.0), (2.0, 3.0), (INF, 1.0), (INF, INF), (1.5, INF)] {
            let chain = ExponentChain::of(&[("x", p), ("xi", q)]).unwrap();
            let v = mixed_norm(&f, &chain, None).unwrap();
            assert!((v - 1.0).abs() < 1e-12, "(p,q)=({p},{q}) gave {v}");
        }
    }

    #[test]
    fn gaussian_lp_closed_form() {
        // ‖e^{−πλx²}‖_{L^p} = (λp)^{−1/(2p)}.
        let g = make_grid(1, 256, 16.0).unwrap();
        let lam = 2.0;
        let f = sample(&g, &["x"], |p| c((-PI * lam * p[0] * p[0]).exp(), 0.0)).unwrap();
        for p in [1.0, 2.0, 4.0] {
            let got = mixed_norm(&f, &ExponentChain::of(&[("x", p)]).unwrap(), None).unwrap();
            let expect = (lam * p).powf(-1.0 / (2.0 * p));
            assert!((got - expect).abs() < 1e-8, "p={p}: {got} vs {expect}");
        }
        // Sup norm: the peak value 1.
        let sup = mixed_norm(&f, &ExponentChain::of(&[("x", INF)]).unwrap(), None).unwrap();
        assert_eq!(sup, 1.0);
    }

    #[test]
    fn mixed_norm_validates_chains() {
        let g = make_grid(2, 8, 4.0).unwrap();
        let f = sample(&g, &["x", "xi"], |_| c(1.0, 0.0)).unwrap();
        // Uncovered axis.
        assert!(mixed_norm(&f, &ExponentChain::of(&[("x", 2.0)]).unwrap(), None).is_err());
        // Unknown label.
        let chain = ExponentChain::of(&[("x", 2.0), ("zz", 2.0)]).unwrap();
        assert!(mixed_norm(&f, &chain, None).is_err());
        // Duplicate labels rejected at construction.
        assert!(ExponentChain::of(&[("x", 2.0), ("x", 2.0)]).is_err());
        // Sub-unit exponent rejected.
        assert!(ExponentChain::of(&[("x", 0.5)]).is_err());
    }

    #[test]
    fn homogeneity_is_exact() {
        let g = make_grid(2, 8, 4.0).unwrap();
        let f = SampledField::new(
            g.axes(&["x", "xi"]).unwrap(),
            uniform_complex_values(3, 64),
        )
        .unwrap();
        let chain = ExponentChain::of(&[("xi", 3.0), ("x", 1.0)]).unwrap();
        let base = mixed_norm(&f, &chain, None).unwrap();
        let scaled = mixed_norm(&f.clone().scale(c(-2.5, 0.0)), &chain, None).unwrap();
        assert!((scaled - 2.5 * base).abs() < 1e-12 * base);
    }

    #[test]
    fn inner_small_exponent_never_exceeds_swapped_order() {
        // The two-point identity matrix: chain ((a,1),(b,∞)) = 1 while the
        // swapped order ((b,∞),(a,1)) = 2 — reducing the smaller exponent
        // first is the smaller value.
        let axes = vec![
            Axis::new("a", 2, 2.0).unwrap(),
            Axis::new("b", 2, 2.0).unwrap(),
        ];
        let eye = SampledField::new(axes, vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)])
            .unwrap();
        let small_inner =
            mixed_norm(&eye, &ExponentChain::of(&[("a", 1.0), ("b", INF)]).unwrap(), None)
                .unwrap();
        let large_inner =
            mixed_norm(&eye, &ExponentChain::of(&[("b", INF), ("a", 1.0)]).unwrap(), None)
                .unwrap();
        assert_eq!(small_inner, 1.0);
        assert_eq!(large_inner, 2.0);
    }

    #[test]
    fn weights_scale_reductions() {
        let g = make_grid(1, 16, 4.0f64).unwrap();
        let f = sample(&g, &["x"], |p| c(p[0].cos(), p[0].sin())).unwrap();
        let two = Weight::explicit(sample(&g, &["x"], |_| c(2.0, 0.0)).unwrap()).unwrap();
        let chain = ExponentChain::of(&[("x", 3.0)]).unwrap();
        let unweighted = mixed_norm(&f, &chain, None).unwrap();
        let weighted = mixed_norm(&f, &chain, Some(&two)).unwrap();
        assert!((weighted - 2.0 * unweighted).abs() < 1e-12);
        // Negative or complex weights are rejected.
        assert!(Weight::explicit(sample(&g, &["x"], |_| c(-1.0, 0.0)).unwrap()).is_err());
        assert!(Weight::explicit(sample(&g, &["x"], |_| c(1.0, 0.5)).unwrap()).is_err());
    }

    #[test]
    fn polynomial_weight_formula() {
        let g = make_grid(1, 8, 2.0f64).unwrap();
        let w = weight_ws(2.0, &g).unwrap();
        assert!(matches!(w.kind, WeightKind::PolynomialS(_)));
        let vals = w.values();
        let (k, xi_axis) = vals.axis("xi").unwrap();
        assert_eq!(k, 1);
        let xi = xi_axis.coords();
        let n = 8;
        for j in 0..n {
            for m in 0..n {
                let expect = 1.0 + xi[m] * xi[m]; // s = 2 → exponent 1
                assert!((vals.values()[j * n + m].re - expect).abs() < 1e-12);
            }
        }
        // Spot value: ξ index 2 is (2−4)/2 = −1, so the weight is 2.
        assert!((vals.values()[2].re - 2.0).abs() < 1e-12);
        // s = 0 → unit.
        let w0 = weight_ws(0.0, &g).unwrap();
        assert!(w0.values().values().iter().all(|v| v.re == 1.0));
    }

    #[test]
    fn product_weight_formula() {
        let g = make_grid(1, 8, 8.0f64).unwrap();
        let w1 = weight_ws(2.0, &g).unwrap();
        let w2 = weight_ws(1.0, &g).unwrap();
        let w = sheared_product_weight(&w1, &w2).unwrap();
        let labels: Vec<&str> = w.values().axes().iter().map(|a| a.label.as_str()).collect();
        assert_eq!(labels, ["x", "t", "xi", "nu"]);
        // Spot-check the index arithmetic at a generic 4-index.
        let n = 8;
        let (ix, it, ixi, inu) = (5, 2, 6, 3);
        let h = n / 2;
        let xm = (ix + n + h - it) % n;
        let np = (inu + ixi + n - h) % n;
        let got = w.values().values()[((ix * n + it) * n + ixi) * n + inu].re;
        let expect =
            w1.values().values()[xm * n + ixi].re * w2.values().values()[ix * n + np].re;
        assert!((got - expect).abs() < 1e-12);
        // Unit factors → unit product.
        let axes = crate::grid::phase_space_axes(&g).unwrap();
        let u = Weight::unit(axes).unwrap();
        let uu = sheared_product_weight(&u, &u).unwrap();
        assert!(uu.values().values().iter().all(|v| v.re == 1.0));
    }

    #[test]
    fn moderateness_checks() {
        let g = make_grid(1, 32, 8.0f64).unwrap();
        let axes = crate::grid::phase_space_axes(&g).unwrap();
        // Unit weight is moderate with itself and C = 1.
        let u = Weight::unit(axes.clone()).unwrap();
        let rep = is_moderate_check(&u, &u, 1.0, 200, 9).unwrap();
        assert!(rep.pass && rep.worst_ratio <= 1.0 + 1e-12);
        // Polynomial weight: w_s(z+y) ≤ 2^{|s|/2}·w_s(z)·w_{|s|}(y).
        let s = 2.0f64;
        let w = weight_ws(s, &g).unwrap();
        let v = weight_ws(s.abs(), &g).unwrap();
        let rep = is_moderate_check(&w, &v, 2.0f64.powf(s.abs() / 2.0), 500, 11).unwrap();
        assert!(rep.pass, "worst ratio {}", rep.worst_ratio);
        // Negative order too.
        let wm = weight_ws(-s, &g).unwrap();
        let rep = is_moderate_check(&wm, &v, 2.0f64.powf(s / 2.0), 500, 12).unwrap();
        assert!(rep.pass, "worst ratio {}", rep.worst_ratio);
        // Super-exponential growth is not moderated by a polynomial.
        let big = Weight::explicit(
            SampledField::from_fn(axes, |p| c((2.0 * p[1] * p[1]).exp(), 0.0)).unwrap(),
        )
        .unwrap();
        let rep = is_moderate_check(&big, &v, 10.0, 500, 13).unwrap();
        assert!(!rep.pass, "worst ratio {}", rep.worst_ratio);
        assert!(!rep.violations.is_empty());
    }

    #[test]
    fn modulation_norm_basics() {
        let g = make_grid(1, 64, 8.0).unwrap();
        let z = sample(&g, &["x"], |_| c(0.0, 0.0)).unwrap();
        let spec = ModNormSpec::euclidean(2.0, 4.0, WindowSpec::standard_gaussian()).unwrap();
        assert_eq!(modulation_norm(&z, &spec).unwrap(), 0.0);
        // Variant mismatch is rejected.
        let tspec = ModNormSpec::tilde(2.0, 4.0, WindowSpec::standard_gaussian()).unwrap();
        let f = sample(&g, &["x"], |p| c((-PI * p[0] * p[0]).exp(), 0.0)).unwrap();
        assert!(modulation_norm(&f, &tspec).is_err());
    }

    #[test]
    fn tilde_norm_equals_plain_norm_of_transform() {
        // ‖f‖ with chain ((ν,q),(t,p)) equals the ((t,q),(ν,p))-norm of f̂
        // taken with the transformed window.
        let g = make_grid(1, 128, 16.0).unwrap();
        let phi = sample(&g, &["x"], |p| c((-PI * p[0] * p[0] / 2.0).exp(), 0.0)).unwrap();
        let f = modulate(
            &translate(
                &sample(&g, &["x"], |p| c((-PI * p[0] * p[0]).exp(), 0.0)).unwrap(),
                &[0.5],
            )
            .unwrap(),
            &[1.0],
        )
        .unwrap();
        let (p, q) = (1.5, 3.0);
        let lhs = modulation_norm_tilde(&f, p, q, &WindowSpec::explicit(phi.clone())).unwrap();
        let fhat = fourier(&f).unwrap();
        let phihat = fourier(&phi).unwrap();
        let spec = ModNormSpec::euclidean(q, p, WindowSpec::explicit(phihat)).unwrap();
        let rhs = modulation_norm(&fhat, &spec).unwrap();
        assert!((lhs - rhs).abs() < 1e-6 * rhs, "{lhs} vs {rhs}");
        // Equal exponents: order of reduction is immaterial.
        let pe = ModNormSpec::euclidean(2.5, 2.5, WindowSpec::standard_gaussian()).unwrap();
        let a = modulation_norm(&f, &pe).unwrap();
        let b = modulation_norm_tilde(&f, 2.5, 2.5, &WindowSpec::standard_gaussian()).unwrap();
        assert!((a - b).abs() < 1e-12 * a);
    }

    #[test]
    fn phase_norm_l2_endpoint_is_exact() {
        // All exponents 2: the norm is ‖σ‖_{L²}·‖W‖_{L²} by the transform's
        // isometry, exactly on the grid.
        let g = make_grid(1, 32, 4.0).unwrap();
        let axes = crate::grid::phase_space_axes(&g).unwrap();
        let sigma = SampledField::new(axes.clone(), uniform_complex_values(17, 32 * 32)).unwrap();
        let wspec = WindowSpec::standard_gaussian();
        let spec = ModNormSpec::phase_tilde(2.0, 2.0, 2.0, 2.0, wspec.clone()).unwrap();
        let got = phase_modulation_norm(&sigma, &spec).unwrap();
        let wl2 = wspec.materialize(&axes).unwrap().l2_norm();
        let expect = sigma.l2_norm() * wl2;
        assert!((got - expect).abs() < 1e-12 * expect, "{got} vs {expect}");
    }

    #[test]
    fn streamed_reduction_matches_materialized() {
        let g = make_grid(1, 16, 4.0).unwrap();
        let axes = crate::grid::phase_space_axes(&g).unwrap();
        let sigma = SampledField::new(axes.clone(), uniform_complex_values(23, 16 * 16)).unwrap();
        let wspec = WindowSpec::standard_gaussian();
        let w = wspec.materialize(&axes).unwrap();
        let sets: [[f64; 4]; 4] = [
            [2.0, 2.0, 2.0, 2.0],
            [1.0, 2.0, 3.0, INF],
            [INF, 1.0, INF, 1.0],
            [2.0, 1.5, 4.0, 3.0],
        ];
        for e in sets {
            for tilde in [true, false] {
                let streamed = streamed_phase_norms(&sigma, &w, &[(tilde, e)]).unwrap()[0];
                let spec = if tilde {
                    ModNormSpec::phase_tilde(e[0], e[1], e[2], e[3], wspec.clone()).unwrap()
                } else {
                    ModNormSpec::phase_plain(e[0], e[1], e[2], e[3], wspec.clone()).unwrap()
                };
                let materialized = if tilde {
                    phase_modulation_norm(&sigma, &spec).unwrap()
                } else {
                    phase_m_norm(&sigma, &spec).unwrap()
                };
                assert!(
                    (streamed - materialized).abs() < 1e-11 * materialized.max(1.0),
                    "exponents {e:?} tilde={tilde}: {streamed} vs {materialized}"
                );
            }
        }
        // Batch agrees with one-at-a-time.
        let batch = phase_modulation_norms_batch(&sigma, &wspec, &sets).unwrap();
        for (e, b) in sets.iter().zip(&batch) {
            let spec = ModNormSpec::phase_tilde(e[0], e[1], e[2], e[3], wspec.clone()).unwrap();
            let single = phase_modulation_norm(&sigma, &spec).unwrap();
            assert!((b - single).abs() < 1e-11 * single.max(1.0));
        }
    }

    #[test]
    fn equal_exponents_make_both_phase_norms_agree() {
        let g = make_grid(1, 16, 4.0).unwrap();
        let axes = crate::grid::phase_space_axes(&g).unwrap();
        let sigma = SampledField::new(axes, uniform_complex_values(29, 16 * 16)).unwrap();
        let wspec = WindowSpec::standard_gaussian();
        for p in [1.0, 2.0, 3.0] {
            let a = phase_modulation_norm(
                &sigma,
                &ModNormSpec::phase_tilde(p, p, p, p, wspec.clone()).unwrap(),
            )
            .unwrap();
            let b = phase_m_norm(
                &sigma,
                &ModNormSpec::phase_plain(p, p, p, p, wspec.clone()).unwrap(),
            )
            .unwrap();
            assert!((a - b).abs() < 1e-10 * a, "p={p}: {a} vs {b}");
        }
    }

    #[test]
    fn weighted_phase_norm_reduces_to_unweighted_for_unit_weight() {
        let g = make_grid(1, 16, 4.0).unwrap();
        let axes = crate::grid::phase_space_axes(&g).unwrap();
        let sigma = SampledField::new(axes.clone(), uniform_complex_values(31, 16 * 16)).unwrap();
        let wspec = WindowSpec::standard_gaussian();
        let base = ModNormSpec::phase_tilde(2.0, 1.0, 3.0, 2.0, wspec.clone()).unwrap();
        let plainv = phase_modulation_norm(&sigma, &base).unwrap();
        let u = Weight::unit(vec![
            axes[0].clone(),
            axes[1].dual(),
            axes[1].clone(),
            axes[0].dual(),
        ])
        .unwrap();
        let weighted = phase_modulation_norm(
            &sigma,
            &ModNormSpec::phase_tilde(2.0, 1.0, 3.0, 2.0, wspec)
                .unwrap()
                .with_weight(u),
        )
        .unwrap();
        assert!((plainv - weighted).abs() < 1e-12 * plainv);
    }

    #[test]
    fn fl_norm_round_trips() {
        let g = make_grid(1, 128, 16.0).unwrap();
        let h = sample(&g, &["x"], |p| {
            c((-PI * p[0] * p[0] / 2.0).exp() * (1.0 + p[0]), 0.0)
        })
        .unwrap();
        let hhat = fourier(&h).unwrap();
        for p in [1.0, 2.0, 3.0, INF] {
            let lhs = fl_norm(&hhat, p).unwrap();
            let rhs = mixed_norm(&h, &ExponentChain::of(&[("x", p)]).unwrap(), None).unwrap();
            assert!((lhs - rhs).abs() < 1e-10 * rhs, "p={p}");
        }
        // p = 2 equals ‖f‖₂ by unitarity.
        let l2 = fl_norm(&hhat, 2.0).unwrap();
        assert!((l2 - hhat.l2_norm()).abs() < 1e-10 * l2);
    }

    #[test]
    fn sobolev_norm_reference_values() {
        let g = make_grid(1, 128, 16.0).unwrap();
        let f = sample(&g, &["x"], |p| c((-PI * p[0] * p[0]).exp(), 0.0)).unwrap();
        // s = 0 is the plain L^p norm.
        for p in [1.0, 2.0, 4.0] {
            let a = sobolev_norm(&f, p, 0.0).unwrap();
            let b = mixed_norm(&f, &ExponentChain::of(&[("x", p)]).unwrap(), None).unwrap();
            assert!((a - b).abs() < 1e-10 * b);
        }
        // p = 2: equals the frequency-side quadrature ‖(1+ξ²)^{s/2} f̂‖₂.
        let s = 2.0;
        let got = sobolev_norm(&f, 2.0, s).unwrap();
        let fh = fourier(&f).unwrap();
        let co = fh.axes()[0].coords();
        let dxi = fh.axes()[0].spacing();
        let direct: f64 = fh
            .values()
            .iter()
            .zip(&co)
            .map(|(v, &xi)| ((1.0 + xi * xi).powf(s / 2.0) * v.norm()).powi(2) * dxi)
            .sum::<f64>()
            .sqrt();
        assert!((got - direct).abs() < 1e-10 * direct, "{got} vs {direct}");
    }
}

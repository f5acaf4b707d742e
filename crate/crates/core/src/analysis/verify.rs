//! Identity drivers: each function exercises one exact discrete identity on
//! concrete inputs and reports the measured discrepancy, leaving tolerance
//! gating to callers (tests and the command-line tool).

use num_complex::Complex;

use super::random::{random_bandlimited, random_gaussian_field};
use crate::error::{Error, Result};
use crate::grid::{coordinate_shear, phase_space_axes, tensor, Axis, GridSpec, SampledField};
use crate::norms::{
    mixed_norm, modulation_norm, modulation_norm_tilde, phase_m_norm, phase_modulation_norm,
    ExponentChain, ModNormSpec,
};
use crate::operators::{
    apply_kn, apply_kn_fast, convolve, duality_pair, rihaczek, root_table,
    symbol_multiply_convolve, symbol_tensor, SymbolField,
};
use crate::rng::splitmix64;
use crate::scalar::Scalar;
use crate::testfns::{mollifier_on_axes, mollifier_profile};
use crate::transforms::{
    fourier, modulate, stft, stft_2d, symplectic_fourier, translate, WindowSpec,
};

/// One named discrepancy measurement.
#[derive(Debug, Clone)]
pub struct CheckRow<T> {
    pub check: String,
    pub error: T,
}

fn row<T: Scalar>(check: &str, error: T) -> CheckRow<T> {
    CheckRow { check: check.into(), error }
}

fn rel_scale<T: Scalar>(diff: T, scale: T) -> T {
    if scale > T::zero() {
        diff / scale
    } else {
        diff
    }
}

fn field_rel_err<T: Scalar>(got: &SampledField<T>, want: &SampledField<T>) -> Result<T> {
    Ok(rel_scale(got.max_abs_diff(want)?, want.max_abs()))
}

fn scalar_rel_err<T: Scalar>(got: T, want: T) -> T {
    rel_scale((got - want).abs(), want.abs())
}

/// Core transform identities on a seeded band-limited field: round trip,
/// Parseval, the reflection produced by transforming twice, the symplectic
/// transform's relation to the plain one, and its involution property.
pub fn verify_transform_identities<T: Scalar>(
    grid: &GridSpec<T>,
    seed: u64,
) -> Result<Vec<CheckRow<T>>> {
    let f = random_bandlimited(seed, grid, 0.5)?;
    let fhat = fourier(&f)?;
    let mut rows = Vec::new();
    rows.push(row("fourier-roundtrip", field_rel_err(&inverse(&fhat)?, &f)?));
    rows.push(row(
        "parseval",
        (fhat.l2_norm() - f.l2_norm()).abs() / f.l2_norm(),
    ));
    rows.push(row(
        "double-transform-reflection",
        field_rel_err(&fourier(&fhat)?, &f.reflect())?,
    ));

    // Two-axis rows: compare the symplectic transform against the plain
    // transform's values under (t,ν) ↦ G[ν, −t], and apply it twice.
    let grid2 = GridSpec::new(2, grid.n, grid.extent)?;
    let f2 = random_bandlimited(splitmix64(seed), &grid2, 0.5)?;
    let g2 = fourier(&f2)?;
    let s2 = symplectic_fourier(&f2)?;
    let n = grid.n;
    let (gv, sv) = (g2.values(), s2.values());
    let mut worst = T::zero();
    for a in 0..n {
        let flip = (n - a) % n;
        for b in 0..n {
            worst = worst.max((sv[a * n + b] - gv[b * n + flip]).norm());
        }
    }
    rows.push(row("symplectic-index-map", rel_scale(worst, g2.max_abs())));
    rows.push(row(
        "symplectic-involution",
        field_rel_err(&symplectic_fourier(&s2)?, &f2)?,
    ));
    Ok(rows)
}

fn inverse<T: Scalar>(f: &SampledField<T>) -> Result<SampledField<T>> {
    crate::transforms::inverse_fourier(f)
}

fn require_real_window<T: Scalar>(w: &SampledField<T>) -> Result<()> {
    let im = w.values().iter().map(|v| v.im.abs()).fold(T::zero(), |a, b| a.max(b));
    if im > T::of_f64(1e-12) * w.max_abs() {
        return Err(Error::invalid(
            "this identity requires a real-valued window",
        ));
    }
    Ok(())
}

fn require_even_window<T: Scalar>(w: &SampledField<T>) -> Result<()> {
    if w.max_abs_diff(&w.reflect())? > T::of_f64(1e-9) * w.max_abs() {
        return Err(Error::invalid(
            "this identity requires an even (reflection-symmetric) window",
        ));
    }
    Ok(())
}

/// The sheared-tensor 4-axis transform used by the factorization and
/// Rihaczek identities: the 2-axis short-time transform of
/// (x,t) ↦ conj(f)(x−t)·g(x) with window built the same way from φ.
fn shear_stft_array<T: Scalar>(
    f: &SampledField<T>,
    g: &SampledField<T>,
    phi: &SampledField<T>,
) -> Result<SampledField<T>> {
    let fx = f.clone().relabel(&["x"])?.conj();
    let gt = g.clone().relabel(&["t"])?;
    let big = coordinate_shear(&tensor(&fx, &gt)?)?;
    let wx = phi.clone().relabel(&["x"])?;
    let wt = phi.clone().relabel(&["t"])?;
    let wbig = coordinate_shear(&tensor(&wx, &wt)?)?;
    stft_2d(&big, &WindowSpec::explicit(wbig))
}

/// Measure how well the 4-axis short-time transform of the sheared tensor
/// conj(f)⊗g factorizes into the two 1-axis transforms of f and g:
/// V[i₁,i₂,k₁,k₂] = conj(Vf[i₁−i₂+n/2, k₂]) · Vg[i₁, k₁+k₂−n/2]
/// (indices mod n). Requires a real window; returns the largest deviation
/// relative to the largest product magnitude.
pub fn verify_stft_factorization<T: Scalar>(
    f: &SampledField<T>,
    g: &SampledField<T>,
    window: &WindowSpec<T>,
) -> Result<T> {
    f.check_same_axes(g)?;
    if f.dim() != 1 {
        return Err(Error::invalid("the factorization identity expects one-axis inputs"));
    }
    let ax = f.axes()[0].clone();
    let phi = window.materialize(std::slice::from_ref(&ax))?;
    require_real_window(&phi)?;
    let v4 = shear_stft_array(f, g, &phi)?;
    let vf = stft(f, window)?;
    let vg = stft(g, window)?;
    let n = ax.n;
    let h = n / 2;
    let (v4v, vfv, vgv) = (v4.values(), vf.values(), vg.values());
    let mut worst = T::zero();
    let mut scale = T::zero();
    for i1 in 0..n {
        for i2 in 0..n {
            let fi = (i1 + n - i2 + h) % n;
            for k1 in 0..n {
                let base = ((i1 * n + i2) * n + k1) * n;
                for k2 in 0..n {
                    let gk = (k1 + k2 + n - h) % n;
                    let rhs = vfv[fi * n + k2].conj() * vgv[i1 * n + gk];
                    worst = worst.max((v4v[base + k2] - rhs).norm());
                    scale = scale.max(rhs.norm());
                }
            }
        }
    }
    Ok(rel_scale(worst, scale))
}

/// Measure the relation between the windowed transform of the conjugate
/// Rihaczek form of (f,g) and the sheared-tensor transform:
/// V̄[i₁,i₂,k₁,k₂] = e^{−2πi ξ_{i₂} t_{k₂}} · V[i₁, −k₂, k₁, i₂]
/// where V̄ uses the plain Rihaczek form of (φ,φ) as its window.
/// Requires a real, even window.
pub fn verify_rihaczek_window_relation<T: Scalar>(
    f: &SampledField<T>,
    g: &SampledField<T>,
    window: &WindowSpec<T>,
) -> Result<T> {
    f.check_same_axes(g)?;
    if f.dim() != 1 {
        return Err(Error::invalid("the Rihaczek relation expects one-axis inputs"));
    }
    let ax = f.axes()[0].clone();
    let phi = window.materialize(std::slice::from_ref(&ax))?;
    require_real_window(&phi)?;
    require_even_window(&phi)?;
    // Conjugate Rihaczek form: conj R(f,g)(x,ξ) = e^{−2πixξ}·conj(f̂(ξ))·g(x).
    let rbar = rihaczek(f, g)?.conj();
    let rbar_w = rihaczek(&phi, &phi)?;
    let v43 = stft_2d(&rbar, &WindowSpec::explicit(rbar_w))?;
    let v42 = shear_stft_array(f, g, &phi)?;
    let n = ax.n;
    let h = n / 2;
    let hi = h as isize;
    let ni = n as isize;
    let tw = root_table::<T>(n);
    let (av, bv) = (v43.values(), v42.values());
    let mut worst = T::zero();
    let mut scale = T::zero();
    for i1 in 0..n {
        for i2 in 0..n {
            for k1 in 0..n {
                let base = ((i1 * n + i2) * n + k1) * n;
                for k2 in 0..n {
                    // Phase e^{−2πi ξ_{i2} t_{k2}}: exponent (i2−h)(k2−h)/n mod n.
                    let m = ((i2 as isize - hi) * (k2 as isize - hi)).rem_euclid(ni) as usize;
                    let src = ((i1 * n + (n - k2) % n) * n + k1) * n + i2;
                    let rhs = tw[m].conj() * bv[src];
                    worst = worst.max((av[base + k2] - rhs).norm());
                    scale = scale.max(rhs.norm());
                }
            }
        }
    }
    Ok(rel_scale(worst, scale))
}

/// Operator–form duality on seeded random data: one row per seed with the
/// relative gap between ⟨T_σf, g⟩ and ⟨σ, conj R(f,g)⟩.
pub fn verify_duality<T: Scalar>(grid: &GridSpec<T>, seeds: &[u64]) -> Result<Vec<CheckRow<T>>> {
    let mut rows = Vec::with_capacity(seeds.len());
    for &s in seeds {
        let f = random_gaussian_field(splitmix64(s ^ 0x66), grid.default_axes()?)?;
        let g = random_gaussian_field(splitmix64(s ^ 0x77), grid.default_axes()?)?;
        let sigma = SymbolField::direct(random_gaussian_field(
            splitmix64(s ^ 0x88),
            phase_space_axes(grid)?,
        )?)?;
        let (lhs, rhs) = duality_pair(&sigma, &f, &g)?;
        rows.push(row(
            &format!("duality-{s}"),
            rel_scale((lhs - rhs).norm(), rhs.norm()),
        ));
    }
    Ok(rows)
}

/// The 2-axis window matched to multiply–convolve symbols: the reflected
/// symplectic transform of ψ(t,ν) = e^{2πitν}·φx(t)·φξ(ν). With this
/// window, the four-exponent phase norm of such a symbol splits exactly
/// into one-axis modulation norms of the operator's two factors.
pub fn twisted_pair_window<T: Scalar>(
    grid: &GridSpec<T>,
    phi_x: &WindowSpec<T>,
    phi_xi: &WindowSpec<T>,
) -> Result<SampledField<T>> {
    if grid.dim_count != 1 {
        return Err(Error::invalid("twisted_pair_window expects a 1-D grid"));
    }
    let x = Axis::new("x", grid.n, grid.extent)?;
    let t = Axis { label: "t".into(), ..x.clone() };
    let nu = Axis { label: "nu".into(), ..x.dual() };
    let a = phi_x.materialize(std::slice::from_ref(&t))?;
    let b = phi_xi.materialize(std::slice::from_ref(&nu))?;
    let mut psi = tensor(&a, &b)?;
    let n = grid.n;
    let hi = (n / 2) as isize;
    let ni = n as isize;
    let tw = root_table::<T>(n);
    let vals = psi.values_mut();
    for i in 0..n {
        for j in 0..n {
            // t_i·ν_j = (i−n/2)(j−n/2)/n, reduced mod n for an exact phase.
            let m = ((i as isize - hi) * (j as isize - hi)).rem_euclid(ni) as usize;
            vals[i * n + j] *= tw[m];
        }
    }
    Ok(symplectic_fourier(&psi)?.reflect())
}

/// Operator-calculus identities on seeded band-limited inputs: both symbol
/// factories against their closed-form actions, the kernel/symbol
/// transform pair, the two application algorithms against each other,
/// duality, and the exact factorizations of symbol norms into one-axis
/// modulation norms of the factors.
pub fn verify_operator_identities<T: Scalar>(
    grid: &GridSpec<T>,
    seed: u64,
) -> Result<Vec<CheckRow<T>>> {
    if grid.dim_count != 1 {
        return Err(Error::invalid("operator identities run on a 1-D grid"));
    }
    let h1 = random_bandlimited(splitmix64(seed ^ 0x11), grid, 0.5)?;
    let h2 = random_bandlimited(splitmix64(seed ^ 0x22), grid, 0.5)?;
    let f = random_bandlimited(splitmix64(seed ^ 0x33), grid, 0.5)?;
    let g = random_bandlimited(splitmix64(seed ^ 0x44), grid, 0.5)?;
    let mut rows = Vec::new();

    // Multiply-then-convolve route.
    let mc = symbol_multiply_convolve(&h1, &h2)?;
    let applied = apply_kn(&mc.symbol, &f)?;
    let direct = convolve(&f.clone().mul_pointwise(&h1)?, &h2)?;
    rows.push(row("multiply-convolve-apply", field_rel_err(&applied, &direct)?));
    rows.push(row(
        "kernel-symplectic-match",
        field_rel_err(&symplectic_fourier(&mc.kernel)?, &mc.symbol.field)?,
    ));
    rows.push(row(
        "fast-apply-agreement",
        field_rel_err(&apply_kn_fast(&mc.symbol, &f)?, &applied)?,
    ));

    // Convolve-then-multiply route.
    let ts = symbol_tensor(&h1, &h2)?;
    let direct_t = h1.clone().mul_pointwise(&convolve(&h2, &f)?)?;
    rows.push(row(
        "tensor-apply",
        field_rel_err(&apply_kn(&ts, &f)?, &direct_t)?,
    ));

    // Duality on this data.
    let (dl, dr) = duality_pair(&ts, &f, &g)?;
    rows.push(row("duality", rel_scale((dl - dr).norm(), dr.norm())));

    // Norm factorizations at deliberately asymmetric exponents.
    let (p3, p4, q3, q4) = (
        T::of_f64(1.5),
        T::of_f64(2.5),
        T::of_f64(3.0),
        T::of_f64(1.25),
    );
    let std = WindowSpec::standard_gaussian();
    let axes = phase_space_axes(grid)?;
    let phi_x = std.materialize(std::slice::from_ref(&axes[0]))?;
    let phi_xi = std.materialize(std::slice::from_ref(&axes[1]))?;
    let phi_x_hat = fourier(&phi_x)?;
    let phi_xi_hat = fourier(&phi_xi)?;

    // Twisted-kernel symbols with the matched window: the 4-exponent norm
    // equals mnorm(h₁; p₃,q₄; φ̂ξ) · mnorm(h₂; p₄,q₃; φx).
    let weta = twisted_pair_window(grid, &std, &std)?;
    let lhs_eta = phase_modulation_norm(
        &mc.symbol.field,
        &ModNormSpec::phase_tilde(p3, p4, q3, q4, WindowSpec::explicit(weta))?,
    )?;
    let rhs_eta = modulation_norm(
        &h1,
        &ModNormSpec::euclidean(p3, q4, WindowSpec::explicit(phi_xi_hat))?,
    )? * modulation_norm(&h2, &ModNormSpec::euclidean(p4, q3, std.clone())?)?;
    rows.push(row("multiply-convolve-norm-split", scalar_rel_err(lhs_eta, rhs_eta)));

    // Tensor symbols with a tensor window φ ⊗ φ̂.
    let w2 = tensor(&phi_x, &phi_x_hat)?;
    let h2hat = fourier(&h2)?;
    let f1 = modulation_norm(&h1, &ModNormSpec::euclidean(p3, q4, std.clone())?)?;
    let lhs_tilde = phase_modulation_norm(
        &ts.field,
        &ModNormSpec::phase_tilde(p3, p4, q3, q4, WindowSpec::explicit(w2.clone()))?,
    )?;
    let rhs_tilde = f1
        * modulation_norm_tilde(&h2hat, q3, p4, &WindowSpec::explicit(phi_x_hat.clone()))?;
    rows.push(row("tensor-norm-split", scalar_rel_err(lhs_tilde, rhs_tilde)));

    let lhs_plain = phase_m_norm(
        &ts.field,
        &ModNormSpec::phase_plain(p3, q3, q4, p4, WindowSpec::explicit(w2))?,
    )?;
    let rhs_plain = f1
        * modulation_norm(
            &h2hat,
            &ModNormSpec::euclidean(q3, p4, WindowSpec::explicit(phi_x_hat))?,
        )?;
    rows.push(row("tensor-norm-split-plain", scalar_rel_err(lhs_plain, rhs_plain)));
    Ok(rows)
}

/// A compactly supported symbol together with a short name.
pub type NamedSymbol<T> = (String, SampledField<T>);

/// Six compactly supported symbols on the grid's phase-space axes, all
/// supported inside [−2,2]×[−1.5,1.5]: plain bump tensors at two scales, a
/// cosine-modulated one, a translated one, a frequency-modulated one, and
/// a non-tensor twisted bump.
pub fn standard_compact_family<T: Scalar>(grid: &GridSpec<T>) -> Result<Vec<NamedSymbol<T>>> {
    let axes = phase_space_axes(grid)?;
    let (x, xi) = (axes[0].clone(), axes[1].clone());
    let bx = |r: f64| mollifier_on_axes(vec![x.clone()], T::of_f64(r));
    let bxi = |r: f64| mollifier_on_axes(vec![xi.clone()], T::of_f64(r));
    let tau = T::of_f64(2.0) * T::PI();
    let quarter = T::of_f64(0.25);
    let cos_bump = SampledField::from_fn(vec![x.clone()], |p| {
        let u = (p[0] / T::of_f64(2.0)) * (p[0] / T::of_f64(2.0));
        Complex::new(mollifier_profile(u) * (tau * p[0] / T::of_f64(4.0)).cos(), T::zero())
    })?;
    let twisted = SampledField::from_fn(vec![x.clone(), xi.clone()], |p| {
        let ux = (p[0] / T::of_f64(1.5)) * (p[0] / T::of_f64(1.5));
        let uxi = (p[1] / T::of_f64(0.75)) * (p[1] / T::of_f64(0.75));
        let mag = mollifier_profile(ux) * mollifier_profile(uxi);
        let ang = tau * quarter * p[0] * p[1];
        Complex::new(mag * ang.cos(), mag * ang.sin())
    })?;
    Ok(vec![
        ("tensor-wide".into(), tensor(&bx(2.0)?, &bxi(1.5)?)?),
        ("tensor-narrow".into(), tensor(&bx(1.0)?, &bxi(1.0)?)?),
        ("cosine-modulated".into(), tensor(&cos_bump, &bxi(1.5)?)?),
        (
            "translated".into(),
            tensor(&translate(&bx(1.0)?, &[T::one()])?, &bxi(1.5)?)?,
        ),
        (
            "frequency-modulated".into(),
            tensor(&bx(2.0)?, &modulate(&bxi(1.5)?, &[T::one()])?)?,
        ),
        ("twisted-nontensor".into(), twisted),
    ])
}

/// One member's norms under the equivalence check.
#[derive(Debug, Clone)]
pub struct SupportEquivRow<T> {
    pub member: String,
    pub phase_norm: T,
    pub transform_norm: T,
    pub ratio: T,
}

/// Result of the compact-support equivalence check: per-member ratios of
/// the four-exponent phase norm to the two-exponent norm of the symplectic
/// transform, and their overall spread (max ratio / min ratio).
#[derive(Debug, Clone)]
pub struct SupportEquivReport<T> {
    pub rows: Vec<SupportEquivRow<T>>,
    pub spread: T,
}

/// For compactly supported symbols the four-exponent phase norm collapses
/// (up to constants) onto the mixed norm of the symplectic transform with
/// the two outer exponents: all ratios across a family should lie within a
/// modest constant factor. Exponents are given as (p₃,p₄,q₃,q₄); the
/// comparison norm reduces (t at p₄) then (ν at q₄).
pub fn verify_compact_support_equiv<T: Scalar>(
    members: &[NamedSymbol<T>],
    window: &WindowSpec<T>,
    exponents: [T; 4],
) -> Result<SupportEquivReport<T>> {
    if members.is_empty() {
        return Err(Error::invalid("the equivalence check needs at least one symbol"));
    }
    let [p3, p4, q3, q4] = exponents;
    let mut rows = Vec::with_capacity(members.len());
    let (mut lo, mut hi) = (T::infinity(), T::zero());
    for (name, field) in members {
        let phase = phase_modulation_norm(
            field,
            &ModNormSpec::phase_tilde(p3, p4, q3, q4, window.clone())?,
        )?;
        let s = symplectic_fourier(field)?;
        let chain = ExponentChain::new(vec![
            (s.axes()[0].label.clone(), p4),
            (s.axes()[1].label.clone(), q4),
        ])?;
        let tnorm = mixed_norm(&s, &chain, None)?;
        if !(tnorm > T::zero()) {
            return Err(Error::invalid(format!("member '{name}' has zero transform norm")));
        }
        let ratio = phase / tnorm;
        lo = lo.min(ratio);
        hi = hi.max(ratio);
        rows.push(SupportEquivRow {
            member: name.clone(),
            phase_norm: phase,
            transform_norm: tnorm,
            ratio,
        });
    }
    Ok(SupportEquivReport { rows, spread: hi / lo })
}

/// Which norm-comparison experiment to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EmbeddingKind {
    /// Inner placement of the second exponent: when p₂ ≤ min(q₁,q₂), the
    /// reduction order with t second never exceeds the order with t last.
    Below,
    /// The reverse inequality: when p₂ ≥ max(q₁,q₂), t-last never exceeds
    /// t-second.
    Above,
    /// Window sensitivity: the same norm under two different Gaussian
    /// windows; ratios are reported, nothing is asserted.
    WindowSensitivity,
}

/// Outcome of a randomized embedding run.
#[derive(Debug, Clone)]
pub struct EmbeddingReport<T> {
    pub kind: EmbeddingKind,
    pub trials: usize,
    pub violations: usize,
    pub min_ratio: T,
    pub max_ratio: T,
}

const EXPONENT_POOL: [f64; 7] = [
    1.0,
    4.0 / 3.0,
    1.5,
    2.0,
    3.0,
    4.0,
    f64::INFINITY,
];

fn draw_exponent<T: Scalar>(z: &mut u64) -> T {
    *z = splitmix64(*z);
    T::of_f64(EXPONENT_POOL[(*z % EXPONENT_POOL.len() as u64) as usize])
}

/// Compare the two reduction orders (or two windows) of the four-exponent
/// norms on seeded random symbols. For `Below`/`Above` the hypothesis on
/// exponents is resampled until satisfied and violations of the inequality
/// (beyond `tol` relative slack) are counted; for `WindowSensitivity` only
/// the ratio range is recorded.
pub fn verify_embedding<T: Scalar>(
    kind: EmbeddingKind,
    grid: &GridSpec<T>,
    trials: usize,
    seed: u64,
    tol: T,
) -> Result<EmbeddingReport<T>> {
    if trials == 0 {
        return Err(Error::invalid("embedding check needs at least one trial"));
    }
    let std = WindowSpec::standard_gaussian();
    let wide = WindowSpec::gaussian_scaled(T::of_f64(2.0));
    let mut violations = 0usize;
    let (mut lo, mut hi) = (T::infinity(), T::zero());
    for k in 0..trials {
        let mut z = splitmix64(seed ^ (k as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
        let field = random_gaussian_field(splitmix64(z ^ 0xF1E1D), phase_space_axes(grid)?)?;
        let (p1, p2, q1, q2) = loop {
            let e: [T; 4] = [
                draw_exponent(&mut z),
                draw_exponent(&mut z),
                draw_exponent(&mut z),
                draw_exponent(&mut z),
            ];
            let ok = match kind {
                EmbeddingKind::Below => e[1] <= e[2].min(e[3]),
                EmbeddingKind::Above => e[1] >= e[2].max(e[3]),
                EmbeddingKind::WindowSensitivity => true,
            };
            if ok {
                break (e[0], e[1], e[2], e[3]);
            }
        };
        let tilde = phase_modulation_norm(
            &field,
            &ModNormSpec::phase_tilde(p1, p2, q1, q2, std.clone())?,
        )?;
        let (num, den) = match kind {
            EmbeddingKind::Below => {
                let plain = phase_m_norm(
                    &field,
                    &ModNormSpec::phase_plain(p1, q1, q2, p2, std.clone())?,
                )?;
                (tilde, plain)
            }
            EmbeddingKind::Above => {
                let plain = phase_m_norm(
                    &field,
                    &ModNormSpec::phase_plain(p1, q1, q2, p2, std.clone())?,
                )?;
                (plain, tilde)
            }
            EmbeddingKind::WindowSensitivity => {
                let other = phase_modulation_norm(
                    &field,
                    &ModNormSpec::phase_tilde(p1, p2, q1, q2, wide.clone())?,
                )?;
                (tilde, other)
            }
        };
        if !(den > T::zero()) {
            return Err(Error::invalid("degenerate zero norm in embedding trial"));
        }
        let ratio = num / den;
        lo = lo.min(ratio);
        hi = hi.max(ratio);
        if kind != EmbeddingKind::WindowSensitivity && num > den * (T::one() + tol) {
            violations += 1;
        }
    }
    Ok(EmbeddingReport { kind, trials, violations, min_ratio: lo, max_ratio: hi })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::make_grid;
    use crate::testfns::gaussian_lambda;

    #[test]
    fn transform_rows_are_tiny() {
        let g = make_grid(1, 32, 8.0f64).unwrap();
        let rows = verify_transform_identities(&g, 5).unwrap();
        assert_eq!(rows.len(), 5);
        for r in rows {
            assert!(r.error < 1e-12, "{}: {}", r.check, r.error);
        }
    }

    #[test]
    fn shear_factorization_on_gaussians_and_random_fields() {
        let g = make_grid(1, 16, 4.0f64).unwrap();
        let f = gaussian_lambda(1.0, &g).unwrap();
        let h = gaussian_lambda(2.0, &g).unwrap();
        let w = WindowSpec::standard_gaussian();
        let err = verify_stft_factorization(&f, &h, &w).unwrap();
        assert!(err < 1e-12, "gaussian err {err}");
        let rf = random_bandlimited(3, &g, 0.6).unwrap();
        let rg = random_bandlimited(4, &g, 0.6).unwrap();
        let err2 = verify_stft_factorization(&rf, &rg, &w).unwrap();
        assert!(err2 < 1e-12, "random err {err2}");
        // Complex windows are rejected.
        let bad = WindowSpec::explicit(rf.clone());
        assert!(verify_stft_factorization(&f, &h, &bad).is_err());
    }

    #[test]
    fn rihaczek_relation_holds_for_even_windows_only() {
        let g = make_grid(1, 16, 4.0f64).unwrap();
        let f = random_bandlimited(7, &g, 0.6).unwrap();
        let h = random_bandlimited(8, &g, 0.6).unwrap();
        let err =
            verify_rihaczek_window_relation(&f, &h, &WindowSpec::standard_gaussian()).unwrap();
        assert!(err < 1e-12, "err {err}");
        // An uncentered window is rejected.
        let shifted = translate(
            &WindowSpec::standard_gaussian()
                .materialize(std::slice::from_ref(&g.axes(&["x"]).unwrap()[0]))
                .unwrap(),
            &[0.5],
        )
        .unwrap();
        assert!(
            verify_rihaczek_window_relation(&f, &h, &WindowSpec::explicit(shifted)).is_err()
        );
    }

    #[test]
    fn duality_rows() {
        let g = make_grid(1, 32, 8.0f64).unwrap();
        for r in verify_duality(&g, &[1, 2, 3]).unwrap() {
            assert!(r.error < 1e-12, "{}: {}", r.check, r.error);
        }
    }

    #[test]
    fn operator_rows_split_exactly() {
        let g = make_grid(1, 16, 4.0f64).unwrap();
        let rows = verify_operator_identities(&g, 11).unwrap();
        assert_eq!(rows.len(), 8);
        for r in &rows {
            assert!(r.error < 1e-10, "{}: {}", r.check, r.error);
        }
    }

    #[test]
    fn compact_family_equivalence_spread_is_modest() {
        let g = make_grid(1, 32, 8.0f64).unwrap();
        let fam = standard_compact_family(&g).unwrap();
        assert_eq!(fam.len(), 6);
        let axes = phase_space_axes(&g).unwrap();
        let wx = mollifier_on_axes(vec![axes[0].clone()], 1.0).unwrap();
        let wxi = mollifier_on_axes(vec![axes[1].clone()], 1.0).unwrap();
        let window = WindowSpec::explicit(tensor(&wx, &wxi).unwrap());
        let rep = verify_compact_support_equiv(
            &fam,
            &window,
            [2.0, 2.0, 2.0, 2.0],
        )
        .unwrap();
        assert!(rep.spread < 10.0, "spread {}", rep.spread);
        for row in &rep.rows {
            assert!(row.ratio > 0.0);
        }
    }

    #[test]
    fn embeddings_hold_in_both_directions() {
        let g = make_grid(1, 16, 4.0f64).unwrap();
        let below = verify_embedding(EmbeddingKind::Below, &g, 25, 42, 1e-12).unwrap();
        assert_eq!(below.violations, 0, "below max {}", below.max_ratio);
        assert!(below.max_ratio <= 1.0 + 1e-12);
        let above = verify_embedding(EmbeddingKind::Above, &g, 25, 43, 1e-12).unwrap();
        assert_eq!(above.violations, 0, "above max {}", above.max_ratio);
        let win = verify_embedding(EmbeddingKind::WindowSensitivity, &g, 10, 44, 1e-12).unwrap();
        assert_eq!(win.violations, 0);
        assert!(win.min_ratio > 0.0 && win.max_ratio.is_finite());
    }
}

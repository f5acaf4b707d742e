//! Measurement harnesses: modulation-norm scaling sweeps over deterministic
//! families, operator-boundedness ratio tables over seeded trigonometric
//! polynomials, and growth drivers for the exponent-condition necessity
//! experiments.

use num_complex::Complex;

use super::exponents::{admissible, ExponentConfig, ExtExponent};
use super::slopes::{scaling_slope, SlopeReport};
use crate::error::{Error, Result};
use crate::grid::{phase_space_axes, Axis, GridSpec, SampledField};
use crate::norms::{
    mixed_norm, modulation_norm, modulation_norm_tilde, phase_modulation_norm,
    phase_modulation_norms_batch, ExponentChain, ModNormSpec,
};
use crate::operators::{apply_kn, convolve, root_table, SymbolField};
use crate::rng::gaussian_complex_indexed;
use crate::scalar::Scalar;
use crate::testfns::{
    bump, chirp, chirp_matched_input, chirped_symbol, family_member, gaussian_lambda,
    mollifier_on_axes, FamilyKind, FamilyParam,
};
use crate::transforms::{fourier, inverse_fourier, stft, WindowSpec};

fn u_of(e: f64) -> f64 {
    if e.is_infinite() {
        0.0
    } else {
        1.0 / e
    }
}

/// One (p,q) pair's fitted λ-scaling of the modulation norm.
#[derive(Debug, Clone)]
pub struct PairSlope {
    pub p: f64,
    pub q: f64,
    pub predicted: f64,
    pub fit: SlopeReport,
}

impl PairSlope {
    /// Absolute gap between the fitted and predicted slopes.
    pub fn deviation(&self) -> f64 {
        (self.fit.slope - self.predicted).abs()
    }
}

/// All fitted pairs of one family sweep.
#[derive(Debug, Clone)]
pub struct ScalingSweep {
    pub kind: FamilyKind,
    pub pairs: Vec<PairSlope>,
}

/// Predicted log–log slope of λ ↦ ‖member(λ)‖_{M^{p,q}} for the three
/// one-axis families: −1/q′ for concentrating Gaussians, 1/p for
/// spreading ones, and 1/q − 1/2 for chirped bumps.
pub fn predicted_family_slope(kind: FamilyKind, p: f64, q: f64) -> Result<f64> {
    match kind {
        FamilyKind::GaussianDilate => Ok(-(1.0 - u_of(q))),
        FamilyKind::GaussianShrink => Ok(u_of(p)),
        FamilyKind::ChirpedBump => Ok(u_of(q) - 0.5),
        FamilyKind::SymbolChirp | FamilyKind::PreparedInput => Err(Error::invalid(
            "predicted slopes apply to the one-axis sweep families",
        )),
    }
}

/// Sweep one family over λ, computing the short-time transform once per λ
/// and reducing it under every requested (p,q) pair, then fit log–log
/// slopes per pair.
pub fn modulation_scaling_sweep<T: Scalar>(
    kind: FamilyKind,
    grid: &GridSpec<T>,
    window: &WindowSpec<T>,
    radius: T,
    lambdas: &[T],
    pairs: &[(T, T)],
) -> Result<ScalingSweep> {
    if pairs.is_empty() {
        return Err(Error::invalid("a scaling sweep needs at least one (p,q) pair"));
    }
    let mut values: Vec<Vec<f64>> = vec![Vec::with_capacity(lambdas.len()); pairs.len()];
    for &lam in lambdas {
        let member = family_member(FamilyParam::new(kind, lam)?, grid, radius)?;
        let v = stft(&member, window)?;
        let labels: Vec<String> = v.axes().iter().map(|a| a.label.clone()).collect();
        for (slot, &(p, q)) in values.iter_mut().zip(pairs) {
            let chain =
                ExponentChain::new(vec![(labels[0].clone(), p), (labels[1].clone(), q)])?;
            slot.push(mixed_norm(&v, &chain, None)?.as_f64());
        }
    }
    let lam_f: Vec<f64> = lambdas.iter().map(|l| l.as_f64()).collect();
    let mut out = Vec::with_capacity(pairs.len());
    for (slot, &(p, q)) in values.iter().zip(pairs) {
        let (pf, qf) = (p.as_f64(), q.as_f64());
        out.push(PairSlope {
            p: pf,
            q: qf,
            predicted: predicted_family_slope(kind, pf, qf)?,
            fit: scaling_slope(&lam_f, slot)?,
        });
    }
    Ok(ScalingSweep { kind, pairs: out })
}

/// Frozen grid/window/λ defaults for one sweep family.
#[derive(Debug, Clone)]
pub struct SweepRecipe {
    pub kind: FamilyKind,
    pub n: usize,
    pub extent: f64,
    pub radius: f64,
    /// Gaussian window rate: the window is e^{−π·rate·x²}.
    pub window_rate: f64,
    pub lambdas: Vec<f64>,
    pub pairs: Vec<(f64, f64)>,
}

/// The default sweep parameters for each one-axis family.
pub fn sweep_recipe(kind: FamilyKind) -> Result<SweepRecipe> {
    let lambdas = vec![1.0, 2.0, 4.0, 8.0, 16.0];
    let pairs = vec![(2.0, 4.0), (1.0, f64::INFINITY), (4.0, 4.0 / 3.0)];
    let (extent, window_rate) = match kind {
        FamilyKind::GaussianDilate => (16.0, 1.0),
        FamilyKind::GaussianShrink => (128.0, 1.0),
        FamilyKind::ChirpedBump => (16.0, 0.125),
        FamilyKind::SymbolChirp | FamilyKind::PreparedInput => {
            return Err(Error::invalid("sweep recipes cover the one-axis families"))
        }
    };
    Ok(SweepRecipe { kind, n: 2048, extent, radius: 2.0, window_rate, lambdas, pairs })
}

/// Seeded unit-normalized trigonometric polynomial on one axis:
/// (2M+1)^{−1/2} Σ_{|m|≤M} c_m e^{2πimx/period} with Gaussian coefficients
/// keyed by (seed, m).
fn trig_poly_1d<T: Scalar>(
    seed: u64,
    axis: &Axis<T>,
    m_max: i64,
    period: T,
) -> Result<SampledField<T>> {
    let norm = T::of_usize((2 * m_max + 1) as usize).sqrt().recip();
    let two_pi = T::PI() + T::PI();
    let coefs: Vec<Complex<T>> = (-m_max..=m_max)
        .map(|m| gaussian_complex_indexed(seed, &[(m + 1000) as u64]))
        .collect();
    let vals: Vec<Complex<T>> = axis
        .coords()
        .iter()
        .map(|&x| {
            let mut acc = Complex::new(T::zero(), T::zero());
            for (idx, m) in (-m_max..=m_max).enumerate() {
                let ang = two_pi * T::of_f64(m as f64) * x / period;
                acc += coefs[idx] * Complex::new(ang.cos(), ang.sin());
            }
            acc * norm
        })
        .collect();
    SampledField::new(vec![axis.clone()], vals)
}

/// Seeded two-axis trigonometric polynomial with a Gaussian ξ-envelope:
/// ((2M₁+1)(2M₂+1))^{−1/2} Σ c_{mj} e^{2πi(mx/Px + jξ/Pξ)} · e^{−πξ²/4},
/// coefficients keyed by (seed, m, j). Fixed periods keep the symbol the
/// same function when the grid is refined.
fn trig_poly_symbol<T: Scalar>(
    seed: u64,
    axes: &[Axis<T>],
    m1: i64,
    m2: i64,
    period_x: T,
    period_xi: T,
) -> Result<SampledField<T>> {
    let count = ((2 * m1 + 1) * (2 * m2 + 1)) as usize;
    let norm = T::of_usize(count).sqrt().recip();
    let two_pi = T::PI() + T::PI();
    let xs = axes[0].coords();
    let xis = axes[1].coords();
    let (nx, nxi) = (xs.len(), xis.len());
    let phases = |coords: &[T], m: i64, period: T| -> Vec<Complex<T>> {
        coords
            .iter()
            .map(|&c| {
                let ang = two_pi * T::of_f64(m as f64) * c / period;
                Complex::new(ang.cos(), ang.sin())
            })
            .collect()
    };
    let ex: Vec<Vec<Complex<T>>> = (-m1..=m1).map(|m| phases(&xs, m, period_x)).collect();
    let exi: Vec<Vec<Complex<T>>> = (-m2..=m2).map(|j| phases(&xis, j, period_xi)).collect();
    let mut vals = vec![Complex::new(T::zero(), T::zero()); nx * nxi];
    for (im, m) in (-m1..=m1).enumerate() {
        for (ij, j) in (-m2..=m2).enumerate() {
            let c = gaussian_complex_indexed::<T>(seed, &[(m + 1000) as u64, (j + 1000) as u64]);
            for (a, &vx) in ex[im].iter().enumerate() {
                let cv = c * vx;
                let row = &mut vals[a * nxi..(a + 1) * nxi];
                for (slot, &vxi) in row.iter_mut().zip(&exi[ij]) {
                    *slot += cv * vxi;
                }
            }
        }
    }
    let pi = T::PI();
    let quarter = T::of_f64(0.25);
    for a in 0..nx {
        for (b, &xi) in xis.iter().enumerate() {
            vals[a * nxi + b] = vals[a * nxi + b] * norm * (-pi * xi * xi * quarter).exp();
        }
    }
    SampledField::new(axes.to_vec(), vals)
}

/// One seeded instance's norms in a boundedness table.
#[derive(Debug, Clone)]
pub struct RatioRow<T> {
    pub instance: usize,
    pub numerator: T,
    pub sigma_norm: T,
    pub input_norm: T,
    /// `None` when a denominator vanished.
    pub ratio: Option<T>,
}

/// All instances of one exponent configuration.
#[derive(Debug, Clone)]
pub struct RatioTable<T> {
    pub config: ExponentConfig,
    pub rows: Vec<RatioRow<T>>,
    pub max_ratio: T,
}

/// Measure ‖T_σf‖_{M^{p₂,q₂}} / (‖σ‖·‖f‖_{M^{p₁,q₁}}) over seeded
/// trigonometric-polynomial instances, for several exponent
/// configurations at once (the 4-exponent symbol norms share one streamed
/// pass per instance). Instance s uses input seed `seed_base+7000+s` and
/// symbol seed `seed_base+9000+s`; coefficients depend only on
/// (seed, mode index), so refining the grid keeps the same functions.
pub fn boundedness_sweep<T: Scalar>(
    cfgs: &[ExponentConfig],
    grid: &GridSpec<T>,
    window: &WindowSpec<T>,
    instances: usize,
    seed_base: u64,
) -> Result<Vec<RatioTable<T>>> {
    if cfgs.is_empty() || instances == 0 {
        return Err(Error::invalid(
            "boundedness sweep needs at least one configuration and one instance",
        ));
    }
    let axes = phase_space_axes(grid)?;
    let of = T::of_f64;
    let exps: Vec<[T; 4]> = cfgs
        .iter()
        .map(|c| {
            let p = c.p_f64();
            let q = c.q_f64();
            [of(p[2]), of(p[3]), of(q[2]), of(q[3])]
        })
        .collect();
    let mut tables: Vec<Vec<RatioRow<T>>> = vec![Vec::with_capacity(instances); cfgs.len()];
    for s in 0..instances {
        let su = s as u64;
        let f = trig_poly_1d(seed_base + 7000 + su, &axes[0], 8, grid.extent)?;
        let sf = trig_poly_symbol(
            seed_base + 9000 + su,
            &axes,
            6,
            8,
            grid.extent,
            T::of_f64(8.0),
        )?;
        let sigma = SymbolField::direct(sf)?;
        let sigma_norms = phase_modulation_norms_batch(&sigma.field, window, &exps)?;
        let applied = apply_kn(&sigma, &f)?;
        for (ci, cfg) in cfgs.iter().enumerate() {
            let p = cfg.p_f64().map(of);
            let q = cfg.q_f64().map(of);
            let numerator =
                modulation_norm(&applied, &ModNormSpec::euclidean(p[1], q[1], window.clone())?)?;
            let input_norm =
                modulation_norm(&f, &ModNormSpec::euclidean(p[0], q[0], window.clone())?)?;
            let den = sigma_norms[ci] * input_norm;
            tables[ci].push(RatioRow {
                instance: s,
                numerator,
                sigma_norm: sigma_norms[ci],
                input_norm,
                ratio: if den > T::zero() { Some(numerator / den) } else { None },
            });
        }
    }
    Ok(cfgs
        .iter()
        .zip(tables)
        .map(|(cfg, rows)| {
            let max_ratio = rows
                .iter()
                .filter_map(|r| r.ratio)
                .fold(T::zero(), |a, b| a.max(b));
            RatioTable { config: cfg.clone(), rows, max_ratio }
        })
        .collect())
}

/// Frozen defaults for the grid-refinement boundedness experiment.
#[derive(Debug, Clone)]
pub struct BoundednessRecipe {
    /// Coarse and refined grid sizes (same extent).
    pub n_values: [usize; 2],
    pub extent: f64,
    pub instances: usize,
    pub seed_base: u64,
    pub configs: Vec<ExponentConfig>,
}

/// Default boundedness experiment: N = 32 → 64 at extent 4, 50 seeded
/// instances, the all-2 configuration and the (∞,1,∞,1) symbol-norm
/// endpoint (operator exponents all 2).
pub fn boundedness_recipe() -> BoundednessRecipe {
    let two = ExtExponent::from_ratio(2, 1).expect("static exponent");
    let one = ExtExponent::from_ratio(1, 1).expect("static exponent");
    let inf = ExtExponent::infinity();
    let endpoint = ExponentConfig::new([two, two, inf, one], [two, two, inf, one]);
    BoundednessRecipe {
        n_values: [32, 64],
        extent: 4.0,
        instances: 50,
        seed_base: 0,
        configs: vec![ExponentConfig::all_two(), endpoint],
    }
}

/// The six single-condition necessity experiments: each one scales a
/// family that blows up the operator/denominator ratio exactly when the
/// named exponent condition fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NecessityCase {
    P4,
    Q4Q1,
    Q4Q2,
    P4P2,
    PSum,
    QSum,
}

impl NecessityCase {
    /// All six cases in catalog order.
    pub fn all() -> [NecessityCase; 6] {
        [
            NecessityCase::P4,
            NecessityCase::Q4Q1,
            NecessityCase::Q4Q2,
            NecessityCase::P4P2,
            NecessityCase::PSum,
            NecessityCase::QSum,
        ]
    }

    /// Stable kebab-case identifier.
    pub fn id(self) -> &'static str {
        match self {
            NecessityCase::P4 => "p4",
            NecessityCase::Q4Q1 => "q4-q1",
            NecessityCase::Q4Q2 => "q4-q2",
            NecessityCase::P4P2 => "p4-p2",
            NecessityCase::PSum => "p-sum",
            NecessityCase::QSum => "q-sum",
        }
    }

    /// Index of the targeted condition in `AdmissibilityBreakdown::legs()`
    /// order (p-sum, p4≤p1′, p4≤p2, q-sum, q4≤q1′, q4≤q2).
    fn target_leg(self) -> usize {
        match self {
            NecessityCase::PSum => 0,
            NecessityCase::P4 => 1,
            NecessityCase::P4P2 => 2,
            NecessityCase::QSum => 3,
            NecessityCase::Q4Q1 => 4,
            NecessityCase::Q4Q2 => 5,
        }
    }
}

/// Confirm that `cfg` violates exactly the one condition `case` targets
/// while every other condition holds.
pub fn necessity_target_check(case: NecessityCase, cfg: &ExponentConfig) -> Result<()> {
    let legs = admissible(cfg).legs();
    let target = case.target_leg();
    for (i, (name, ok)) in legs.iter().enumerate() {
        if i == target && *ok {
            return Err(Error::invalid(format!(
                "configuration does not violate the targeted condition '{name}'"
            )));
        }
        if i != target && !*ok {
            return Err(Error::invalid(format!(
                "configuration also violates the untargeted condition '{name}'"
            )));
        }
    }
    Ok(())
}

/// Frozen grid/λ/exponent defaults for one necessity case.
#[derive(Debug, Clone)]
pub struct NecessityRecipe {
    pub case: NecessityCase,
    pub n: usize,
    pub extent: f64,
    pub radius: f64,
    pub lambdas: Vec<f64>,
    pub config: ExponentConfig,
}

/// The default parameters for each necessity case.
pub fn necessity_recipe(case: NecessityCase) -> NecessityRecipe {
    let ex = |v: i64| ExtExponent::from_ratio(v, 1).expect("static exponent");
    let all2 = [ex(2), ex(2), ex(2), ex(2)];
    let five = vec![1.0, 2.0, 4.0, 8.0, 16.0];
    let (n, extent, lambdas, p, q) = match case {
        NecessityCase::P4 => (2048, 80.0, five, [ex(2), ex(4), ex(2), ex(4)], all2),
        NecessityCase::Q4Q1 => (2048, 16.0, five, all2, [ex(2), ex(4), ex(2), ex(4)]),
        NecessityCase::Q4Q2 => {
            (160, 8.0, vec![1.0, 2.0, 4.0], all2, [ex(1), ex(2), ex(2), ex(4)])
        }
        NecessityCase::P4P2 => (2048, 32.0, five, [ex(1), ex(2), ex(2), ex(4)], all2),
        NecessityCase::PSum => (2048, 32.0, five, [ex(2), ex(2), ex(4), ex(2)], all2),
        NecessityCase::QSum => (2048, 32.0, five, all2, [ex(2), ex(2), ex(4), ex(2)]),
    };
    NecessityRecipe {
        case,
        n,
        extent,
        radius: 2.0,
        lambdas,
        config: ExponentConfig::new(p, q),
    }
}

/// Predicted log–log growth rate of the necessity ratio for `case` under
/// `cfg`, in terms of u(x) = 1/x (0 at ∞) and u(x′) = 1 − u(x).
pub fn necessity_predicted_slope(case: NecessityCase, cfg: &ExponentConfig) -> f64 {
    let up = cfg.p_f64().map(u_of);
    let uq = cfg.q_f64().map(u_of);
    let conj = |u: f64| 1.0 - u;
    match case {
        NecessityCase::P4 => conj(up[0]) - up[3],
        NecessityCase::Q4Q1 => conj(uq[0]) - uq[3],
        NecessityCase::Q4Q2 => uq[1] - uq[3],
        NecessityCase::P4P2 => (up[1] - up[3]) / 2.0,
        NecessityCase::PSum => ((conj(up[0]) + up[1]) - (up[2] + up[3])) / 2.0,
        NecessityCase::QSum => ((conj(uq[0]) + uq[1]) - (uq[2] + uq[3])) / 2.0,
    }
}

/// Symbol σ(x,ξ) = e^{−2πixξ}·a(x)·b(ξ), the coupling phase taken from
/// the exact integer root table so the bilinear phase never drifts.
fn coupled_symbol<T: Scalar>(
    a: &SampledField<T>,
    b: &SampledField<T>,
) -> Result<SymbolField<T>> {
    if a.dim() != 1 || b.dim() != 1 {
        return Err(Error::invalid("coupled_symbol expects one-axis factors"));
    }
    let (xax, xiax) = (a.axes()[0].clone(), b.axes()[0].clone());
    let n = xax.n;
    let tw = root_table::<T>(n);
    let h = (n / 2) as isize;
    let ni = n as isize;
    let (av, bv) = (a.values(), b.values());
    let mut vals = Vec::with_capacity(n * n);
    for j in 0..n {
        let jc = j as isize - h;
        for k in 0..n {
            let m = (jc * (k as isize - h)).rem_euclid(ni) as usize;
            vals.push(tw[m].conj() * av[j] * bv[k]);
        }
    }
    SymbolField::direct(SampledField::new(vec![xax, xiax], vals)?)
}

/// One λ's measurements in a necessity growth run.
#[derive(Debug, Clone)]
pub struct GrowthRow {
    pub lambda: f64,
    pub numerator: f64,
    pub sigma_norm: f64,
    pub input_norm: f64,
    pub ratio: f64,
}

/// Result of a necessity growth run: per-λ rows, the fitted ratio slope,
/// and the predicted rate.
#[derive(Debug, Clone)]
pub struct NecessityGrowth {
    pub case: NecessityCase,
    pub config: ExponentConfig,
    pub rows: Vec<GrowthRow>,
    pub fit: SlopeReport,
    pub predicted: f64,
}

/// Run one necessity case: build its λ-family, measure
/// ‖T_σf‖_{M^{p₂,q₂}} / (‖σ‖_{M̃^{p₃p₄q₃q₄}}·‖f‖_{M^{p₁,q₁}}) per λ, and
/// fit the growth rate. The configuration must violate exactly the
/// targeted condition. Symbol norms use the factorized closed forms where
/// they are exact (kernel- and tensor-built symbols); the ξ-coupled case
/// computes the full streamed 4-exponent norm.
pub fn necessity_growth<T: Scalar>(
    case: NecessityCase,
    cfg: &ExponentConfig,
    grid: &GridSpec<T>,
    radius: T,
    lambdas: &[T],
) -> Result<NecessityGrowth> {
    necessity_target_check(case, cfg)?;
    let of = T::of_f64;
    let [p1, p2, p3, p4] = cfg.p_f64().map(of);
    let [q1, q2, q3, q4] = cfg.q_f64().map(of);
    let wstd = WindowSpec::standard_gaussian();
    let axes = phase_space_axes(grid)?;
    let (xax, xiax) = (axes[0].clone(), axes[1].clone());
    let phi_x = wstd.materialize(std::slice::from_ref(&xax))?;
    let phi_xi = wstd.materialize(std::slice::from_ref(&xiax))?;
    // Kernel-route factor-1 window and tensor-route tilde-factor window.
    let w_eta = WindowSpec::explicit(fourier(&phi_xi)?);
    let chi = WindowSpec::explicit(fourier(&phi_x)?);
    let mnorm = |field: &SampledField<T>, p: T, q: T, w: &WindowSpec<T>| -> Result<T> {
        modulation_norm(field, &ModNormSpec::euclidean(p, q, w.clone())?)
    };

    let mut rows = Vec::with_capacity(lambdas.len());
    for &lam in lambdas {
        let (numerator, sigma_norm, input_norm) = match case {
            NecessityCase::P4 => {
                let sigma = chirped_symbol(grid, radius, lam)?;
                let f = chirp_matched_input(grid, radius, lam)?;
                let num = mnorm(&apply_kn(&sigma, &f)?, p2, q2, &wstd)?;
                let bx = mollifier_on_axes(vec![xax.clone()], radius)?;
                let bxi_ch = chirp(&mollifier_on_axes(vec![xiax.clone()], radius)?, lam)?;
                let sig = mnorm(&bx, p3, q4, &wstd)?
                    * modulation_norm_tilde(&bxi_ch, q3, p4, &chi)?;
                (num, sig, mnorm(&f, p1, q1, &wstd)?)
            }
            NecessityCase::Q4Q1 => {
                let h1 = chirp(&bump(grid, radius)?, lam)?;
                let h2 = inverse_fourier(&mollifier_on_axes(vec![xiax.clone()], radius)?)?
                    .relabel(&["x"])?;
                let f = h1.clone().conj();
                let num = mnorm(
                    &convolve(&h1.clone().mul_pointwise(&f)?, &h2)?,
                    p2,
                    q2,
                    &wstd,
                )?;
                let sig = mnorm(&h1, p3, q4, &w_eta)? * mnorm(&h2, p4, q3, &wstd)?;
                (num, sig, mnorm(&f, p1, q1, &wstd)?)
            }
            NecessityCase::Q4Q2 => {
                let hl = chirp(&bump(grid, radius)?, lam)?;
                let bxi = mollifier_on_axes(vec![xiax.clone()], radius)?;
                let sigma = coupled_symbol(&hl, &bxi)?;
                let f = inverse_fourier(&bxi)?.relabel(&["x"])?;
                let num = mnorm(&apply_kn(&sigma, &f)?, p2, q2, &wstd)?;
                let sig = phase_modulation_norm(
                    &sigma.field,
                    &ModNormSpec::phase_tilde(p3, p4, q3, q4, wstd.clone())?,
                )?;
                (num, sig, mnorm(&f, p1, q1, &wstd)?)
            }
            NecessityCase::P4P2 => {
                let h1 = gaussian_lambda(T::one(), grid)?;
                let h2 = gaussian_lambda(lam.recip(), grid)?;
                let f = h1.clone();
                let num = mnorm(
                    &convolve(&h1.clone().mul_pointwise(&f)?, &h2)?,
                    p2,
                    q2,
                    &wstd,
                )?;
                let sig = mnorm(&h1, p3, q4, &w_eta)? * mnorm(&h2, p4, q3, &wstd)?;
                (num, sig, mnorm(&f, p1, q1, &wstd)?)
            }
            NecessityCase::PSum | NecessityCase::QSum => {
                // Mirror families: the p-side case spreads h1 = f and
                // concentrates ĥ2; the q-side case swaps the two rates.
                let (rate1, rate2) = match case {
                    NecessityCase::PSum => (lam.recip(), lam),
                    _ => (lam, lam.recip()),
                };
                let h1 = gaussian_lambda(rate1, grid)?;
                let f = h1.clone();
                let hhat2 =
                    WindowSpec::gaussian_scaled(rate2).materialize(std::slice::from_ref(&xiax))?;
                let h2 = inverse_fourier(&hhat2)?.relabel(&["x"])?;
                let num = mnorm(
                    &h1.clone().mul_pointwise(&convolve(&h2, &f)?)?,
                    p2,
                    q2,
                    &wstd,
                )?;
                let sig = mnorm(&h1, p3, q4, &wstd)?
                    * modulation_norm_tilde(&hhat2, q3, p4, &chi)?;
                (num, sig, mnorm(&f, p1, q1, &wstd)?)
            }
        };
        let den = sigma_norm * input_norm;
        if !(den > T::zero()) {
            return Err(Error::invalid("necessity family produced a zero denominator"));
        }
        rows.push(GrowthRow {
            lambda: lam.as_f64(),
            numerator: numerator.as_f64(),
            sigma_norm: sigma_norm.as_f64(),
            input_norm: input_norm.as_f64(),
            ratio: (numerator / den).as_f64(),
        });
    }
    let lam_f: Vec<f64> = rows.iter().map(|r| r.lambda).collect();
    let ratios: Vec<f64> = rows.iter().map(|r| r.ratio).collect();
    Ok(NecessityGrowth {
        case,
        config: cfg.clone(),
        rows,
        fit: scaling_slope(&lam_f, &ratios)?,
        predicted: necessity_predicted_slope(case, cfg),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::make_grid;

    #[test]
    fn predicted_slopes_match_reference_values() {
        assert_eq!(
            predicted_family_slope(FamilyKind::GaussianDilate, 2.0, 4.0).unwrap(),
            -0.75
        );
        assert_eq!(
            predicted_family_slope(FamilyKind::GaussianDilate, 1.0, f64::INFINITY).unwrap(),
            -1.0
        );
        assert_eq!(
            predicted_family_slope(FamilyKind::GaussianShrink, 4.0, 4.0 / 3.0).unwrap(),
            0.25
        );
        assert_eq!(
            predicted_family_slope(FamilyKind::ChirpedBump, 2.0, 4.0).unwrap(),
            -0.25
        );
        assert!(predicted_family_slope(FamilyKind::SymbolChirp, 2.0, 2.0).is_err());

        let expect = [0.25, 0.25, 0.25, 0.125, 0.125, 0.125];
        for (case, want) in NecessityCase::all().into_iter().zip(expect) {
            let r = necessity_recipe(case);
            assert_eq!(necessity_predicted_slope(case, &r.config), want, "{}", case.id());
        }
    }

    #[test]
    fn recipes_violate_exactly_the_targeted_condition() {
        for case in NecessityCase::all() {
            let r = necessity_recipe(case);
            necessity_target_check(case, &r.config).unwrap();
            // The fully admissible configuration targets nothing.
            assert!(necessity_target_check(case, &ExponentConfig::all_two()).is_err());
        }
        // A doubly violating configuration is rejected for a single-leg case.
        let bad = necessity_recipe(NecessityCase::PSum);
        assert!(necessity_target_check(NecessityCase::P4, &bad.config).is_err());
    }

    #[test]
    fn gaussian_sweep_micro() {
        let g = make_grid(1, 256, 16.0f64).unwrap();
        let w = WindowSpec::gaussian_scaled(1.0);
        let sweep = modulation_scaling_sweep(
            FamilyKind::GaussianDilate,
            &g,
            &w,
            2.0,
            &[1.0, 2.0, 4.0],
            &[(2.0, 2.0)],
        )
        .unwrap();
        let pair = &sweep.pairs[0];
        assert_eq!(pair.predicted, -0.5);
        assert!(pair.deviation() < 0.1, "slope {}", pair.fit.slope);
    }

    #[test]
    fn chirp_sweep_micro() {
        let g = make_grid(1, 256, 16.0f64).unwrap();
        let w = WindowSpec::gaussian_scaled(0.125);
        let sweep = modulation_scaling_sweep(
            FamilyKind::ChirpedBump,
            &g,
            &w,
            1.5,
            &[1.0, 2.0, 4.0],
            &[(2.0, 4.0)],
        )
        .unwrap();
        let pair = &sweep.pairs[0];
        assert_eq!(pair.predicted, -0.25);
        assert!(pair.deviation() < 0.15, "slope {}", pair.fit.slope);
    }

    #[test]
    fn coupled_symbol_matches_direct_sampling() {
        let g = make_grid(1, 32, 8.0f64).unwrap();
        let axes = phase_space_axes(&g).unwrap();
        let a = mollifier_on_axes(vec![axes[0].clone()], 1.0).unwrap();
        let b = mollifier_on_axes(vec![axes[1].clone()], 1.0).unwrap();
        let sigma = coupled_symbol(&a, &b).unwrap();
        let tau = 2.0 * std::f64::consts::PI;
        let direct = SampledField::from_fn(axes, |p| {
            let ang = -tau * p[0] * p[1];
            Complex::new(ang.cos(), ang.sin())
        })
        .unwrap();
        let n = g.n;
        let (sv, av, bv, dv) = (sigma.field.values(), a.values(), b.values(), direct.values());
        let mut worst = 0.0f64;
        for j in 0..n {
            for k in 0..n {
                let want = dv[j * n + k] * av[j] * bv[k];
                worst = worst.max((sv[j * n + k] - want).norm());
            }
        }
        assert!(worst < 1e-10, "max phase drift {worst}");
    }

    #[test]
    fn psum_growth_micro() {
        let g = make_grid(1, 256, 16.0f64).unwrap();
        let r = necessity_recipe(NecessityCase::PSum);
        let out =
            necessity_growth(NecessityCase::PSum, &r.config, &g, 2.0, &[1.0, 2.0, 4.0]).unwrap();
        assert!(out.rows[1].ratio > out.rows[0].ratio);
        assert!(out.rows[2].ratio > out.rows[1].ratio);
        assert!(out.fit.slope > 0.01, "slope {}", out.fit.slope);
        let rq = necessity_recipe(NecessityCase::QSum);
        let outq =
            necessity_growth(NecessityCase::QSum, &rq.config, &g, 2.0, &[1.0, 2.0, 4.0]).unwrap();
        assert!(outq.fit.slope > 0.01, "q-side slope {}", outq.fit.slope);
        // The mismatched configuration is rejected up front.
        let wrong = necessity_recipe(NecessityCase::P4);
        assert!(
            necessity_growth(NecessityCase::PSum, &wrong.config, &g, 2.0, &[1.0, 2.0, 4.0])
                .is_err()
        );
    }

    #[test]
    fn boundedness_micro_is_reproducible() {
        let g = make_grid(1, 16, 4.0f64).unwrap();
        let w = WindowSpec::standard_gaussian();
        let cfgs = [ExponentConfig::all_two()];
        let t1 = boundedness_sweep(&cfgs, &g, &w, 2, 11).unwrap();
        let t2 = boundedness_sweep(&cfgs, &g, &w, 2, 11).unwrap();
        assert_eq!(t1.len(), 1);
        assert_eq!(t1[0].rows.len(), 2);
        for (a, b) in t1[0].rows.iter().zip(&t2[0].rows) {
            assert_eq!(a.numerator, b.numerator);
            assert!(a.ratio.unwrap() > 0.0);
            assert!(a.ratio.unwrap().is_finite());
        }
        assert_eq!(t1[0].max_ratio, t2[0].max_ratio);
    }
}

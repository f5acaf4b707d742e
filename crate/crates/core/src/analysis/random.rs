//! Seeded random fields for verification drivers: dense complex Gaussian
//! samples, and band-limited fields synthesized from Gaussian spectra so
//! that transform identities can be exercised on generic inputs.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::grid::{Axis, GridSpec, SampledField};
use crate::rng::gaussian_complex;
use crate::scalar::Scalar;
use crate::transforms::inverse_fourier;

/// Dense field of iid standard complex Gaussian samples on `axes`,
/// reproducible from `seed`.
pub fn random_gaussian_field<T: Scalar>(
    seed: u64,
    axes: Vec<Axis<T>>,
) -> Result<SampledField<T>> {
    let len: usize = axes.iter().map(|a| a.n).product();
    let values: Vec<Complex<T>> = (0..len).map(|i| gaussian_complex(seed, i as u64)).collect();
    SampledField::new(axes, values)
}

/// Band-limited random field on the grid's default axes: iid Gaussian
/// spectral coefficients are placed on the dual grid wherever every dual
/// coordinate satisfies |ξ| ≤ `fraction` × Nyquist, then transformed back.
/// The zero frequency always lies in the band, so the result is nonzero
/// for every seed; `fraction` must be in [0,1].
pub fn random_bandlimited<T: Scalar>(
    seed: u64,
    grid: &GridSpec<T>,
    fraction: f64,
) -> Result<SampledField<T>> {
    if !(0.0..=1.0).contains(&fraction) {
        return Err(Error::invalid(format!("band fraction {fraction} is outside [0,1]")));
    }
    let dual_axes: Vec<Axis<T>> = grid.default_axes()?.iter().map(|a| a.dual()).collect();
    let shape: Vec<usize> = dual_axes.iter().map(|a| a.n).collect();
    let cutoffs: Vec<T> = dual_axes
        .iter()
        .map(|a| {
            let nyquist = a.extent / T::of_f64(2.0);
            nyquist * T::of_f64(fraction) * T::of_f64(1.0 + 1e-12)
        })
        .collect();
    let len: usize = shape.iter().product();
    let mut values = vec![Complex::new(T::zero(), T::zero()); len];
    let mut idx = vec![0usize; shape.len()];
    for (flat, value) in values.iter_mut().enumerate() {
        let in_band = idx
            .iter()
            .zip(&dual_axes)
            .zip(&cutoffs)
            .all(|((&k, axis), &cut)| axis.coord(k).abs() <= cut);
        if in_band {
            *value = gaussian_complex(seed, flat as u64);
        }
        for k in (0..idx.len()).rev() {
            idx[k] += 1;
            if idx[k] < shape[k] {
                break;
            }
            idx[k] = 0;
        }
    }
    let spectrum = SampledField::new(dual_axes, values)?;
    inverse_fourier(&spectrum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::make_grid;
    use crate::transforms::fourier;

    #[test]
    fn reproducible_and_seed_sensitive() {
        let grid = make_grid(1, 32, 8.0f64).unwrap();
        let a = random_bandlimited(7, &grid, 0.5).unwrap();
        let b = random_bandlimited(7, &grid, 0.5).unwrap();
        let c = random_bandlimited(8, &grid, 0.5).unwrap();
        assert_eq!(a.values(), b.values());
        assert!(a.max_abs_diff(&c).unwrap() > 1e-6);
        assert_eq!(a.axes()[0].label, "x");
        assert!(a.max_abs() > 0.0);
    }

    #[test]
    fn spectrum_vanishes_outside_band() {
        let grid = make_grid(2, 16, 4.0f64).unwrap();
        let f = random_bandlimited(3, &grid, 0.5).unwrap();
        let spec = fourier(&f).unwrap();
        let nyquist = spec.axes()[0].extent / 2.0;
        let cut = 0.5 * nyquist * (1.0 + 1e-12);
        let shape = spec.shape();
        for (flat, v) in spec.values().iter().enumerate() {
            let (i, j) = (flat / shape[1], flat % shape[1]);
            let outside = spec.axes()[0].coord(i).abs() > cut
                || spec.axes()[1].coord(j).abs() > cut;
            if outside {
                assert!(v.norm() < 1e-12, "leakage at ({i},{j}): {v}");
            }
        }
    }

    #[test]
    fn zero_fraction_keeps_only_the_mean() {
        let grid = make_grid(1, 16, 4.0f64).unwrap();
        let f = random_bandlimited(11, &grid, 0.0).unwrap();
        let first = f.values()[0];
        assert!(first.norm() > 0.0);
        for v in f.values() {
            assert!((v - first).norm() < 1e-12 * first.norm());
        }
    }

    #[test]
    fn dense_gaussian_field_statistics() {
        let grid = make_grid(1, 4096, 4.0f64).unwrap();
        let f = random_gaussian_field(5, grid.default_axes().unwrap()).unwrap();
        let mean: Complex<f64> =
            f.values().iter().sum::<Complex<f64>>() / f.len() as f64;
        let var: f64 =
            f.values().iter().map(|v| v.norm_sqr()).sum::<f64>() / f.len() as f64;
        assert!(mean.norm() < 0.1, "mean {mean}");
        // Complex variance 2 (unit variance per component).
        assert!((var - 2.0).abs() < 0.2, "var {var}");
        assert!(random_bandlimited(1, &grid, 1.5).is_err());
    }
}

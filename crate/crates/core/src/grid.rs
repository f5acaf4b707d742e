//! Centered periodic grids and complex sampled fields.
//!
//! Every function or distribution the toolkit touches is a [`SampledField`]:
//! complex samples on a product of centered axes. An axis with `n` points and
//! extent `L` holds coordinates x_j = (j − n/2)·Δ, Δ = L/n, covering
//! [−L/2, L/2) periodically. Axis labels are semantic ("x", "xi", "t", "nu"),
//! and norms/transforms address axes by label, never by position alone, so
//! the order of integration stays explicit.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Relative tolerance used when comparing axis extents.
const EXTENT_RTOL: f64 = 1e-9;

/// One grid axis: a semantic label, a point count, and a periodic extent.
#[derive(Debug, Clone, PartialEq)]
pub struct Axis<T> {
    /// Semantic name ("x", "xi", "t", "nu", optionally numbered like "x1").
    pub label: String,
    /// Number of sample points; always even.
    pub n: usize,
    /// Period length; samples sit at (j − n/2)·spacing.
    pub extent: T,
}

impl<T: Scalar> Axis<T> {
    /// Build an axis, enforcing the even-size and positive-extent invariants.
    pub fn new(label: impl Into<String>, n: usize, extent: T) -> Result<Self> {
        if n < 2 || n % 2 != 0 {
            return Err(Error::invalid(format!("axis size {n} must be even and >= 2")));
        }
        if !(extent > T::zero()) {
            return Err(Error::invalid("axis extent must be positive"));
        }
        Ok(Axis { label: label.into(), n, extent })
    }

    /// Sample spacing Δ = extent / n.
    pub fn spacing(&self) -> T {
        self.extent / T::of_usize(self.n)
    }

    /// Coordinate of sample `j`: (j − n/2)·Δ.
    pub fn coord(&self, j: usize) -> T {
        (T::of_usize(j) - T::of_usize(self.n / 2)) * self.spacing()
    }

    /// All coordinates in index order.
    pub fn coords(&self) -> Vec<T> {
        (0..self.n).map(|j| self.coord(j)).collect()
    }

    /// The reciprocal axis: dual label, same size, extent n/extent
    /// (so its spacing is 1/extent).
    pub fn dual(&self) -> Axis<T> {
        Axis {
            label: dual_label(&self.label),
            n: self.n,
            extent: T::of_usize(self.n) / self.extent,
        }
    }

    /// True when sizes match and extents agree to relative tolerance.
    pub fn same_geometry(&self, other: &Axis<T>) -> bool {
        self.n == other.n
            && (self.extent - other.extent).abs()
                <= T::of_f64(EXTENT_RTOL) * self.extent.abs().max(other.extent.abs())
    }
}

/// Label of the Fourier-dual axis.
///
/// The canonical pairs are x↔nu and xi↔t (a spatial axis transforms to a
/// frequency axis and vice versa); numbered labels map stem-wise ("x2"↔"nu2").
/// Unknown stems toggle a `~` marker so the map stays an involution.
pub fn dual_label(label: &str) -> String {
    let split = label
        .char_indices()
        .rev()
        .take_while(|(_, c)| c.is_ascii_digit())
        .last()
        .map_or(label.len(), |(i, _)| i);
    let (stem, digits) = label.split_at(split);
    let mapped = match stem {
        "x" => "nu".to_string(),
        "nu" => "x".to_string(),
        "xi" => "t".to_string(),
        "t" => "xi".to_string(),
        other => match other.strip_suffix('~') {
            Some(base) => base.to_string(),
            None => format!("{other}~"),
        },
    };
    format!("{mapped}{digits}")
}

/// A uniform centered grid: `dim_count` axes, each with `n` points over
/// extent `extent`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec<T> {
    /// Number of scalar axes.
    pub dim_count: usize,
    /// Samples per axis (even).
    pub n: usize,
    /// Box length per axis; the box is [−extent/2, extent/2).
    pub extent: T,
}

impl<T: Scalar> GridSpec<T> {
    /// Construct a grid, validating the invariants.
    pub fn new(dim_count: usize, n: usize, extent: T) -> Result<Self> {
        if dim_count == 0 {
            return Err(Error::invalid("dim_count must be positive"));
        }
        if n < 2 || n % 2 != 0 {
            return Err(Error::invalid(format!("grid size {n} must be even and >= 2")));
        }
        if !(extent > T::zero()) {
            return Err(Error::invalid("grid extent must be positive"));
        }
        Ok(GridSpec { dim_count, n, extent })
    }

    /// Sample spacing Δ = extent / n.
    pub fn spacing(&self) -> T {
        self.extent / T::of_usize(self.n)
    }

    /// 1-D coordinate list shared by every axis.
    pub fn coords(&self) -> Vec<T> {
        (0..self.n)
            .map(|j| (T::of_usize(j) - T::of_usize(self.n / 2)) * self.spacing())
            .collect()
    }

    /// The reciprocal grid (same size, extent n/extent per axis).
    pub fn dual(&self) -> GridSpec<T> {
        GridSpec {
            dim_count: self.dim_count,
            n: self.n,
            extent: T::of_usize(self.n) / self.extent,
        }
    }

    /// Materialize the axes under the given labels.
    pub fn axes(&self, labels: &[&str]) -> Result<Vec<Axis<T>>> {
        if labels.len() != self.dim_count {
            return Err(Error::invalid(format!(
                "expected {} axis labels, got {}",
                self.dim_count,
                labels.len()
            )));
        }
        labels
            .iter()
            .map(|l| Axis::new(*l, self.n, self.extent))
            .collect()
    }

    /// Conventional labels per dimension count: (x), (x,xi), or (x,t,xi,nu);
    /// other counts number a generic stem.
    pub fn default_labels(&self) -> Vec<String> {
        match self.dim_count {
            1 => vec!["x".into()],
            2 => vec!["x".into(), "xi".into()],
            4 => vec!["x".into(), "t".into(), "xi".into(), "nu".into()],
            d => (1..=d).map(|k| format!("x{k}")).collect(),
        }
    }

    /// Materialize the axes under [`Self::default_labels`].
    pub fn default_axes(&self) -> Result<Vec<Axis<T>>> {
        let labels = self.default_labels();
        let refs: Vec<&str> = labels.iter().map(|s| s.as_str()).collect();
        self.axes(&refs)
    }
}

/// Construct a grid (thin wrapper over [`GridSpec::new`]).
pub fn make_grid<T: Scalar>(dim_count: usize, n: usize, extent: T) -> Result<GridSpec<T>> {
    GridSpec::new(dim_count, n, extent)
}

/// Axes of the phase-space square attached to a 1-D grid: the spatial axis
/// "x" with the grid's extent, and the frequency axis "xi" on its dual grid.
///
/// Symbols of operators acting on fields over `grid` live on these axes: the
/// ξ grid is pinned to the dual of the x grid so operator application never
/// resamples.
pub fn phase_space_axes<T: Scalar>(grid: &GridSpec<T>) -> Result<Vec<Axis<T>>> {
    if grid.dim_count != 1 {
        return Err(Error::invalid("phase_space_axes expects a 1-D grid"));
    }
    let x = Axis::new("x", grid.n, grid.extent)?;
    let xi = Axis { label: "xi".into(), ..x.dual() };
    Ok(vec![x, xi])
}

/// Row-major strides for a shape.
pub(crate) fn strides_of(shape: &[usize]) -> Vec<usize> {
    let mut strides = vec![1usize; shape.len()];
    for k in (0..shape.len().saturating_sub(1)).rev() {
        strides[k] = strides[k + 1] * shape[k + 1];
    }
    strides
}

/// Visit every 1-D line along `axis` of a row-major tensor: `f(base, stride)`
/// is called once per line, in a fixed deterministic order.
pub(crate) fn for_each_line(shape: &[usize], axis: usize, mut f: impl FnMut(usize, usize)) {
    let strides = strides_of(shape);
    let stride = strides[axis];
    let mut idx = vec![0usize; shape.len()];
    loop {
        let base: usize = idx.iter().zip(&strides).map(|(i, s)| i * s).sum();
        f(base, stride);
        // Increment the multi-index, skipping the traversal axis.
        let mut k = shape.len();
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            if k == axis {
                continue;
            }
            idx[k] += 1;
            if idx[k] < shape[k] {
                break;
            }
            idx[k] = 0;
        }
    }
}

/// Complex samples on a product of centered axes, row-major over the axes in
/// order.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledField<T> {
    axes: Vec<Axis<T>>,
    values: Vec<Complex<T>>,
}

impl<T: Scalar> SampledField<T> {
    /// Wrap existing samples, validating the length against the axes.
    pub fn new(axes: Vec<Axis<T>>, values: Vec<Complex<T>>) -> Result<Self> {
        let expect: usize = axes.iter().map(|a| a.n).product();
        if values.len() != expect {
            return Err(Error::invalid(format!(
                "value count {} does not match grid size {}",
                values.len(),
                expect
            )));
        }
        let mut labels: Vec<&str> = axes.iter().map(|a| a.label.as_str()).collect();
        labels.sort_unstable();
        if labels.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::invalid("axis labels must be pairwise distinct"));
        }
        Ok(SampledField { axes, values })
    }

    /// All-zeros field on the given axes.
    pub fn zeros(axes: Vec<Axis<T>>) -> Result<Self> {
        let len: usize = axes.iter().map(|a| a.n).product();
        Self::new(axes, vec![Complex::new(T::zero(), T::zero()); len])
    }

    /// Evaluate a coordinate function at every grid point (no normalization).
    pub fn from_fn(
        axes: Vec<Axis<T>>,
        f: impl Fn(&[T]) -> Complex<T>,
    ) -> Result<Self> {
        let coords: Vec<Vec<T>> = axes.iter().map(|a| a.coords()).collect();
        let shape: Vec<usize> = axes.iter().map(|a| a.n).collect();
        let len: usize = shape.iter().product();
        let mut values = Vec::with_capacity(len);
        let mut point = vec![T::zero(); axes.len()];
        let mut idx = vec![0usize; axes.len()];
        for _ in 0..len {
            for (k, &i) in idx.iter().enumerate() {
                point[k] = coords[k][i];
            }
            values.push(f(&point));
            for k in (0..idx.len()).rev() {
                idx[k] += 1;
                if idx[k] < shape[k] {
                    break;
                }
                idx[k] = 0;
            }
        }
        Self::new(axes, values)
    }

    /// Axes in order.
    pub fn axes(&self) -> &[Axis<T>] {
        &self.axes
    }

    /// Number of axes.
    pub fn dim(&self) -> usize {
        self.axes.len()
    }

    /// Points per axis, in axis order.
    pub fn shape(&self) -> Vec<usize> {
        self.axes.iter().map(|a| a.n).collect()
    }

    /// Row-major strides.
    pub fn strides(&self) -> Vec<usize> {
        strides_of(&self.shape())
    }

    /// Total number of samples.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    /// True for the (unconstructible) empty field; present for lint hygiene.
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Find an axis by label.
    pub fn axis(&self, label: &str) -> Result<(usize, &Axis<T>)> {
        self.axes
            .iter()
            .enumerate()
            .find(|(_, a)| a.label == label)
            .ok_or_else(|| Error::invalid(format!("no axis labeled '{label}'")))
    }

    /// Samples in row-major order.
    pub fn values(&self) -> &[Complex<T>] {
        &self.values
    }

    /// Mutable samples (for in-place transforms).
    pub fn values_mut(&mut self) -> &mut [Complex<T>] {
        &mut self.values
    }

    /// Consume into the raw sample vector.
    pub fn into_values(self) -> Vec<Complex<T>> {
        self.values
    }

    /// Replace axis labels (geometry unchanged).
    pub fn relabel(mut self, labels: &[&str]) -> Result<Self> {
        if labels.len() != self.axes.len() {
            return Err(Error::invalid("relabel needs one label per axis"));
        }
        for (a, l) in self.axes.iter_mut().zip(labels) {
            a.label = (*l).to_string();
        }
        SampledField::new(self.axes, self.values)
    }

    /// Pointwise map of the samples.
    pub fn map(mut self, f: impl Fn(Complex<T>) -> Complex<T>) -> Self {
        for v in &mut self.values {
            *v = f(*v);
        }
        self
    }

    /// Complex conjugate of every sample.
    pub fn conj(self) -> Self {
        self.map(|v| v.conj())
    }

    /// Multiply every sample by a constant.
    pub fn scale(self, c: Complex<T>) -> Self {
        self.map(|v| v * c)
    }

    /// Pointwise product with a field on identical axes.
    pub fn mul_pointwise(mut self, other: &SampledField<T>) -> Result<Self> {
        self.check_same_axes(other)?;
        for (v, w) in self.values.iter_mut().zip(&other.values) {
            *v *= *w;
        }
        Ok(self)
    }

    /// Pointwise difference with a field on identical axes.
    pub fn sub(mut self, other: &SampledField<T>) -> Result<Self> {
        self.check_same_axes(other)?;
        for (v, w) in self.values.iter_mut().zip(&other.values) {
            *v -= *w;
        }
        Ok(self)
    }

    /// Error unless the two fields share labels and geometry, in order.
    pub fn check_same_axes(&self, other: &SampledField<T>) -> Result<()> {
        if self.axes.len() != other.axes.len()
            || self
                .axes
                .iter()
                .zip(&other.axes)
                .any(|(a, b)| a.label != b.label || !a.same_geometry(b))
        {
            return Err(Error::mismatch(format!(
                "fields on different axes: {:?} vs {:?}",
                self.axes.iter().map(|a| &a.label).collect::<Vec<_>>(),
                other.axes.iter().map(|a| &a.label).collect::<Vec<_>>()
            )));
        }
        Ok(())
    }

    /// Product of the axis spacings (the Riemann measure of one cell).
    pub fn cell_measure(&self) -> T {
        self.axes
            .iter()
            .map(|a| a.spacing())
            .fold(T::one(), |acc, d| acc * d)
    }

    /// Riemann quadrature: Δ^d · Σ values.
    pub fn integrate(&self) -> Complex<T> {
        let sum = self
            .values
            .iter()
            .fold(Complex::new(T::zero(), T::zero()), |acc, v| acc + v);
        sum * self.cell_measure()
    }

    /// L² norm under the quadrature measure.
    pub fn l2_norm(&self) -> T {
        let sum: T = self.values.iter().map(|v| v.norm_sqr()).sum();
        (sum * self.cell_measure()).sqrt()
    }

    /// Inner product ⟨self, other⟩ = ∫ self · conj(other), linear in the
    /// first argument and antilinear in the second.
    pub fn inner(&self, other: &SampledField<T>) -> Result<Complex<T>> {
        self.check_same_axes(other)?;
        let sum = self
            .values
            .iter()
            .zip(&other.values)
            .fold(Complex::new(T::zero(), T::zero()), |acc, (a, b)| acc + a * b.conj());
        Ok(sum * self.cell_measure())
    }

    /// Largest sample magnitude.
    pub fn max_abs(&self) -> T {
        self.values
            .iter()
            .map(|v| v.norm())
            .fold(T::zero(), |a, b| a.max(b))
    }

    /// Largest pointwise difference |self − other|.
    pub fn max_abs_diff(&self, other: &SampledField<T>) -> Result<T> {
        self.check_same_axes(other)?;
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(T::zero(), |m, d| m.max(d)))
    }

    /// Circular shift: output[j] = input[j − s mod n] per axis, i.e. a
    /// translation by +s·Δ grid steps along each axis.
    pub fn roll(&self, shifts: &[isize]) -> Result<Self> {
        if shifts.len() != self.axes.len() {
            return Err(Error::invalid("roll needs one shift per axis"));
        }
        let shape = self.shape();
        let strides = self.strides();
        let mut out = vec![Complex::new(T::zero(), T::zero()); self.values.len()];
        // Precompute per-axis source index tables.
        let tables: Vec<Vec<usize>> = shape
            .iter()
            .zip(shifts)
            .map(|(&n, &s)| {
                (0..n)
                    .map(|j| (j as isize - s).rem_euclid(n as isize) as usize)
                    .collect()
            })
            .collect();
        let mut idx = vec![0usize; shape.len()];
        for (flat, slot) in out.iter_mut().enumerate() {
            let src: usize = idx
                .iter()
                .enumerate()
                .map(|(k, &i)| tables[k][i] * strides[k])
                .sum();
            *slot = self.values[src];
            let _ = flat;
            for k in (0..idx.len()).rev() {
                idx[k] += 1;
                if idx[k] < shape[k] {
                    break;
                }
                idx[k] = 0;
            }
        }
        SampledField::new(self.axes.clone(), out)
    }

    /// Coordinate reflection x ↦ −x on every axis: out[j] = in[(n−j) mod n]
    /// (periodic, so the leftmost sample −n/2·Δ is its own mirror).
    pub fn reflect(&self) -> Self {
        let shape = self.shape();
        let strides = self.strides();
        let mut out = vec![Complex::new(T::zero(), T::zero()); self.values.len()];
        let mut idx = vec![0usize; shape.len()];
        for slot in out.iter_mut() {
            let src: usize = idx
                .iter()
                .enumerate()
                .map(|(k, &i)| ((shape[k] - i) % shape[k]) * strides[k])
                .sum();
            *slot = self.values[src];
            for k in (0..idx.len()).rev() {
                idx[k] += 1;
                if idx[k] < shape[k] {
                    break;
                }
                idx[k] = 0;
            }
        }
        SampledField {
            axes: self.axes.clone(),
            values: out,
        }
    }
}

/// Evaluate a coordinate function on a uniform grid under the given labels.
pub fn sample<T: Scalar>(
    grid: &GridSpec<T>,
    labels: &[&str],
    f: impl Fn(&[T]) -> Complex<T>,
) -> Result<SampledField<T>> {
    SampledField::from_fn(grid.axes(labels)?, f)
}

/// Riemann quadrature of a field: Δ^d · Σ values.
pub fn integrate<T: Scalar>(field: &SampledField<T>) -> Complex<T> {
    field.integrate()
}

/// Tensor product: (a⊗b)(u,v) = a(u)·b(v); axis order is a's axes then b's.
pub fn tensor<T: Scalar>(a: &SampledField<T>, b: &SampledField<T>) -> Result<SampledField<T>> {
    let mut axes = a.axes.clone();
    axes.extend(b.axes.iter().cloned());
    let mut values = Vec::with_capacity(a.len() * b.len());
    for va in &a.values {
        for vb in &b.values {
            values.push(va * vb);
        }
    }
    SampledField::new(axes, values)
}

/// Shear of a two-axis field: output(x,t) = F(x−t, x), with periodic index
/// arithmetic for x−t. Axis labels are preserved.
pub fn coordinate_shear<T: Scalar>(f: &SampledField<T>) -> Result<SampledField<T>> {
    if f.dim() != 2 {
        return Err(Error::invalid("coordinate_shear expects exactly two axes"));
    }
    let [a, b] = [&f.axes[0], &f.axes[1]];
    if !a.same_geometry(&Axis { label: a.label.clone(), ..b.clone() }) {
        return Err(Error::invalid("coordinate_shear axes must share geometry"));
    }
    let n = a.n;
    let half = n / 2;
    let mut out = vec![Complex::new(T::zero(), T::zero()); f.len()];
    for i in 0..n {
        for j in 0..n {
            let xmt = (i + n + half - j) % n; // index of x − t
            out[i * n + j] = f.values[xmt * n + i];
        }
    }
    SampledField::new(f.axes.clone(), out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn grid_constructor_validates() {
        assert!(make_grid(1, 8, 8.0).is_ok());
        assert!(make_grid(1, 7, 8.0).is_err());
        assert!(make_grid(1, 8, -1.0).is_err());
        assert!(make_grid(0, 8, 8.0).is_err());
    }

    #[test]
    fn centered_coordinates() {
        // (1, 8, 8) → Δ=1, points {−4,…,3}.
        let g = make_grid(1, 8, 8.0).unwrap();
        assert_eq!(g.spacing(), 1.0);
        assert_eq!(g.coords(), vec![-4.0, -3.0, -2.0, -1.0, 0.0, 1.0, 2.0, 3.0]);
        // (2, 4, 2) → Δ=0.5, 16 points.
        let g2 = make_grid(2, 4, 2.0).unwrap();
        assert_eq!(g2.spacing(), 0.5);
        let f = sample(&g2, &["x", "xi"], |_| c(1.0, 0.0)).unwrap();
        assert_eq!(f.len(), 16);
    }

    #[test]
    fn sample_hits_grid_points() {
        // x ↦ x on (1,4,4) → (−2,−1,0,1).
        let g = make_grid(1, 4, 4.0).unwrap();
        let f = sample(&g, &["x"], |p| c(p[0], 0.0)).unwrap();
        let re: Vec<f64> = f.values().iter().map(|v| v.re).collect();
        assert_eq!(re, vec![-2.0, -1.0, 0.0, 1.0]);
        // e^{−πx²} peaks at the x=0 grid point.
        let g = make_grid(1, 64, 16.0).unwrap();
        let f = sample(&g, &["x"], |p| c((-std::f64::consts::PI * p[0] * p[0]).exp(), 0.0))
            .unwrap();
        assert_eq!(f.max_abs(), 1.0);
    }

    #[test]
    fn quadrature() {
        let g = make_grid(1, 8, 8.0).unwrap();
        let ones = sample(&g, &["x"], |_| c(1.0, 0.0)).unwrap();
        assert!((integrate(&ones).re - 8.0).abs() < 1e-14);
        // Gaussian integral.
        let g = make_grid(1, 256, 16.0).unwrap();
        let gauss = sample(&g, &["x"], |p| c((-std::f64::consts::PI * p[0] * p[0]).exp(), 0.0))
            .unwrap();
        assert!((integrate(&gauss).re - 1.0).abs() < 1e-10);
        // Odd function on the centered grid.
        let odd = sample(&g, &["x"], |p| {
            c(p[0] * (-std::f64::consts::PI * p[0] * p[0]).exp(), 0.0)
        })
        .unwrap();
        assert!(integrate(&odd).re.abs() < 1e-12);
    }

    #[test]
    fn quadrature_linearity() {
        let g = make_grid(1, 16, 4.0).unwrap();
        let a = sample(&g, &["x"], |p| c(p[0], 0.5)).unwrap();
        let b = sample(&g, &["x"], |p| c(p[0] * p[0], -1.0)).unwrap();
        let lhs = integrate(
            &a.clone()
                .scale(c(2.0, 0.0))
                .sub(&b.clone().scale(c(3.0, 0.0)))
                .unwrap(),
        );
        let rhs = integrate(&a) * 2.0 - integrate(&b) * 3.0;
        assert!((lhs - rhs).norm() < 1e-12);
    }

    #[test]
    fn tensor_product() {
        let g = make_grid(1, 4, 4.0).unwrap();
        let a = sample(&g, &["x"], |p| c(p[0], 0.0)).unwrap();
        let b = sample(&g, &["xi"], |p| c(p[0], 0.0)).unwrap();
        let t = tensor(&a, &b).unwrap();
        assert_eq!(t.dim(), 2);
        assert_eq!(t.values()[0], c(4.0, 0.0)); // (−2)·(−2)
        // Label collision is rejected.
        let b2 = sample(&g, &["x"], |p| c(p[0], 0.0)).unwrap();
        assert!(tensor(&a, &b2).is_err());
    }

    #[test]
    fn shear_formula_and_inverse() {
        let g = make_grid(1, 4, 4.0).unwrap();
        // F(u,v) = u: sheared output(x,t) = x − t wrapped to the grid.
        let u = sample(&g, &["x"], |p| c(p[0], 0.0)).unwrap();
        let ones = sample(&g, &["t"], |_| c(1.0, 0.0)).unwrap();
        let f = tensor(&u, &ones).unwrap();
        let sheared = coordinate_shear(&f).unwrap();
        // At (x,t) = (1,1): x−t = 0.
        let (ix, it) = (3usize, 3usize); // coordinate 1 has index 3 on this grid
        assert_eq!(sheared.values()[ix * 4 + it], c(0.0, 0.0));
        // Constant field is unchanged.
        let cfield = SampledField::from_fn(f.axes().to_vec(), |_| c(1.0, 0.0)).unwrap();
        let csheared = coordinate_shear(&cfield).unwrap();
        assert_eq!(cfield.values(), csheared.values());
        // The shear is an index bijection: invert it explicitly.
        let n = 4usize;
        let mut recovered = vec![c(0.0, 0.0); f.len()];
        for i in 0..n {
            for j in 0..n {
                let xmt = (i + n + n / 2 - j) % n;
                recovered[xmt * n + i] = sheared.values()[i * n + j];
            }
        }
        assert_eq!(recovered, f.values());
    }

    #[test]
    fn dual_labels_are_involutive() {
        for l in ["x", "xi", "t", "nu", "x1", "nu7", "weird", "weird3"] {
            assert_eq!(dual_label(&dual_label(l)), l, "label {l}");
        }
        assert_eq!(dual_label("x"), "nu");
        assert_eq!(dual_label("xi"), "t");
        assert_eq!(dual_label("x2"), "nu2");
    }

    #[test]
    fn roll_translates_indices() {
        let g = make_grid(1, 4, 4.0).unwrap();
        let f = sample(&g, &["x"], |p| c(p[0], 0.0)).unwrap();
        let r = f.roll(&[1]).unwrap();
        let re: Vec<f64> = r.values().iter().map(|v| v.re).collect();
        assert_eq!(re, vec![1.0, -2.0, -1.0, 0.0]);
    }

    #[test]
    fn phase_space_axes_pin_dual_grid() {
        let g = make_grid(1, 32, 8.0).unwrap();
        let axes = phase_space_axes(&g).unwrap();
        assert_eq!(axes[0].label, "x");
        assert_eq!(axes[1].label, "xi");
        assert_eq!(axes[1].extent, 4.0); // 32/8
    }
}

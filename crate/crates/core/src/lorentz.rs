//! Real and complex Lorentz transformations in dimension `s`.
//!
//! A (complex) Lorentz matrix satisfies the metric condition
//! `T(L) G L = G`, with the plain transpose (no conjugation): over the
//! complex numbers this is the complex orthogonal group viewed in the
//! Minkowski signature. There is no canonical global parametrization of the
//! identity component for general `s`; this module generates elements as
//! finite products of per-plane rotations and boosts with complex
//! parameters, which suffices to generate the identity component. For
//! `s = 2` the whole proper complex group is the one-parameter scaling
//! family acting on light-cone coordinates as `u -> lambda u`,
//! `v -> v / lambda`; certificates in that dimension store the scalar
//! `lambda` rather than the matrix, which is smaller and exactly
//! re-checkable.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::geometry::{ComplexVector, Configuration, Metric, VerdictState};
use crate::permutation::Permutation;
use crate::{Result, DEFAULT_LORENTZ_TOL};

/// Result of checking the metric condition on a candidate matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricCheck {
    pub ok: bool,
    /// Largest entrywise deviation `|(T(L) G L - G)_{ij}|`.
    pub max_deviation: f64,
}

/// Checks `T(L) G L = G` entrywise against `tol`.
pub fn verify_lorentz(matrix: &DMatrix<Complex64>, g: &Metric, tol: f64) -> Result<MetricCheck> {
    let s = g.dim();
    if matrix.nrows() != s || matrix.ncols() != s {
        return Err(Error::DimensionMismatch {
            expected: s,
            got: matrix.nrows().max(matrix.ncols()),
        });
    }
    let gm = metric_matrix(g);
    let residual = matrix.transpose() * &gm * matrix - gm;
    let max_deviation = residual.iter().map(|c| c.norm()).fold(0.0, f64::max);
    Ok(MetricCheck { ok: max_deviation <= tol, max_deviation })
}

fn metric_matrix(g: &Metric) -> DMatrix<Complex64> {
    DMatrix::from_fn(g.dim(), g.dim(), |i, j| {
        if i == j {
            Complex64::new(g.sign(i), 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

/// A verified Lorentz transformation with cached structure flags.
#[derive(Debug, Clone, PartialEq)]
pub struct LorentzTransform {
    s: usize,
    matrix: DMatrix<Complex64>,
    tolerance: f64,
    real: bool,
    proper: bool,
    orthochronous: bool,
}

impl LorentzTransform {
    /// Builds a transform, rejecting matrices that violate the metric
    /// condition beyond `tol`.
    pub fn new(matrix: DMatrix<Complex64>, g: &Metric, tol: f64) -> Result<Self> {
        let check = verify_lorentz(&matrix, g, tol)?;
        if !check.ok {
            return Err(Error::NotLorentz { deviation: check.max_deviation, tolerance: tol });
        }
        Ok(Self::from_matrix_unchecked(matrix, tol))
    }

    /// Convenience constructor from row data.
    pub fn from_rows(rows: Vec<Vec<Complex64>>, g: &Metric, tol: f64) -> Result<Self> {
        let s = g.dim();
        if rows.len() != s || rows.iter().any(|r| r.len() != s) {
            return Err(Error::DimensionMismatch { expected: s, got: rows.len() });
        }
        let matrix = DMatrix::from_fn(s, s, |i, j| rows[i][j]);
        Self::new(matrix, g, tol)
    }

    pub fn identity(g: &Metric) -> Self {
        Self::from_matrix_unchecked(DMatrix::identity(g.dim(), g.dim()), DEFAULT_LORENTZ_TOL)
    }

    // Group operations on already-verified elements stay exactly Lorentz up
    // to rounding, so they skip the hard gate and just recompute flags.
    fn from_matrix_unchecked(matrix: DMatrix<Complex64>, tolerance: f64) -> Self {
        let s = matrix.nrows();
        let real = matrix.iter().map(|c| c.im.abs()).fold(0.0, f64::max) <= tolerance;
        let det = matrix.clone().determinant();
        let proper = (det - Complex64::new(1.0, 0.0)).norm() <= tolerance;
        let orthochronous = real && matrix[(0, 0)].re >= 1.0 - tolerance;
        LorentzTransform { s, matrix, tolerance, real, proper, orthochronous }
    }

    pub fn dim(&self) -> usize {
        self.s
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn is_real(&self) -> bool {
        self.real
    }

    pub fn is_proper(&self) -> bool {
        self.proper
    }

    pub fn is_orthochronous(&self) -> bool {
        self.orthochronous
    }

    /// Re-runs the metric check on this transform's matrix.
    pub fn verify(&self, g: &Metric, tol: f64) -> Result<MetricCheck> {
        verify_lorentz(&self.matrix, g, tol)
    }

    /// Matrix product `self * other` (apply `other` first).
    pub fn compose(&self, other: &LorentzTransform) -> Result<LorentzTransform> {
        if self.s != other.s {
            return Err(Error::DimensionMismatch { expected: self.s, got: other.s });
        }
        let matrix = &self.matrix * &other.matrix;
        Ok(Self::from_matrix_unchecked(matrix, self.tolerance.max(other.tolerance)))
    }

    /// Group inverse `G T(L) G`.
    pub fn inverse(&self) -> LorentzTransform {
        let s = self.s;
        let m = DMatrix::from_fn(s, s, |i, j| {
            let gi = if i == 0 { 1.0 } else { -1.0 };
            let gj = if j == 0 { 1.0 } else { -1.0 };
            gi * gj * self.matrix[(j, i)]
        });
        Self::from_matrix_unchecked(m, self.tolerance)
    }
}

/// Boost in the `(0, axis)` plane with the given rapidity; real, proper and
/// orthochronous.
pub fn real_boost(g: &Metric, axis: usize, rapidity: f64) -> Result<LorentzTransform> {
    let s = g.dim();
    if axis == 0 || axis >= s {
        return Err(Error::InvalidAxis { axis, max: s - 1 });
    }
    let (ch, sh) = (rapidity.cosh(), rapidity.sinh());
    let mut m = DMatrix::<Complex64>::identity(s, s);
    m[(0, 0)] = Complex64::new(ch, 0.0);
    m[(0, axis)] = Complex64::new(sh, 0.0);
    m[(axis, 0)] = Complex64::new(sh, 0.0);
    m[(axis, axis)] = Complex64::new(ch, 0.0);
    Ok(LorentzTransform::from_matrix_unchecked(m, DEFAULT_LORENTZ_TOL))
}

/// Rotation (space-space plane) or boost (time-space plane) block with a
/// complex parameter. Proper by construction.
pub fn complex_rotation(g: &Metric, plane: (usize, usize), angle: Complex64) -> Result<LorentzTransform> {
    let s = g.dim();
    let (i, j) = plane;
    if i >= j || j >= s {
        return Err(Error::InvalidPlane { i, j, s });
    }
    let mut m = DMatrix::<Complex64>::identity(s, s);
    if i == 0 {
        let (ch, sh) = (angle.cosh(), angle.sinh());
        m[(0, 0)] = ch;
        m[(0, j)] = sh;
        m[(j, 0)] = sh;
        m[(j, j)] = ch;
    } else {
        let (cos, sin) = (angle.cos(), angle.sin());
        m[(i, i)] = cos;
        m[(i, j)] = -sin;
        m[(j, i)] = sin;
        m[(j, j)] = cos;
    }
    Ok(LorentzTransform::from_matrix_unchecked(m, DEFAULT_LORENTZ_TOL))
}

/// The `s = 2` proper complex Lorentz element acting on light-cone
/// coordinates as `u -> lambda u`, `v -> v / lambda`.
///
/// In standard coordinates the matrix is
/// `[[(l + 1/l)/2, (l - 1/l)/2], [(l - 1/l)/2, (l + 1/l)/2]]`; determinant 1.
pub fn s2_scaling(lambda: Complex64) -> Result<LorentzTransform> {
    if lambda.norm() == 0.0 {
        return Err(Error::ZeroScaling);
    }
    let inv = Complex64::new(1.0, 0.0) / lambda;
    let a = (lambda + inv) / 2.0;
    let b = (lambda - inv) / 2.0;
    let m = DMatrix::from_row_slice(2, 2, &[a, b, b, a]);
    Ok(LorentzTransform::from_matrix_unchecked(m, DEFAULT_LORENTZ_TOL))
}

/// Applies the transform to every point; field statistics are untouched.
pub fn apply(transform: &LorentzTransform, c: &Configuration) -> Result<Configuration> {
    if transform.dim() != c.s() {
        return Err(Error::DimensionMismatch { expected: c.s(), got: transform.dim() });
    }
    let points = c
        .points()
        .iter()
        .map(|p| {
            let v = DVector::from_column_slice(p.components());
            let out = &transform.matrix * v;
            ComplexVector::new(out.iter().copied().collect())
        })
        .collect();
    Configuration::new(c.s(), points, c.fields().to_vec())
}

/// Seeded random element of the restricted (real, proper, orthochronous)
/// group: a product of boosts and space rotations. Deterministic in `seed`.
pub fn random_restricted(g: &Metric, seed: u64, max_rapidity: f64) -> Result<LorentzTransform> {
    if max_rapidity.is_nan() || max_rapidity <= 0.0 {
        return Err(Error::OutOfRange("max_rapidity must be positive"));
    }
    let s = g.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut acc = LorentzTransform::identity(g);
    for _ in 0..s {
        let axis = rng.gen_range(1..s);
        let rapidity = rng.gen_range(-max_rapidity..=max_rapidity);
        acc = acc.compose(&real_boost(g, axis, rapidity)?)?;
        if s >= 3 {
            let i = rng.gen_range(1..s - 1);
            let j = rng.gen_range(i + 1..s);
            let angle = Complex64::new(rng.gen_range(0.0..std::f64::consts::TAU), 0.0);
            acc = acc.compose(&complex_rotation(g, (i, j), angle)?)?;
        }
    }
    Ok(acc)
}

/// The transform part of a certificate: a bare scalar in the `s = 2`
/// encoding, a full matrix otherwise.
#[derive(Debug, Clone, PartialEq)]
pub enum TransformWitness {
    Scaling(Complex64),
    Matrix(LorentzTransform),
}

impl TransformWitness {
    pub fn to_transform(&self) -> Result<LorentzTransform> {
        match self {
            TransformWitness::Scaling(lambda) => s2_scaling(*lambda),
            TransformWitness::Matrix(t) => Ok(t.clone()),
        }
    }
}

/// A re-checkable witness attached to an Inside verdict: the permutation is
/// applied first, then the transform, after which the configuration must lie
/// in the tube.
#[derive(Debug, Clone, PartialEq)]
pub struct Certificate {
    pub transform: TransformWitness,
    pub permutation: Option<Permutation>,
}

impl Certificate {
    pub fn scaling(lambda: Complex64) -> Self {
        Certificate { transform: TransformWitness::Scaling(lambda), permutation: None }
    }

    pub fn matrix(t: LorentzTransform) -> Self {
        Certificate { transform: TransformWitness::Matrix(t), permutation: None }
    }

    pub fn with_permutation(mut self, p: Permutation) -> Self {
        self.permutation = Some(p);
        self
    }

    /// Re-verification: permute, transform, and test tube membership.
    pub fn verify(&self, c: &Configuration, eps: f64) -> Result<bool> {
        let permuted;
        let base = match &self.permutation {
            Some(p) => {
                permuted = crate::permutation::permute_config(c, p)?;
                &permuted
            }
            None => c,
        };
        let t = self.transform.to_transform()?;
        let moved = apply(&t, base)?;
        Ok(crate::domains::in_tube(&moved, eps)?.state == VerdictState::Inside)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry;

    fn g2() -> Metric {
        Metric::new(2).unwrap()
    }

    fn c64(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn identity_verifies() {
        let m = DMatrix::<Complex64>::identity(2, 2);
        let check = verify_lorentz(&m, &g2(), 1e-12).unwrap();
        assert!(check.ok);
        assert_eq!(check.max_deviation, 0.0);
    }

    #[test]
    fn scaling_matrix_is_not_lorentz() {
        let m = DMatrix::from_row_slice(2, 2, &[c64(1.0, 0.0), c64(0.0, 0.0), c64(0.0, 0.0), c64(2.0, 0.0)]);
        let check = verify_lorentz(&m, &g2(), 1e-12).unwrap();
        assert!(!check.ok);
        assert!(LorentzTransform::new(m, &g2(), 1e-12).is_err());
    }

    #[test]
    fn boost_half_rapidity_verifies() {
        let b = real_boost(&g2(), 1, 0.5).unwrap();
        let check = b.verify(&g2(), 1e-12).unwrap();
        assert!(check.ok, "deviation {}", check.max_deviation);
        assert!(b.is_real() && b.is_proper() && b.is_orthochronous());
    }

    #[test]
    fn boost_zero_is_identity() {
        let b = real_boost(&g2(), 1, 0.0).unwrap();
        assert_eq!(b.matrix(), &DMatrix::<Complex64>::identity(2, 2));
    }

    #[test]
    fn boost_matrix_entries() {
        let b = real_boost(&g2(), 1, 1.0).unwrap();
        let (ch, sh) = (1.0f64.cosh(), 1.0f64.sinh());
        assert_eq!(b.matrix()[(0, 0)], c64(ch, 0.0));
        assert_eq!(b.matrix()[(0, 1)], c64(sh, 0.0));
        assert!(b.verify(&g2(), 1e-12).unwrap().ok);
    }

    #[test]
    fn boost_addition_law() {
        let a = real_boost(&g2(), 1, 0.7).unwrap();
        let b = real_boost(&g2(), 1, -0.3).unwrap();
        let ab = a.compose(&b).unwrap();
        let direct = real_boost(&g2(), 1, 0.4).unwrap();
        let dev = (ab.matrix() - direct.matrix())
            .iter()
            .map(|c| c.norm())
            .fold(0.0, f64::max);
        assert!(dev < 1e-10, "deviation {dev}");
    }

    #[test]
    fn boost_rejects_bad_axis() {
        assert!(real_boost(&g2(), 0, 1.0).is_err());
        assert!(real_boost(&g2(), 2, 1.0).is_err());
    }

    #[test]
    fn complex_rotation_zero_is_identity() {
        let r = complex_rotation(&g2(), (0, 1), c64(0.0, 0.0)).unwrap();
        assert_eq!(r.matrix(), &DMatrix::<Complex64>::identity(2, 2));
    }

    #[test]
    fn imaginary_rapidity_rotates_time_into_imaginary_space() {
        // cosh(i pi/2) = 0, sinh(i pi/2) = i: (1, 0) maps to (0, i)
        let r = complex_rotation(&g2(), (0, 1), c64(0.0, std::f64::consts::FRAC_PI_2)).unwrap();
        let c = Configuration::bosonic(2, vec![ComplexVector::from_pairs(&[(1.0, 0.0), (0.0, 0.0)])]).unwrap();
        let moved = apply(&r, &c).unwrap();
        let p = moved.points()[0].components();
        assert!((p[0] - c64(0.0, 0.0)).norm() < 1e-15);
        assert!((p[1] - c64(0.0, 1.0)).norm() < 1e-15);
        assert!(r.verify(&g2(), 1e-12).unwrap().ok);
    }

    #[test]
    fn complex_rotation_products_close() {
        let g = Metric::new(3).unwrap();
        let a = complex_rotation(&g, (0, 1), c64(0.4, 0.9)).unwrap();
        let b = complex_rotation(&g, (1, 2), c64(-1.1, 0.3)).unwrap();
        let prod = a.compose(&b).unwrap();
        let check = prod.verify(&g, 1e-10).unwrap();
        assert!(check.ok, "deviation {}", check.max_deviation);
        assert!(prod.is_proper());
    }

    #[test]
    fn s2_scaling_identity_and_boost() {
        let id = s2_scaling(c64(1.0, 0.0)).unwrap();
        assert_eq!(id.matrix(), &DMatrix::<Complex64>::identity(2, 2));

        let lam = s2_scaling(c64(0.3f64.exp(), 0.0)).unwrap();
        let boost = real_boost(&g2(), 1, 0.3).unwrap();
        let dev = (lam.matrix() - boost.matrix()).iter().map(|c| c.norm()).fold(0.0, f64::max);
        assert!(dev < 1e-12, "deviation {dev}");
    }

    #[test]
    fn s2_scaling_squares_to_minus_one() {
        let i = s2_scaling(c64(0.0, 1.0)).unwrap();
        let sq = i.compose(&i).unwrap();
        let minus = s2_scaling(c64(-1.0, 0.0)).unwrap();
        let dev = (sq.matrix() - minus.matrix()).iter().map(|c| c.norm()).fold(0.0, f64::max);
        assert!(dev < 1e-12, "deviation {dev}");
    }

    #[test]
    fn s2_scaling_rejects_zero() {
        assert!(matches!(s2_scaling(c64(0.0, 0.0)), Err(Error::ZeroScaling)));
    }

    #[test]
    fn s2_scaling_homomorphism() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let l = c64(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
            let m = c64(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
            if l.norm() < 0.1 || m.norm() < 0.1 {
                continue;
            }
            let lhs = s2_scaling(l).unwrap().compose(&s2_scaling(m).unwrap()).unwrap();
            let rhs = s2_scaling(l * m).unwrap();
            let dev = (lhs.matrix() - rhs.matrix()).iter().map(|c| c.norm()).fold(0.0, f64::max);
            assert!(dev < 1e-10, "deviation {dev}");
        }
    }

    #[test]
    fn apply_identity_is_noop() {
        let c = Configuration::bosonic(
            2,
            vec![
                ComplexVector::from_pairs(&[(0.5, -1.0), (0.2, 0.1)]),
                ComplexVector::from_pairs(&[(0.0, 0.0), (1.0, 2.0)]),
            ],
        )
        .unwrap();
        let id = LorentzTransform::identity(&g2());
        assert_eq!(apply(&id, &c).unwrap(), c);
    }

    #[test]
    fn apply_preserves_difference_squares() {
        let g = Metric::new(4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let pts: Vec<ComplexVector> = (0..4)
            .map(|_| {
                ComplexVector::new(
                    (0..4)
                        .map(|_| c64(rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0)))
                        .collect(),
                )
            })
            .collect();
        let c = Configuration::bosonic(4, pts).unwrap();
        let t = random_restricted(&g, 9, 1.5).unwrap();
        let moved = apply(&t, &c).unwrap();
        let before = geometry::differences(&c).unwrap();
        let after = geometry::differences(&moved).unwrap();
        for (a, b) in before.iter().zip(&after) {
            let sa = geometry::square(a, &g).unwrap();
            let sb = geometry::square(b, &g).unwrap();
            assert!((sa - sb).norm() < 1e-10 * (1.0 + sa.norm()), "{sa} vs {sb}");
        }
    }

    #[test]
    fn s2_scaling_acts_on_lightcone_coords() {
        let lambda = c64(0.8, 0.6);
        let t = s2_scaling(lambda).unwrap();
        let x = geometry::from_lightcone_coords(c64(1.0, 0.0), c64(-1.0, 0.0));
        let c = Configuration::bosonic(2, vec![x]).unwrap();
        let moved = apply(&t, &c).unwrap();
        let (u, v) = geometry::lightcone_coords(&moved.points()[0]).unwrap();
        assert!((u - lambda).norm() < 1e-12);
        assert!((v - (-1.0 / lambda)).norm() < 1e-12);
    }

    #[test]
    fn random_restricted_is_deterministic() {
        let g = Metric::new(3).unwrap();
        let a = random_restricted(&g, 42, 2.0).unwrap();
        let b = random_restricted(&g, 42, 2.0).unwrap();
        assert_eq!(a.matrix(), b.matrix());
        let c = random_restricted(&g, 43, 2.0).unwrap();
        assert_ne!(a.matrix(), c.matrix());
    }

    #[test]
    fn random_restricted_verifies_and_is_orthochronous() {
        let g = Metric::new(2).unwrap();
        let t = random_restricted(&g, 1, 2.0).unwrap();
        assert!(t.verify(&g, 1e-10).unwrap().ok);

        let g4 = Metric::new(4).unwrap();
        let t = random_restricted(&g4, 2, 2.0).unwrap();
        assert!(t.verify(&g4, 1e-10).unwrap().ok);
        assert!(t.matrix()[(0, 0)].re >= 1.0);
        assert!(t.is_real() && t.is_proper() && t.is_orthochronous());
    }

    #[test]
    fn group_closure_at_doubled_tolerance() {
        let g = Metric::new(4).unwrap();
        for seed in 0..20u64 {
            let a = random_restricted(&g, seed, 2.0).unwrap();
            let b = random_restricted(&g, seed + 100, 2.0).unwrap();
            let prod = a.compose(&b).unwrap();
            let check = prod.verify(&g, 2.0 * DEFAULT_LORENTZ_TOL).unwrap();
            assert!(check.ok, "seed {seed}: deviation {}", check.max_deviation);
        }
    }

    #[test]
    fn inverse_is_metric_conjugate_transpose() {
        let g = Metric::new(3).unwrap();
        for seed in 0..20u64 {
            let t = random_restricted(&g, seed, 2.0).unwrap();
            let inv = t.inverse();
            assert!(inv.verify(&g, 1e-10).unwrap().ok);
            let prod = t.compose(&inv).unwrap();
            let dev = (prod.matrix() - DMatrix::<Complex64>::identity(3, 3))
                .iter()
                .map(|c| c.norm())
                .fold(0.0, f64::max);
            assert!(dev < 1e-10, "seed {seed}: deviation {dev}");
        }
    }
}

//! Complexified Minkowski space: vectors, metric products, cone tests and
//! difference coordinates.
//!
//! The metric is diagonal with signature `(+1, -1, ..., -1)`: one time
//! dimension (component 0) and `s - 1` space dimensions. All cone and
//! spacelike tests are three-valued with an explicit epsilon band: the
//! domains in question are open sets, so floating-point boundary cases are
//! flagged as [`VerdictState::Boundary`] rather than silently classified.

use num_complex::Complex64;

use crate::error::Error;
use crate::lorentz::Certificate;
use crate::Result;

/// The diagonal space-time metric in dimension `s >= 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Metric {
    s: usize,
}

impl Metric {
    pub fn new(s: usize) -> Result<Self> {
        if s < 2 {
            return Err(Error::InvalidDimension(s));
        }
        Ok(Metric { s })
    }

    pub fn dim(&self) -> usize {
        self.s
    }

    /// Diagonal entry `g_{mu mu}`: `+1` for the time component, `-1` otherwise.
    pub fn sign(&self, index: usize) -> f64 {
        if index == 0 {
            1.0
        } else {
            -1.0
        }
    }
}

/// A real space-time vector; component 0 is the time component.
#[derive(Debug, Clone, PartialEq)]
pub struct RealVector(Vec<f64>);

impl RealVector {
    pub fn new(components: Vec<f64>) -> Self {
        RealVector(components)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn components(&self) -> &[f64] {
        &self.0
    }

    pub fn time(&self) -> f64 {
        self.0[0]
    }

    /// Euclidean norm squared, used for scale-relative tolerances.
    pub fn norm_sq(&self) -> f64 {
        self.0.iter().map(|c| c * c).sum()
    }

    pub fn scale(&self, t: f64) -> RealVector {
        RealVector(self.0.iter().map(|c| c * t).collect())
    }

    pub fn add(&self, other: &RealVector) -> Result<RealVector> {
        check_dim(self.dim(), other.dim())?;
        Ok(RealVector(
            self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect(),
        ))
    }
}

/// A complex space-time vector; component 0 is the time component.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexVector(Vec<Complex64>);

impl ComplexVector {
    pub fn new(components: Vec<Complex64>) -> Self {
        ComplexVector(components)
    }

    /// Convenience constructor from `(re, im)` pairs.
    pub fn from_pairs(pairs: &[(f64, f64)]) -> Self {
        ComplexVector(pairs.iter().map(|&(re, im)| Complex64::new(re, im)).collect())
    }

    /// Embeds a real vector with zero imaginary part.
    pub fn from_real(v: &RealVector) -> Self {
        ComplexVector(v.components().iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn components(&self) -> &[Complex64] {
        &self.0
    }

    pub fn re(&self) -> RealVector {
        RealVector(self.0.iter().map(|c| c.re).collect())
    }

    pub fn im(&self) -> RealVector {
        RealVector(self.0.iter().map(|c| c.im).collect())
    }

    /// Largest absolute imaginary part over all components.
    pub fn max_im(&self) -> f64 {
        self.0.iter().map(|c| c.im.abs()).fold(0.0, f64::max)
    }

    pub fn sub(&self, other: &ComplexVector) -> Result<ComplexVector> {
        check_dim(self.dim(), other.dim())?;
        Ok(ComplexVector(
            self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect(),
        ))
    }

    pub fn add(&self, other: &ComplexVector) -> Result<ComplexVector> {
        check_dim(self.dim(), other.dim())?;
        Ok(ComplexVector(
            self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect(),
        ))
    }
}

/// Field statistics flag attached to each point of a configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Statistics {
    Bose,
    Fermi,
}

/// An ordered list of `m` complex space-time points with field statistics.
#[derive(Debug, Clone, PartialEq)]
pub struct Configuration {
    s: usize,
    points: Vec<ComplexVector>,
    fields: Vec<Statistics>,
}

impl Configuration {
    pub fn new(s: usize, points: Vec<ComplexVector>, fields: Vec<Statistics>) -> Result<Self> {
        if s < 2 {
            return Err(Error::InvalidDimension(s));
        }
        if points.is_empty() {
            return Err(Error::TooFewPoints { required: 1, got: 0 });
        }
        for p in &points {
            check_dim(s, p.dim())?;
        }
        if fields.len() != points.len() {
            return Err(Error::FieldCountMismatch {
                fields: fields.len(),
                points: points.len(),
            });
        }
        Ok(Configuration { s, points, fields })
    }

    /// All-Bose configuration, the common case in tests and fixtures.
    pub fn bosonic(s: usize, points: Vec<ComplexVector>) -> Result<Self> {
        let m = points.len();
        Configuration::new(s, points, vec![Statistics::Bose; m])
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn m(&self) -> usize {
        self.points.len()
    }

    /// Function index `n = s * m`, the total number of complex variables.
    pub fn function_index(&self) -> usize {
        self.s * self.points.len()
    }

    pub fn points(&self) -> &[ComplexVector] {
        &self.points
    }

    pub fn fields(&self) -> &[Statistics] {
        &self.fields
    }

    pub fn metric(&self) -> Metric {
        Metric { s: self.s }
    }

    pub fn is_real(&self, eps: f64) -> bool {
        self.points.iter().all(|p| p.max_im() <= eps)
    }

    /// Rebuilds the configuration from reordered parts; used by `permutation`.
    pub(crate) fn with_parts(&self, points: Vec<ComplexVector>, fields: Vec<Statistics>) -> Self {
        Configuration { s: self.s, points, fields }
    }
}

/// Outcome of a membership decision.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerdictState {
    Inside,
    Outside,
    Boundary,
    Unknown,
}

/// A membership verdict with a signed margin and an optional witness.
///
/// `Inside`/`Outside` carry `|margin| > eps`, `Boundary` means
/// `|margin| <= eps`, and `Unknown` is reserved for semi-decision searches.
/// One documented exception: exact arc-touching in the `s = 2` extended-tube
/// test (which occurs on real strata) is a definite open-set `Outside` with
/// margin `0`, as is a definite convex-combination violation through a null
/// vector in `jost_sampling`.
#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub state: VerdictState,
    pub margin: f64,
    pub certificate: Option<Certificate>,
}

impl Verdict {
    pub fn new(state: VerdictState, margin: f64) -> Self {
        Verdict { state, margin, certificate: None }
    }

    /// Classifies a signed margin against the epsilon band.
    pub fn from_margin(margin: f64, eps: f64) -> Self {
        let state = if margin > eps {
            VerdictState::Inside
        } else if margin < -eps {
            VerdictState::Outside
        } else {
            VerdictState::Boundary
        };
        Verdict { state, margin, certificate: None }
    }

    pub fn with_certificate(mut self, certificate: Certificate) -> Self {
        self.certificate = Some(certificate);
        self
    }

    pub fn is_inside(&self) -> bool {
        self.state == VerdictState::Inside
    }
}

fn check_dim(expected: usize, got: usize) -> Result<()> {
    if expected != got {
        return Err(Error::DimensionMismatch { expected, got });
    }
    Ok(())
}

fn check_eps(eps: f64) -> Result<()> {
    if eps.is_nan() || eps <= 0.0 {
        return Err(Error::InvalidEpsilon(eps));
    }
    Ok(())
}

/// Lorentz-invariant scalar product `x^0 y^0 - sum_k x^k y^k`.
///
/// Bilinear and symmetric; no complex conjugation is involved.
pub fn minkowski_product(x: &ComplexVector, y: &ComplexVector, g: &Metric) -> Result<Complex64> {
    check_dim(g.dim(), x.dim())?;
    check_dim(g.dim(), y.dim())?;
    let mut acc = Complex64::new(0.0, 0.0);
    for (k, (a, b)) in x.components().iter().zip(y.components()).enumerate() {
        acc += g.sign(k) * a * b;
    }
    Ok(acc)
}

/// Invariant square `x . x`.
pub fn square(x: &ComplexVector, g: &Metric) -> Result<Complex64> {
    minkowski_product(x, x, g)
}

/// Invariant square of a real vector.
pub fn real_square(x: &RealVector, g: &Metric) -> Result<f64> {
    check_dim(g.dim(), x.dim())?;
    let mut acc = 0.0;
    for (k, a) in x.components().iter().enumerate() {
        acc += g.sign(k) * a * a;
    }
    Ok(acc)
}

/// Membership of a real vector in the open forward light cone `V+`.
///
/// Margin is `min(x^0, x.x)`, signed; Inside requires both the time
/// component and the invariant square to clear the epsilon band.
pub fn in_open_forward_cone(x: &RealVector, g: &Metric, eps: f64) -> Result<Verdict> {
    check_eps(eps)?;
    let sq = real_square(x, g)?;
    let margin = x.time().min(sq);
    Ok(Verdict::from_margin(margin, eps))
}

/// Spacelike test: Inside iff `x.x < -eps`. Margin is `-x.x`.
pub fn is_spacelike(x: &RealVector, g: &Metric, eps: f64) -> Result<Verdict> {
    check_eps(eps)?;
    let sq = real_square(x, g)?;
    Ok(Verdict::from_margin(-sq, eps))
}

/// Difference coordinates `xi_i = z_i - z_{i+1}` for `i = 1..m-1`.
pub fn differences(c: &Configuration) -> Result<Vec<ComplexVector>> {
    if c.m() < 2 {
        return Err(Error::TooFewPoints { required: 2, got: c.m() });
    }
    c.points()
        .windows(2)
        .map(|w| w[0].sub(&w[1]))
        .collect()
}

/// Light-cone coordinates `(u, v) = (x^0 + x^1, x^0 - x^1)` for `s = 2`.
///
/// The product `u * v` equals the invariant square; the map is invertible
/// via [`from_lightcone_coords`].
pub fn lightcone_coords(x: &ComplexVector) -> Result<(Complex64, Complex64)> {
    if x.dim() != 2 {
        return Err(Error::RequiresS2(x.dim()));
    }
    let c = x.components();
    Ok((c[0] + c[1], c[0] - c[1]))
}

/// Inverse of [`lightcone_coords`].
pub fn from_lightcone_coords(u: Complex64, v: Complex64) -> ComplexVector {
    ComplexVector::new(vec![(u + v) / 2.0, (u - v) / 2.0])
}

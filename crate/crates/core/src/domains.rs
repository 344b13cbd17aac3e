//! Membership decision procedures for tube domains, extended tubes and Jost
//! points, the two-point cut test, and suborder projections.
//!
//! ## The `s = 2` arc reduction
//!
//! A proper complex Lorentz element in two dimensions acts on light-cone
//! coordinates as `u -> lambda u`, `v -> v / lambda`. The tube conditions on
//! a transformed difference read `Im(lambda u_i) < 0` and
//! `Im(v_i / lambda) < 0`, and both signs are invariant under scaling
//! `|lambda|`, so only `theta = arg(lambda)` matters. Each condition
//! constrains `theta` to an open half-circle; the configuration is in the
//! extended tube iff the `2(m-1)` half-circles have a common point. The
//! depth function `f(theta) = min_k (pi/2 - dist(theta, center_k))` is
//! piecewise linear with slopes +-1, its maximum sits either at an arc
//! center or at a circular midpoint of two centers, and the open
//! intersection is nonempty iff that maximum is strictly positive. Exact
//! touching (`max = 0`, the generic situation on real strata) means the
//! open arcs share no point: a definite Outside with margin `0`.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::{FRAC_PI_2, PI, TAU};

use crate::error::Error;
use crate::geometry::{
    self, ComplexVector, Configuration, Metric, RealVector, Verdict, VerdictState,
};
use crate::lorentz::{self, Certificate, LorentzTransform};
use crate::{Result, DEFAULT_EPSILON};

fn wrap_angle(mut a: f64) -> f64 {
    while a < -PI {
        a += TAU;
    }
    while a >= PI {
        a -= TAU;
    }
    a
}

fn circ_dist(a: f64, b: f64) -> f64 {
    wrap_angle(a - b).abs()
}

/// Centers of the open half-circle constraints on `arg(lambda)`, two per
/// difference vector, or `None` when some light-cone coordinate vanishes
/// exactly (the open-cone condition is then unsatisfiable for every lambda).
///
/// The centers are computed through `atan2` on rotated components rather
/// than as `arg +- pi/2` so that real configurations land on exactly
/// representable multiples of `pi/2`.
fn arc_centers(c: &Configuration) -> Result<Option<Vec<f64>>> {
    let mut centers = Vec::with_capacity(2 * (c.m() - 1));
    for xi in geometry::differences(c)? {
        let (u, v) = geometry::lightcone_coords(&xi)?;
        if (u.re == 0.0 && u.im == 0.0) || (v.re == 0.0 && v.im == 0.0) {
            return Ok(None);
        }
        // center of { theta : Im(e^{i theta} u) < 0 } = -arg(u) - pi/2
        centers.push(wrap_angle(f64::atan2(-u.re, -u.im)));
        // center of { theta : Im(e^{-i theta} v) < 0 } = arg(v) + pi/2
        centers.push(wrap_angle(f64::atan2(v.re, -v.im)));
    }
    Ok(Some(centers))
}

fn depth(theta: f64, centers: &[f64]) -> f64 {
    centers
        .iter()
        .map(|&c| FRAC_PI_2 - circ_dist(theta, c))
        .fold(f64::INFINITY, f64::min)
}

/// Maximizes the depth function over the circle. The maximum of a minimum of
/// unit-slope tent functions is attained at a tent peak or at a circular
/// midpoint of two peaks, so scanning those candidates is exact.
fn best_angle(centers: &[f64]) -> (f64, f64) {
    let mut best_theta = centers[0];
    let mut best = depth(best_theta, centers);
    let mut consider = |theta: f64| {
        let d = depth(theta, centers);
        if d > best {
            best = d;
            best_theta = theta;
        }
    };
    for &c in &centers[1..] {
        consider(c);
    }
    for (i, &a) in centers.iter().enumerate() {
        for &b in &centers[i + 1..] {
            let mid = wrap_angle(a + wrap_angle(b - a) / 2.0);
            consider(mid);
            consider(wrap_angle(mid + PI));
        }
    }
    (best_theta, best)
}

fn check_eps(eps: f64) -> Result<()> {
    if eps.is_nan() || eps <= 0.0 {
        return Err(Error::InvalidEpsilon(eps));
    }
    Ok(())
}

/// Tube membership: every `-Im xi_i` must lie in the open forward cone.
/// Real parts are never consulted. Margin is the worst cone margin.
pub fn in_tube(c: &Configuration, eps: f64) -> Result<Verdict> {
    check_eps(eps)?;
    let g = c.metric();
    let mut margin = f64::INFINITY;
    for xi in geometry::differences(c)? {
        let y = xi.im().scale(-1.0);
        let v = geometry::in_open_forward_cone(&y, &g, eps)?;
        margin = margin.min(v.margin);
    }
    Ok(Verdict::from_margin(margin, eps))
}

/// Exact extended-tube membership in `s = 2` by arc intersection, with a
/// scaling certificate `lambda = e^{i theta*}` at the intersection's
/// deepest point.
///
/// The margin is angular. `Outside` with margin `0` marks exact touching of
/// open arcs (see the module docs); otherwise Inside/Outside clear the
/// epsilon band and `Boundary` flags the uncertain strip.
pub fn in_extended_tube_s2(c: &Configuration, eps: f64) -> Result<Verdict> {
    check_eps(eps)?;
    if c.s() != 2 {
        return Err(Error::RequiresS2(c.s()));
    }
    let centers = match arc_centers(c)? {
        Some(centers) => centers,
        None => return Ok(Verdict::new(VerdictState::Outside, -FRAC_PI_2)),
    };
    let (theta, f) = best_angle(&centers);
    if f > eps {
        let lambda = Complex64::from_polar(1.0, theta);
        Ok(Verdict::new(VerdictState::Inside, f).with_certificate(Certificate::scaling(lambda)))
    } else if f == 0.0 || f < -eps {
        Ok(Verdict::new(VerdictState::Outside, f))
    } else {
        Ok(Verdict::new(VerdictState::Boundary, f))
    }
}

const SEARCH_GRID_ANGLES: usize = 48;

fn search_candidate(k: usize, g: &Metric, seed: u64) -> Result<LorentzTransform> {
    let s = g.dim();
    if k == 0 {
        return Ok(LorentzTransform::identity(g));
    }
    let idx = k - 1;
    let planes = s - 1;
    let grid_total = SEARCH_GRID_ANGLES * planes;
    if idx < grid_total {
        // imaginary-rapidity boosts rotate time into imaginary space; in
        // s = 2 this sweeps exactly the scaling phases e^{i theta}
        let axis = 1 + idx % planes;
        let t = idx / planes;
        let theta = -PI + (t as f64 + 0.5) * TAU / SEARCH_GRID_ANGLES as f64;
        return complex_rotation_angle(g, axis, Complex64::new(0.0, theta));
    }
    // one substream per candidate index: deterministic in (seed, k)
    // regardless of evaluation order
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(k as u64);
    let random_space_rotation = |rng: &mut ChaCha8Rng| -> Result<LorentzTransform> {
        let i = rng.gen_range(1..s - 1);
        let j = rng.gen_range(i + 1..s);
        let phi = Complex64::new(rng.gen_range(0.0..TAU), 0.0);
        lorentz::complex_rotation(g, (i, j), phi)
    };
    let axis = rng.gen_range(1..s);
    let angle = Complex64::new(rng.gen_range(-1.5..1.5), rng.gen_range(-PI..PI));
    let boost = complex_rotation_angle(g, axis, angle)?;
    if s >= 3 {
        let pre = random_space_rotation(&mut rng)?;
        let post = random_space_rotation(&mut rng)?;
        pre.compose(&boost)?.compose(&post)
    } else {
        Ok(boost)
    }
}

fn complex_rotation_angle(g: &Metric, axis: usize, angle: Complex64) -> Result<LorentzTransform> {
    lorentz::complex_rotation(g, (0, axis), angle)
}

/// Semi-decision extended-tube search for any `s >= 2`: tries the identity,
/// a per-plane grid of imaginary-rapidity boosts, then seeded random
/// products (one substream per candidate index), at most `budget`
/// candidates. Sound for Inside; returns Unknown instead of claiming
/// Outside.
pub fn in_extended_tube_search(c: &Configuration, budget: usize, seed: u64) -> Result<Verdict> {
    if budget == 0 {
        return Err(Error::NonPositiveCount { name: "budget" });
    }
    let g = c.metric();
    for k in 0..budget {
        let t = search_candidate(k, &g, seed)?;
        let moved = lorentz::apply(&t, c)?;
        let v = in_tube(&moved, DEFAULT_EPSILON)?;
        if v.state == VerdictState::Inside {
            return Ok(Verdict::new(VerdictState::Inside, v.margin)
                .with_certificate(Certificate::matrix(t)));
        }
    }
    Ok(Verdict::new(VerdictState::Unknown, 0.0))
}

/// Jost-point test for real `s = 2` configurations: all difference vectors
/// must lie in one common open spacelike wedge (`u > 0, v < 0` or the
/// mirror). Equivalent to the arc test on the real configuration.
pub fn is_jost_s2(c: &Configuration, eps: f64) -> Result<Verdict> {
    check_eps(eps)?;
    if c.s() != 2 {
        return Err(Error::RequiresS2(c.s()));
    }
    let max_im = c.points().iter().map(|p| p.max_im()).fold(0.0, f64::max);
    if max_im > eps {
        return Err(Error::NotReal(max_im));
    }
    let mut right = f64::INFINITY;
    let mut left = f64::INFINITY;
    for xi in geometry::differences(c)? {
        let re = xi.re();
        let u = re.components()[0] + re.components()[1];
        let v = re.components()[0] - re.components()[1];
        right = right.min(u.min(-v));
        left = left.min((-u).min(v));
    }
    let margin = right.max(left);
    let mut verdict = Verdict::from_margin(margin, eps);
    if verdict.state == VerdictState::Inside {
        // right wedge admits theta = -pi/2, the left wedge its mirror
        let lambda = if right > left {
            Complex64::new(0.0, -1.0)
        } else {
            Complex64::new(0.0, 1.0)
        };
        verdict = verdict.with_certificate(Certificate::scaling(lambda));
    }
    Ok(verdict)
}

/// A convex combination of difference vectors that failed the spacelike
/// test, reported as the witness of a sampling Outside.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvexWitness {
    /// Nonnegative weights over the difference vectors, summing to one.
    pub weights: Vec<f64>,
    pub combination: RealVector,
    pub square: f64,
}

/// Verdict of [`jost_sampling`] together with its witness, when one exists.
#[derive(Debug, Clone, PartialEq)]
pub struct SamplingVerdict {
    pub verdict: Verdict,
    pub witness: Option<ConvexWitness>,
}

/// Statistical Jost test for real configurations in any dimension, via the
/// convex-combination criterion: a real point is Jost iff every convex
/// combination of its differences is spacelike.
///
/// Deterministic probes run first — each vertex, each pairwise midpoint and
/// each pairwise cone-crossing root (the solutions of
/// `square((1-w) xi_i + w xi_j) = 0`) — then `samples` seeded random weight
/// vectors. A combination counts as a violation when it collapses to the
/// cone apex (norm below `eps^2` relative to the largest difference) or
/// when its square fails to clear `-eps` relative to its own Euclidean
/// scale, so the test is meaningful across coordinate magnitudes. Without a
/// violation the result is ProbablyInside, reported as Unknown with a
/// positive margin.
pub fn jost_sampling(c: &Configuration, samples: usize, seed: u64, eps: f64) -> Result<SamplingVerdict> {
    check_eps(eps)?;
    if samples == 0 {
        return Err(Error::NonPositiveCount { name: "samples" });
    }
    let max_im = c.points().iter().map(|p| p.max_im()).fold(0.0, f64::max);
    if max_im > eps {
        return Err(Error::NotReal(max_im));
    }
    let g = c.metric();
    let xis: Vec<RealVector> = geometry::differences(c)?.iter().map(|x| x.re()).collect();
    let d = xis.len();
    let config_scale = xis.iter().map(RealVector::norm_sq).fold(0.0, f64::max);

    let combine = |weights: &[f64]| -> RealVector {
        let mut acc = vec![0.0; g.dim()];
        for (w, xi) in weights.iter().zip(&xis) {
            for (a, b) in acc.iter_mut().zip(xi.components()) {
                *a += w * b;
            }
        }
        RealVector::new(acc)
    };

    let mut min_rel_depth = f64::INFINITY;
    let mut test = |weights: Vec<f64>| -> Result<Option<ConvexWitness>> {
        let combo = combine(&weights);
        let sq = geometry::real_square(&combo, &g)?;
        let scale = combo.norm_sq();
        let at_apex = scale <= eps * eps * config_scale;
        if !at_apex && sq < -eps * scale {
            min_rel_depth = min_rel_depth.min(-sq / scale);
            Ok(None)
        } else {
            Ok(Some(ConvexWitness { weights, combination: combo, square: sq }))
        }
    };

    let mut probes: Vec<Vec<f64>> = Vec::new();
    for i in 0..d {
        let mut w = vec![0.0; d];
        w[i] = 1.0;
        probes.push(w);
    }
    for i in 0..d {
        for j in i + 1..d {
            let mut mid = vec![0.0; d];
            mid[i] = 0.5;
            mid[j] = 0.5;
            probes.push(mid);
            // cone crossings along the segment: square is quadratic in w
            let a = geometry::real_square(&xis[i], &g)?;
            let b = {
                let mut acc = 0.0;
                for (k, (p, q)) in xis[i].components().iter().zip(xis[j].components()).enumerate() {
                    acc += g.sign(k) * p * q;
                }
                acc
            };
            let cq = geometry::real_square(&xis[j], &g)?;
            for w in quadratic_roots_in_unit_interval(a - 2.0 * b + cq, 2.0 * (b - a), a) {
                let mut wv = vec![0.0; d];
                wv[i] = 1.0 - w;
                wv[j] = w;
                probes.push(wv);
            }
        }
    }
    for weights in probes {
        if let Some(witness) = test(weights)? {
            let margin = -witness.square.max(0.0);
            return Ok(SamplingVerdict {
                verdict: Verdict::new(VerdictState::Outside, margin),
                witness: Some(witness),
            });
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let raw: Vec<f64> = (0..d).map(|_| -f64::ln(1.0 - rng.gen::<f64>())).collect();
        let total: f64 = raw.iter().sum();
        let weights: Vec<f64> = raw.iter().map(|w| w / total).collect();
        if let Some(witness) = test(weights)? {
            let margin = -witness.square.max(0.0);
            return Ok(SamplingVerdict {
                verdict: Verdict::new(VerdictState::Outside, margin),
                witness: Some(witness),
            });
        }
    }
    let margin = if min_rel_depth.is_finite() { min_rel_depth } else { eps };
    Ok(SamplingVerdict { verdict: Verdict::new(VerdictState::Unknown, margin), witness: None })
}

/// Real roots of `a w^2 + b w + c` inside `(0, 1)`.
fn quadratic_roots_in_unit_interval(a: f64, b: f64, c: f64) -> Vec<f64> {
    let mut roots = Vec::new();
    if a.abs() < 1e-300 {
        if b.abs() > 1e-300 {
            roots.push(-c / b);
        }
    } else {
        let disc = b * b - 4.0 * a * c;
        if disc >= 0.0 {
            let sq = disc.sqrt();
            roots.push((-b + sq) / (2.0 * a));
            roots.push((-b - sq) / (2.0 * a));
        }
    }
    roots.retain(|w| w.is_finite() && *w > 0.0 && *w < 1.0);
    roots
}

/// Two-point test: a single difference lies in its extended tube iff its
/// invariant square avoids the cut `[0, +inf)`.
///
/// Margin is the distance to the cut when off it; exactly on the cut the
/// verdict is Outside with margin `-Re(square)`, and the epsilon band
/// around the cut (including the tip) reports Boundary.
pub fn two_point_cut_test(xi: &ComplexVector, g: &Metric, eps: f64) -> Result<Verdict> {
    check_eps(eps)?;
    let sq = geometry::square(xi, g)?;
    let dist = if sq.re >= 0.0 { sq.im.abs() } else { sq.norm() };
    if dist > eps {
        Ok(Verdict::new(VerdictState::Inside, dist))
    } else if sq.im == 0.0 && sq.re > eps {
        Ok(Verdict::new(VerdictState::Outside, -sq.re))
    } else {
        Ok(Verdict::new(VerdictState::Boundary, dist))
    }
}

/// The consecutive subconfiguration `z_i ... z_{i+k-1}` (1-based `i`),
/// whose differences are a consecutive slice of the input differences.
pub fn project_suborder(c: &Configuration, i: usize, k: usize) -> Result<Configuration> {
    let m = c.m();
    if i < 1 || k < 2 || i + k - 1 > m {
        return Err(Error::SliceOutOfRange { i, k, m });
    }
    let points = c.points()[i - 1..i - 1 + k].to_vec();
    let fields = c.fields()[i - 1..i - 1 + k].to_vec();
    Configuration::new(c.s(), points, fields)
}

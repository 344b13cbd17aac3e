//! Seeded configuration samplers for the verification suites.
//!
//! Generic samples draw integer components in `[-10, 10]`: on the integer
//! lattice the attainable angular margins of the arc test are quantized
//! well above the resolution of a 10^4-point angle grid (arc centers are
//! arguments of Gaussian integers of norm at most 800), so grid-oracle
//! comparisons never sit inside the needle-miss zone. Constructed samples
//! (tube interiors, Jost configurations) carry fat margins by design.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::geometry::{ComplexVector, Configuration};
use num_complex::Complex64;

/// Random configuration with integer components in `[-10, 10]`.
pub fn lattice_config(rng: &mut ChaCha8Rng, s: usize, m: usize) -> Configuration {
    let points = (0..m)
        .map(|_| {
            ComplexVector::new(
                (0..s)
                    .map(|_| {
                        Complex64::new(
                            rng.gen_range(-10i32..=10) as f64,
                            rng.gen_range(-10i32..=10) as f64,
                        )
                    })
                    .collect(),
            )
        })
        .collect();
    Configuration::bosonic(s, points).unwrap()
}

/// Random real configuration with integer components in `[-10, 10]`.
pub fn lattice_real_config(rng: &mut ChaCha8Rng, s: usize, m: usize) -> Configuration {
    let points = (0..m)
        .map(|_| {
            ComplexVector::new(
                (0..s)
                    .map(|_| Complex64::new(rng.gen_range(-10i32..=10) as f64, 0.0))
                    .collect(),
            )
        })
        .collect();
    Configuration::bosonic(s, points).unwrap()
}

/// Constructed tube-interior configuration: every `-Im xi_i` lies in the
/// forward cone with invariant square at least 1/2 and time component at
/// least 1, so both the cone margin and the angular margin are fat.
pub fn tube_interior_config(rng: &mut ChaCha8Rng, s: usize, m: usize) -> Configuration {
    let cone_vectors: Vec<Vec<f64>> = (0..m - 1)
        .map(|_| {
            let t = rng.gen_range(1.0..2.0);
            let radius = ((t * t - 0.5) / (s as f64 - 1.0)).sqrt();
            let mut y = vec![t];
            for _ in 1..s {
                y.push(rng.gen_range(-radius..radius));
            }
            y
        })
        .collect();
    // walk imaginary parts backwards so that -Im(z_i - z_{i+1}) = y_i
    let mut ims = vec![vec![0.0; s]];
    for y in cone_vectors.iter().rev() {
        let prev = ims.last().unwrap().clone();
        ims.push(prev.iter().zip(y).map(|(p, c)| p - c).collect());
    }
    ims.reverse();
    let points = ims
        .into_iter()
        .map(|im| {
            ComplexVector::new(
                im.into_iter()
                    .map(|i| Complex64::new(rng.gen_range(-5.0..5.0), i))
                    .collect(),
            )
        })
        .collect();
    Configuration::bosonic(s, points).unwrap()
}

/// Real `s = 2` Jost configuration: collinear-ish points whose consecutive
/// differences all sit in one open spacelike wedge with unit margins.
pub fn jost_real_config(rng: &mut ChaCha8Rng, m: usize) -> Configuration {
    let direction: i32 = if rng.gen_bool(0.5) { 1 } else { -1 };
    let mut t = rng.gen_range(-2i32..=2);
    // the walk drifts by at most 3 * (m - 1) <= 12, so start inside [4, 9]
    // on the drift side to keep every coordinate within [-10, 10]
    let mut x = rng.gen_range(4i32..=9) * direction;
    let mut points = Vec::with_capacity(m);
    for _ in 0..m {
        points.push(ComplexVector::from_pairs(&[(t as f64, 0.0), (x as f64, 0.0)]));
        let dx = rng.gen_range(2i32..=3) * direction;
        let dt = rng.gen_range(-1i32..=1);
        // |dt| < |dx| keeps the step spacelike in the same wedge
        x -= dx;
        t -= dt;
    }
    Configuration::bosonic(2, points).unwrap()
}

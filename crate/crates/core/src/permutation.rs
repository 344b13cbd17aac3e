//! Microcausality-driven extension: permuted extended tubes, union
//! membership by guess-and-verify, and Bose/Fermi sign bookkeeping.
//!
//! Permutations act on points (hence on which operator ordering is
//! analytic), not on difference vectors directly; reordered differences are
//! signed sums of the originals. The union over permutations is decided
//! exhaustively up to `max_enumerate` points and by randomized
//! guess-and-verify beyond that, in which case `Outside` is never claimed.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::domains::in_extended_tube_s2;
use crate::error::Error;
use crate::geometry::{Configuration, Statistics, Verdict, VerdictState};
use crate::lorentz::{Certificate, TransformWitness};
use crate::Result;

/// Number of random guesses the union check falls back to once exhaustive
/// enumeration is truncated.
pub const UNION_FALLBACK_GUESSES: usize = 4096;

/// A permutation of `{1..m}`, stored as its 1-based mapping.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(mapping: Vec<usize>) -> Result<Self> {
        let m = mapping.len();
        if !verify_permutation(&mapping, m) {
            return Err(Error::InvalidPermutation(mapping, m));
        }
        Ok(Permutation(mapping))
    }

    pub fn identity(m: usize) -> Self {
        Permutation((1..=m).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The 1-based mapping `i -> pi(i)`.
    pub fn mapping(&self) -> &[usize] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    /// Composition `(self . other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch { expected: self.len(), got: other.len() });
        }
        Ok(Permutation(other.0.iter().map(|&i| self.0[i - 1]).collect()))
    }
}

/// O(m) bijectivity check; false on malformed input (wrong length, repeats,
/// out-of-range values).
pub fn verify_permutation(candidate: &[usize], m: usize) -> bool {
    if candidate.len() != m {
        return false;
    }
    let mut seen = vec![false; m];
    for &v in candidate {
        if v == 0 || v > m || seen[v - 1] {
            return false;
        }
        seen[v - 1] = true;
    }
    true
}

/// Reorders points and field flags as `z_{pi(1)} ... z_{pi(m)}`.
pub fn permute_config(c: &Configuration, pi: &Permutation) -> Result<Configuration> {
    if pi.len() != c.m() {
        return Err(Error::DimensionMismatch { expected: c.m(), got: pi.len() });
    }
    let points = pi.mapping().iter().map(|&i| c.points()[i - 1].clone()).collect();
    let fields = pi.mapping().iter().map(|&i| c.fields()[i - 1]).collect();
    Ok(c.with_parts(points, fields))
}

/// Sign relating the permuted boundary value to the original: `(-1)^k` where
/// `k` counts inversions of `pi` restricted to Fermi-flagged positions.
///
/// Metadata only; domain membership is statistics-independent.
pub fn statistics_sign(fields: &[Statistics], pi: &Permutation) -> Result<i32> {
    let m = fields.len();
    if pi.len() != m {
        return Err(Error::DimensionMismatch { expected: m, got: pi.len() });
    }
    let map = pi.mapping();
    let mut inversions = 0usize;
    for a in 0..m {
        for b in a + 1..m {
            if map[a] > map[b]
                && fields[map[a] - 1] == Statistics::Fermi
                && fields[map[b] - 1] == Statistics::Fermi
            {
                inversions += 1;
            }
        }
    }
    Ok(if inversions.is_multiple_of(2) { 1 } else { -1 })
}

/// Advances `perm` to its lexicographic successor; false once exhausted.
pub(crate) fn next_permutation(perm: &mut [usize]) -> bool {
    let n = perm.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && perm[i - 1] >= perm[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while perm[j] <= perm[i - 1] {
        j -= 1;
    }
    perm.swap(i - 1, j);
    perm[i..].reverse();
    true
}

fn certify(pi: Permutation, inner: &Verdict) -> Certificate {
    let lambda = match &inner.certificate {
        Some(Certificate { transform: TransformWitness::Scaling(l), .. }) => *l,
        _ => Complex64::new(1.0, 0.0),
    };
    Certificate::scaling(lambda).with_permutation(pi)
}

/// Membership in the union of permuted extended tubes (`s = 2`).
///
/// Exhaustive in lexicographic order over all `m!` permutations while
/// `m <= max_enumerate`; first Inside wins. `Outside` is returned only after
/// exhaustive enumeration fails throughout. Beyond the cutoff the identity
/// is tried and the randomized guess path runs, so the result degrades to
/// `Unknown` rather than an unsound `Outside`.
pub fn in_permuted_union_s2(c: &Configuration, eps: f64, max_enumerate: usize) -> Result<Verdict> {
    if c.s() != 2 {
        return Err(Error::RequiresS2(c.s()));
    }
    let m = c.m();
    if m <= max_enumerate {
        let mut current: Vec<usize> = (1..=m).collect();
        let mut best = f64::NEG_INFINITY;
        let mut saw_boundary = false;
        loop {
            let pi = Permutation(current.clone());
            let v = in_extended_tube_s2(&permute_config(c, &pi)?, eps)?;
            match v.state {
                VerdictState::Inside => {
                    let cert = certify(pi, &v);
                    return Ok(Verdict::new(VerdictState::Inside, v.margin).with_certificate(cert));
                }
                VerdictState::Boundary => saw_boundary = true,
                _ => {}
            }
            best = best.max(v.margin);
            if !next_permutation(&mut current) {
                break;
            }
        }
        if saw_boundary {
            Ok(Verdict::new(VerdictState::Boundary, best))
        } else {
            Ok(Verdict::new(VerdictState::Outside, best))
        }
    } else {
        let id = Permutation::identity(m);
        let v = in_extended_tube_s2(c, eps)?;
        if v.state == VerdictState::Inside {
            let cert = certify(id, &v);
            return Ok(Verdict::new(VerdictState::Inside, v.margin).with_certificate(cert));
        }
        let guessed = guess_and_verify(c, UNION_FALLBACK_GUESSES, 0, eps)?;
        if guessed.state == VerdictState::Inside {
            return Ok(guessed);
        }
        Ok(Verdict::new(VerdictState::Unknown, 0.0))
    }
}

/// Nondeterministic-style union check: draw `guesses` uniformly random
/// candidate sequences over `{1..m}^m`, throw out non-permutations, and
/// verify each survivor with the polynomial-time arc test. One-sided:
/// returns Inside with a certificate or Unknown, never Outside.
/// Deterministic in `seed`.
pub fn guess_and_verify(c: &Configuration, guesses: usize, seed: u64, eps: f64) -> Result<Verdict> {
    if c.s() != 2 {
        return Err(Error::RequiresS2(c.s()));
    }
    if guesses == 0 {
        return Err(Error::NonPositiveCount { name: "guesses" });
    }
    let m = c.m();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..guesses {
        let candidate: Vec<usize> = (0..m).map(|_| rng.gen_range(1..=m)).collect();
        if !verify_permutation(&candidate, m) {
            continue;
        }
        let pi = Permutation(candidate);
        let v = in_extended_tube_s2(&permute_config(c, &pi)?, eps)?;
        if v.state == VerdictState::Inside {
            let cert = certify(pi, &v);
            return Ok(Verdict::new(VerdictState::Inside, v.margin).with_certificate(cert));
        }
    }
    Ok(Verdict::new(VerdictState::Unknown, 0.0))
}

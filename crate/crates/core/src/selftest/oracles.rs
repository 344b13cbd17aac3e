//! Independent reference implementations used by the verification suites.
//!
//! These deliberately avoid the code paths they check: the grid oracle
//! tests raw inequalities angle by angle instead of intersecting arcs, the
//! truth table enumerates assignments instead of propagating, and the sign
//! oracle simulates adjacent transpositions instead of counting inversions.

use num_complex::Complex64;
use std::f64::consts::{PI, TAU};

use crate::geometry::{self, Configuration, Statistics};
use crate::hornsat::{Head, HornFormula, Model};
use crate::permutation::Permutation;
use crate::Result;

/// Outcome of the brute-force angle sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct GridVerdict {
    /// First angle `theta` with every `Im(e^{i theta} u_k) < 0` and
    /// `Im(e^{-i theta} v_k) < 0`, if any.
    pub admissible_angle: Option<f64>,
    pub angles_checked: usize,
}

/// Checks a uniform grid of `angles` phases for admissibility of
/// `lambda = e^{i theta}`, with strict inequalities.
pub fn theta_grid(c: &Configuration, angles: usize) -> Result<GridVerdict> {
    let mut coords = Vec::new();
    for xi in geometry::differences(c)? {
        coords.push(geometry::lightcone_coords(&xi)?);
    }
    for t in 0..angles {
        let theta = -PI + (t as f64 + 0.5) * TAU / angles as f64;
        let phase = Complex64::from_polar(1.0, theta);
        let ok = coords
            .iter()
            .all(|&(u, v)| (phase * u).im < 0.0 && (v * phase.conj()).im < 0.0);
        if ok {
            return Ok(GridVerdict { admissible_angle: Some(theta), angles_checked: t + 1 });
        }
    }
    Ok(GridVerdict { admissible_angle: None, angles_checked: angles })
}

/// Exhaustive truth table over a formula's atoms (capped at 22 atoms).
#[derive(Debug, Clone)]
pub struct TruthTable {
    pub satisfiable: bool,
    /// Bitwise intersection of all satisfying assignments; for satisfiable
    /// Horn formulas this is exactly the least model.
    pub intersection: u64,
}

fn clause_masks(formula: &HornFormula) -> Vec<(u64, Option<u64>)> {
    formula
        .clauses()
        .iter()
        .map(|clause| {
            let body = clause.body().iter().fold(0u64, |m, &a| m | 1 << a);
            let head = match clause.head() {
                Head::False => None,
                Head::Atom(a) => Some(1u64 << a),
            };
            (body, head)
        })
        .collect()
}

fn mask_satisfies(masks: &[(u64, Option<u64>)], assignment: u64) -> bool {
    masks.iter().all(|&(body, head)| {
        assignment & body != body || head.is_some_and(|h| assignment & h != 0)
    })
}

/// Enumerates all `2^n` assignments.
pub fn truth_table(formula: &HornFormula) -> TruthTable {
    let n = formula.atom_count();
    assert!(n <= 22, "truth-table oracle capped at 22 atoms, got {n}");
    let masks = clause_masks(formula);
    let mut satisfiable = false;
    let mut intersection = u64::MAX;
    for assignment in 0u64..(1 << n) {
        if mask_satisfies(&masks, assignment) {
            satisfiable = true;
            intersection &= assignment;
        }
    }
    TruthTable { satisfiable, intersection }
}

impl TruthTable {
    fn model_mask(model: &Model) -> u64 {
        let mut mask = 0u64;
        for id in model.ids() {
            mask |= 1 << id;
        }
        mask
    }

    /// Does the model satisfy every clause?
    pub fn satisfies(&self, formula: &HornFormula, model: &Model) -> bool {
        let mask = Self::model_mask(model);
        mask_satisfies(&clause_masks(formula), mask)
    }

    /// Is the model a subset of every satisfying assignment?
    pub fn is_least(&self, _formula: &HornFormula, model: &Model) -> bool {
        self.satisfiable && Self::model_mask(model) == self.intersection
    }
}

/// Sign by explicit bubble-sort decomposition into adjacent transpositions,
/// flipping once per fermion-fermion swap.
pub fn transposition_sign(fields: &[Statistics], pi: &Permutation) -> i32 {
    let mut seq: Vec<usize> = pi.mapping().to_vec();
    let mut sign = 1;
    let n = seq.len();
    for _ in 0..n {
        for k in 0..n.saturating_sub(1) {
            if seq[k] > seq[k + 1] {
                if fields[seq[k] - 1] == Statistics::Fermi
                    && fields[seq[k + 1] - 1] == Statistics::Fermi
                {
                    sign = -sign;
                }
                seq.swap(k, k + 1);
            }
        }
    }
    debug_assert!(seq.iter().enumerate().all(|(i, &v)| v == i + 1));
    sign
}
